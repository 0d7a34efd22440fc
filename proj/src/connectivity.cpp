#include "monosynth/connectivity.hpp"

#include <map>
#include <sstream>
#include <tuple>

namespace monosynth
{

LayeredGraph::LayeredGraph( int top, int k ) : top_( top ), k_( k )
{
  if ( top < 2 || k < 1 )
  {
    throw SynthesisError( "layered graph needs at least three layers and k >= 1" );
  }
  edges_.assign( static_cast<std::size_t>( top ) * k * k, 0 );
}

std::size_t LayeredGraph::slot( int layer, int from, int to ) const
{
  if ( layer < 1 || layer > top_ || from < 0 || from >= layer_size( layer ) || to < 0 || to >= layer_size( layer - 1 ) )
  {
    throw SynthesisError( "edge (" + std::to_string( layer ) + " " + std::to_string( from ) + " -> " + std::to_string( layer - 1 ) +
                          " " + std::to_string( to ) + ") outside the graph" );
  }
  return ( static_cast<std::size_t>( layer - 1 ) * k_ + from ) * k_ + to;
}

bool LayeredGraph::edge( int layer, int from, int to ) const
{
  return edges_[slot( layer, from, to )] != 0;
}

void LayeredGraph::set_edge( int layer, int from, int to, bool present )
{
  edges_[slot( layer, from, to )] = present ? 1 : 0;
}

std::size_t LayeredGraph::edge_count() const
{
  std::size_t count = 0;
  for ( const auto e : edges_ )
  {
    count += e ? 1 : 0;
  }
  return count;
}

namespace
{

void check_blocks( const Decomposition& decomposition, int k )
{
  if ( decomposition.block_count() < 2 )
  {
    throw SynthesisError( "carry graph needs at least two blocks" );
  }
  for ( const auto& block : decomposition.intervals() )
  {
    if ( !log2_at_most( static_cast<std::uint64_t>( k ), static_cast<std::uint64_t>( block.size() ) ) )
    {
      throw SynthesisError( "every block needs at least log2 k columns" );
    }
  }
}

/// Block g counted from the least significant end.
const Interval& block_from_right( const Decomposition& decomposition, int g )
{
  return decomposition.block( decomposition.block_count() + 1 - static_cast<std::size_t>( g ) );
}

/// Carry requirement behind the edge leaving vertex `from` of `layer` towards `to`: (alpha, beta).
std::pair<int, int> edge_carries( int layer, int top, int from, int to )
{
  if ( layer == top )
  {
    return { 1, to };
  }
  if ( layer == 1 )
  {
    return { from, 0 };
  }
  return { from, to };
}

} // namespace

LayeredGraph build_graph( const InputMatrix& x, const Decomposition& decomposition, int k )
{
  check_blocks( decomposition, k );
  if ( x.rows() != k || x.cols() != decomposition.columns() )
  {
    throw SynthesisError( "input shape does not match the decomposition" );
  }
  const int top = static_cast<int>( decomposition.block_count() );
  LayeredGraph graph( top, k );
  for ( int layer = top; layer >= 1; --layer )
  {
    const auto& block = block_from_right( decomposition, layer );
    for ( int from = 0; from < graph.layer_size( layer ); ++from )
    {
      for ( int to = 0; to < graph.layer_size( layer - 1 ); ++to )
      {
        const auto [alpha, beta] = edge_carries( layer, top, from, to );
        graph.set_edge( layer, from, to, carry_holds( x, block, k, alpha, beta ) );
      }
    }
  }
  return graph;
}

bool reaches( const LayeredGraph& graph )
{
  std::vector<char> frontier( 1, 1 );
  for ( int layer = graph.top(); layer >= 1; --layer )
  {
    std::vector<char> next( static_cast<std::size_t>( graph.layer_size( layer - 1 ) ), 0 );
    for ( int from = 0; from < graph.layer_size( layer ); ++from )
    {
      if ( !frontier[static_cast<std::size_t>( from )] )
      {
        continue;
      }
      for ( int to = 0; to < graph.layer_size( layer - 1 ); ++to )
      {
        next[static_cast<std::size_t>( to )] |= graph.edge( layer, from, to ) ? 1 : 0;
      }
    }
    frontier = std::move( next );
  }
  return frontier[0] != 0;
}

std::string to_edge_list( const LayeredGraph& graph )
{
  std::ostringstream os;
  for ( int layer = graph.top(); layer >= 1; --layer )
  {
    for ( int from = 0; from < graph.layer_size( layer ); ++from )
    {
      for ( int to = 0; to < graph.layer_size( layer - 1 ); ++to )
      {
        if ( graph.edge( layer, from, to ) )
        {
          os << layer << ' ' << from << " -> " << layer - 1 << ' ' << to << '\n';
        }
      }
    }
  }
  return os.str();
}

Circuit synth_connectivity( int k, int N, int block_size )
{
  if ( k < 1 || block_size < 1 )
  {
    throw SynthesisError( "connectivity construction needs k >= 1 and block size >= 1" );
  }
  if ( !log2_at_most( static_cast<std::uint64_t>( k ), static_cast<std::uint64_t>( block_size ) ) )
  {
    throw SynthesisError( "block size must be at least log2 k" );
  }
  const auto decomposition = Decomposition::uniform( N, block_size );
  check_blocks( decomposition, k );
  const int top = static_cast<int>( decomposition.block_count() );

  CircuitBuilder builder( { k, N }, true );
  LayeredGraph shape( top, k );

  std::map<std::tuple<int, int, int>, GateId> edges;
  auto edge_gate = [&]( int layer, int from, int to ) {
    const auto key = std::make_tuple( layer, from, to );
    if ( const auto it = edges.find( key ); it != edges.end() )
    {
      return it->second;
    }
    const auto [alpha, beta] = edge_carries( layer, top, from, to );
    const GateId id = alpha == 0 ? builder.constant( true )
                                 : carry_gate( builder, block_from_right( decomposition, layer ), k, alpha, beta );
    edges.emplace( key, id );
    return id;
  };

  // reach[(upper, u, lower, w)]: u in layer `upper` reaches w in layer `lower`.
  std::map<std::tuple<int, int, int, int>, GateId> memo;
  auto reach = [&]( auto& self, int upper, int u, int lower, int w ) -> GateId {
    if ( upper - lower == 1 )
    {
      return edge_gate( upper, u, w );
    }
    const auto key = std::make_tuple( upper, u, lower, w );
    if ( const auto it = memo.find( key ); it != memo.end() )
    {
      return it->second;
    }
    const int middle = ( upper + lower ) / 2;
    std::vector<GateId> paths;
    for ( int v = 0; v < shape.layer_size( middle ); ++v )
    {
      const auto head = self( self, upper, u, middle, v );
      const auto tail = self( self, middle, v, lower, w );
      paths.push_back( builder.conjunction( { head, tail } ) );
    }
    const auto id = builder.disjunction( std::move( paths ) );
    memo.emplace( key, id );
    return id;
  };

  const auto out = reach( reach, top, 0, 0, 0 );
  return std::move( builder ).finish( out );
}

} // namespace monosynth
