#include "monosynth/majority.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <limits>
#include <string>

namespace monosynth
{

namespace
{

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

/// base^exp, saturating at uint64 max.
std::uint64_t saturating_pow( std::uint64_t base, int exp )
{
  std::uint64_t result = 1;
  for ( int e = 0; e < exp; ++e )
  {
    if ( base != 0 && result > saturated / base )
    {
      return saturated;
    }
    result *= base;
  }
  return result;
}

std::uint64_t exact_pow( std::uint64_t base, int exp, const char* what )
{
  const auto value = saturating_pow( base, exp );
  if ( value == saturated )
  {
    throw SynthesisError( std::string( what ) + " exceeds 64-bit wire multiplicity" );
  }
  return value;
}

} // namespace

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

Decomposition::Decomposition( std::vector<Interval> intervals ) : intervals_( std::move( intervals ) )
{
  if ( intervals_.empty() )
  {
    throw SynthesisError( "decomposition needs at least one interval" );
  }
  int expected = 1;
  for ( const auto& iv : intervals_ )
  {
    if ( iv.first != expected || iv.last < iv.first )
    {
      throw SynthesisError( "decomposition intervals must tile [1, N] left to right" );
    }
    expected = iv.last + 1;
  }
}

Decomposition Decomposition::uniform( int N, int block_size )
{
  if ( block_size < 1 || N < 1 || N % block_size != 0 )
  {
    throw SynthesisError( "block size " + std::to_string( block_size ) + " does not divide N = " + std::to_string( N ) );
  }
  std::vector<Interval> intervals;
  for ( int first = 1; first <= N; first += block_size )
  {
    intervals.push_back( { first, first + block_size - 1 } );
  }
  return Decomposition( std::move( intervals ) );
}

Decomposition refine( int N, int n, int s, int level )
{
  if ( n < 1 || s < 0 || level < 0 || level > s )
  {
    throw SynthesisError( "refine: need n >= 1 and 0 <= level <= s" );
  }
  const auto columns = saturating_pow( static_cast<std::uint64_t>( n ), s );
  if ( columns < static_cast<std::uint64_t>( N ) )
  {
    throw SynthesisError( "refine: n^s must be at least N" );
  }
  if ( columns > static_cast<std::uint64_t>( std::numeric_limits<int>::max() ) )
  {
    throw SynthesisError( "refine: n^s too large" );
  }
  const auto block = saturating_pow( static_cast<std::uint64_t>( n ), s - level );
  return Decomposition::uniform( static_cast<int>( columns ), static_cast<int>( block ) );
}

bool log2_at_most( std::uint64_t value, std::uint64_t bits )
{
  if ( bits >= 64 )
  {
    return true;
  }
  return ( std::uint64_t{ 1 } << bits ) >= value;
}

SynthParams SynthParams::derive( int k, int N, int d )
{
  if ( k < 1 || N < 1 || d < 1 )
  {
    throw SynthesisError( "synthesis needs k >= 1, N >= 1, d >= 1" );
  }
  SynthParams p;
  p.k = k;
  p.N = N;
  p.d = d;

  p.n = 1;
  while ( saturating_pow( static_cast<std::uint64_t>( p.n ), d ) < static_cast<std::uint64_t>( N ) )
  {
    ++p.n;
  }
  p.s = 0;
  while ( saturating_pow( static_cast<std::uint64_t>( p.n ), p.s ) < static_cast<std::uint64_t>( N ) )
  {
    ++p.s;
  }
  for ( int t = 1; t <= d; ++t )
  {
    const auto width = saturating_pow( static_cast<std::uint64_t>( p.n ), t );
    if ( log2_at_most( static_cast<std::uint64_t>( k ), width ) )
    {
      p.t = t;
      p.M = width;
      break;
    }
  }

  const bool narrow = !log2_at_most( static_cast<std::uint64_t>( k ), static_cast<std::uint64_t>( N ) );
  p.direct = k < 2 || narrow || p.n < 2 || p.t == 0 || p.t >= p.s;
  return p;
}

// ---------------------------------------------------------------------------
// Carry gates
// ---------------------------------------------------------------------------

bool carry_holds( const InputMatrix& x, Interval block, int k, int alpha, int beta )
{
  BigInt lhs = beta;
  for ( int i = 1; i <= k; ++i )
  {
    for ( int j = block.first; j <= block.last; ++j )
    {
      if ( x.at( i, j ) )
      {
        lhs += power_of_two( block.last - j );
      }
    }
  }
  return lhs >= BigInt( alpha ) * power_of_two( block.size() );
}

GateId carry_gate( CircuitBuilder& builder, Interval block, int k, int alpha, int beta )
{
  if ( alpha < 0 || beta < 0 || alpha > k - 1 )
  {
    throw SynthesisError( "carry gate needs 0 <= alpha <= k - 1 and beta >= 0" );
  }
  if ( block.first < 1 || block.last > builder.dims().cols || block.size() < 1 || k > builder.dims().rows )
  {
    throw SynthesisError( "carry gate block outside the input matrix" );
  }
  const auto scale = exact_pow( 2, block.size(), "carry block weight" );
  std::vector<Wire> wires;
  for ( int i = 1; i <= k; ++i )
  {
    for ( int j = block.first; j <= block.last; ++j )
    {
      wires.push_back( { builder.input( { i, j } ), std::uint64_t{ 1 } << ( block.last - j ) } );
    }
  }
  const auto need = static_cast<std::uint64_t>( alpha ) * scale;
  const auto threshold = need > static_cast<std::uint64_t>( beta ) ? need - static_cast<std::uint64_t>( beta ) : 0;
  return builder.threshold( threshold, std::move( wires ) );
}

CarryGrid::CarryGrid( int n, int k ) : n_( n ), k_( k )
{
  if ( n < 1 || k < 2 )
  {
    throw SynthesisError( "carry grid needs n >= 1 and k >= 2" );
  }
  ids_.resize( static_cast<std::size_t>( n ) * static_cast<std::size_t>( k - 1 ) * static_cast<std::size_t>( k ) );
}

std::size_t CarryGrid::slot( int gamma, int alpha, int beta ) const
{
  if ( gamma < 1 || gamma > n_ || alpha < 1 || alpha > k_ - 1 || beta < 0 || beta > k_ - 1 )
  {
    throw SynthesisError( "carry grid index out of range" );
  }
  return ( static_cast<std::size_t>( gamma - 1 ) * ( k_ - 1 ) + ( alpha - 1 ) ) * k_ + beta;
}

void CarryGrid::set( int gamma, int alpha, int beta, GateId id )
{
  ids_[slot( gamma, alpha, beta )] = id;
}

GateId CarryGrid::at( int gamma, int alpha, int beta ) const
{
  const auto& id = ids_[slot( gamma, alpha, beta )];
  if ( !id )
  {
    throw SynthesisError( "missing child carry gate (gamma=" + std::to_string( gamma ) + ", alpha=" + std::to_string( alpha ) +
                          ", beta=" + std::to_string( beta ) + ")" );
  }
  return *id;
}

GateId combine_gate( CircuitBuilder& builder, int u, int v, const CarryGrid& children )
{
  const int k = children.k();
  const int n = children.blocks();
  if ( u < 0 || v < 0 || u > k - 1 || v > k - 1 )
  {
    throw SynthesisError( "combine gate needs 0 <= u, v <= k - 1" );
  }
  std::vector<Wire> wires;
  for ( int gamma = 1; gamma <= n; ++gamma )
  {
    const auto weight = exact_pow( static_cast<std::uint64_t>( k ), n - gamma, "combiner weight" );
    for ( int alpha = 1; alpha <= k - 1; ++alpha )
    {
      for ( int beta = 0; beta <= k - 1; ++beta )
      {
        wires.push_back( { children.at( gamma, alpha, beta ), weight } );
      }
    }
  }
  const auto need = static_cast<std::uint64_t>( u ) * exact_pow( static_cast<std::uint64_t>( k ), n, "combiner threshold" );
  const auto threshold = need > static_cast<std::uint64_t>( v ) ? need - static_cast<std::uint64_t>( v ) : 0;
  return builder.threshold( threshold, std::move( wires ) );
}

// ---------------------------------------------------------------------------
// Full construction
// ---------------------------------------------------------------------------

Circuit direct_threshold_circuit( int k, int N )
{
  CircuitBuilder builder( { k, N }, true );
  std::vector<Wire> wires;
  for ( int i = 1; i <= k; ++i )
  {
    for ( int j = 1; j <= N; ++j )
    {
      wires.push_back( { builder.input( { i, j } ), exact_pow( 2, N - j, "direct gate weight" ) } );
    }
  }
  const auto top = builder.threshold( exact_pow( 2, N, "direct gate threshold" ), std::move( wires ) );
  return std::move( builder ).finish( top );
}

Circuit synth_majority( const SynthParams& p )
{
  if ( p.k < 2 && !p.direct )
  {
    throw SynthesisError( "layered construction needs k >= 2" );
  }
  if ( p.direct )
  {
    return direct_threshold_circuit( p.k, p.N );
  }

  const int k = p.k;
  const int n = p.n;
  const int columns = static_cast<int>( saturating_pow( static_cast<std::uint64_t>( n ), p.s ) );
  const int base_level = p.s - p.t;
  CircuitBuilder builder( { k, columns }, true );

  // layer[b] holds the carry gates of block b: index (alpha - 1) * k + beta.
  const auto base = refine( columns, n, p.s, base_level );
  std::vector<std::vector<GateId>> layer;
  for ( const auto& block : base.intervals() )
  {
    std::vector<GateId> gates;
    for ( int alpha = 1; alpha <= k - 1; ++alpha )
    {
      for ( int beta = 0; beta <= k - 1; ++beta )
      {
        gates.push_back( carry_gate( builder, block, k, alpha, beta ) );
      }
    }
    layer.push_back( std::move( gates ) );
  }

  GateId top = -1;
  for ( int level = base_level - 1; level >= 0; --level )
  {
    const auto parents = static_cast<std::size_t>( saturating_pow( static_cast<std::uint64_t>( n ), level ) );
    std::vector<std::vector<GateId>> next;
    for ( std::size_t b = 0; b < parents; ++b )
    {
      CarryGrid grid( n, k );
      for ( int gamma = 1; gamma <= n; ++gamma )
      {
        const auto& child = layer[b * static_cast<std::size_t>( n ) + static_cast<std::size_t>( gamma - 1 )];
        for ( int alpha = 1; alpha <= k - 1; ++alpha )
        {
          for ( int beta = 0; beta <= k - 1; ++beta )
          {
            grid.set( gamma, alpha, beta, child[static_cast<std::size_t>( ( alpha - 1 ) * k + beta )] );
          }
        }
      }
      if ( level == 0 )
      {
        top = combine_gate( builder, 1, 0, grid );
        break;
      }
      std::vector<GateId> gates;
      for ( int u = 1; u <= k - 1; ++u )
      {
        for ( int v = 0; v <= k - 1; ++v )
        {
          gates.push_back( combine_gate( builder, u, v, grid ) );
        }
      }
      next.push_back( std::move( gates ) );
    }
    layer = std::move( next );
  }

  Circuit circuit = std::move( builder ).finish( top );
  if ( columns == p.N )
  {
    return circuit;
  }
  Restriction padding;
  for ( int i = 1; i <= k; ++i )
  {
    for ( int j = p.N + 1; j <= columns; ++j )
    {
      padding.assign( { i, j }, false );
    }
  }
  return restrict( circuit, padding );
}

BigInt theoretical_size_bound( int k, int N, int d )
{
  if ( k < 1 || N < 1 || d < 1 )
  {
    throw SynthesisError( "size bound needs k, N, d >= 1" );
  }
  // 2^{6 (N^{1/d} log k + log N)} = k^{6 N^{1/d}} * N^6.
  const auto params = SynthParams::derive( k, N, d );
  const BigInt n6 = boost::multiprecision::pow( BigInt( N ), 6 );
  if ( saturating_pow( static_cast<std::uint64_t>( params.n ), d ) == static_cast<std::uint64_t>( N ) )
  {
    return boost::multiprecision::pow( BigInt( k ), 6 * params.n ) * n6;
  }
  // N^{1/d} is irrational here, so k^{6 N^{1/d}} is never an integer and the
  // ceiling is stable at this precision.
  using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
  const Real root = boost::multiprecision::pow( Real( N ), Real( 1 ) / Real( d ) );
  const Real value = boost::multiprecision::pow( Real( k ), 6 * root ) * Real( n6 );
  return static_cast<BigInt>( boost::multiprecision::ceil( value ) );
}

SizeReport size_report( const SynthParams& params, const Circuit& circuit )
{
  SizeReport r;
  r.params = params;
  r.measured_size = size( circuit );
  r.measured_depth = depth( circuit );
  r.bound = theoretical_size_bound( params.k, params.N, params.d );
  return r;
}

} // namespace monosynth
