#include <doctest.h>

#include <cmath>
#include <random>

#include "monosynth/addition.hpp"
#include "monosynth/connectivity.hpp"

using namespace monosynth;

namespace
{

int ceil_log2( int v )
{
  int r = 0;
  while ( ( 1 << r ) < v )
    ++r;
  return r;
}

bool subset( const LayeredGraph& a, const LayeredGraph& b )
{
  for ( int layer = a.top(); layer >= 1; --layer )
    for ( int u = 0; u < a.layer_size( layer ); ++u )
      for ( int w = 0; w < a.layer_size( layer - 1 ); ++w )
        if ( a.edge( layer, u, w ) && !b.edge( layer, u, w ) )
          return false;
  return true;
}

} // namespace

TEST_CASE( "layered graph basics" )
{
  LayeredGraph g( 3, 2 );
  CHECK( g.layer_size( 3 ) == 1 );
  CHECK( g.layer_size( 2 ) == 2 );
  CHECK( g.layer_size( 0 ) == 1 );
  CHECK( g.edge_count() == 0 );
  CHECK_FALSE( reaches( g ) );
  CHECK_THROWS_AS( g.set_edge( 3, 1, 0, true ), SynthesisError );
  CHECK_THROWS_AS( g.set_edge( 0, 0, 0, true ), SynthesisError );
  CHECK_THROWS_AS( LayeredGraph( 1, 2 ), SynthesisError );

  for ( int layer = 3; layer >= 1; --layer )
    for ( int u = 0; u < g.layer_size( layer ); ++u )
      for ( int w = 0; w < g.layer_size( layer - 1 ); ++w )
        g.set_edge( layer, u, w, true );
  CHECK( reaches( g ) );
  CHECK( g.edge_count() == 2 + 4 + 2 );

  LayeredGraph path( 2, 2 );
  path.set_edge( 2, 0, 1, true );
  path.set_edge( 1, 0, 0, true );
  CHECK_FALSE( reaches( path ) );
  path.set_edge( 1, 1, 0, true );
  CHECK( reaches( path ) );
  CHECK( to_edge_list( path ) == "2 0 -> 1 1\n1 0 -> 0 0\n1 1 -> 0 0\n" );
}

TEST_CASE( "build_graph examples" )
{
  const auto d = Decomposition::uniform( 4, 2 );
  SUBCASE( "all zero" )
  {
    const auto g = build_graph( InputMatrix( 2, 4 ), d, 2 );
    for ( int j = 0; j < 2; ++j )
      CHECK_FALSE( g.edge( 2, 0, j ) );
    CHECK_FALSE( reaches( g ) );
    CHECK( g.edge( 1, 0, 0 ) );
  }
  SUBCASE( "all ones" )
  {
    const auto g = build_graph( InputMatrix::from_rows( { "1111", "1111" } ), d, 2 );
    CHECK( reaches( g ) );
  }
  SUBCASE( "preconditions" )
  {
    CHECK_THROWS_AS( build_graph( InputMatrix( 2, 4 ), Decomposition::uniform( 4, 4 ), 2 ), SynthesisError );
    CHECK_THROWS_AS( build_graph( InputMatrix( 5, 4 ), d, 5 ), SynthesisError );
    CHECK_THROWS_AS( build_graph( InputMatrix( 2, 6 ), d, 2 ), SynthesisError );
  }
}

TEST_CASE( "s reaches t exactly when the sum overflows (exhaustive, kN <= 16)" )
{
  const int cases[][2] = { { 2, 1 }, { 2, 2 }, { 3, 2 }, { 4, 2 } };
  for ( const auto& [k, w] : cases )
    for ( int blocks = 2; k * blocks * w <= 16; ++blocks )
    {
      const int N = blocks * w;
      const auto d = Decomposition::uniform( N, w );
      const Dims dims{ k, N };
      CAPTURE( k );
      CAPTURE( N );
      for ( std::uint64_t i = 0; i < ( std::uint64_t{ 1 } << dims.bits() ); ++i )
      {
        const auto x = InputMatrix::from_index( dims, i );
        REQUIRE( reaches( build_graph( x, d, k ) ) == addition_threshold( x ) );
      }
    }
}

TEST_CASE( "s reaches t exactly when the sum overflows (sampled)" )
{
  std::mt19937_64 rng( 17 );
  const int k = 3, N = 12;
  const auto d = Decomposition::uniform( N, 3 );
  for ( int rep = 0; rep < 100000; ++rep )
  {
    InputMatrix x( k, N );
    for ( int i = 1; i <= k; ++i )
      for ( int j = 1; j <= N; ++j )
        x.set( i, j, rng() & 1 );
    REQUIRE( reaches( build_graph( x, d, k ) ) == addition_threshold( x ) );
  }
}

TEST_CASE( "edges are monotone in the input" )
{
  const int k = 2, N = 6;
  const auto d = Decomposition::uniform( N, 2 );
  const Dims dims{ k, N };
  const std::uint64_t total = std::uint64_t{ 1 } << dims.bits();
  std::vector<LayeredGraph> graphs;
  for ( std::uint64_t i = 0; i < total; ++i )
    graphs.push_back( build_graph( InputMatrix::from_index( dims, i ), d, k ) );
  for ( std::uint64_t i = 0; i < total; ++i )
    for ( int b = 0; b < dims.bits(); ++b )
      if ( !( i >> b & 1 ) )
        REQUIRE( subset( graphs[i], graphs[i | std::uint64_t{ 1 } << b] ) );
}

TEST_CASE( "synth_connectivity examples" )
{
  const int cases[][3] = { { 2, 4, 2 }, { 2, 8, 2 }, { 3, 4, 2 }, { 2, 6, 3 }, { 4, 4, 2 } };
  static constexpr GateKind and_or[] = { GateKind::And, GateKind::Or };
  for ( const auto& [k, N, bs] : cases )
  {
    CAPTURE( k );
    CAPTURE( N );
    CAPTURE( bs );
    const auto c = synth_connectivity( k, N, bs );
    CHECK( c.monotone );
    CHECK( validate( c ).empty() );
    for ( const auto& g : c.gates )
      if ( g.kind == GateKind::And )
        CHECK( g.children.size() == 2 );
    const int layers = N / bs;
    CHECK( depth_of_kinds( c, and_or ) <= 2 * ceil_log2( layers ) );
    CHECK( depth( c ) <= 2 * ceil_log2( layers ) + 1 );
    const auto r = exhaustive_check( c, k, N );
    CHECK( r.mismatches == 0 );
  }
}

TEST_CASE( "synth_connectivity preconditions" )
{
  CHECK_THROWS_AS( synth_connectivity( 2, 5, 2 ), SynthesisError );
  CHECK_THROWS_AS( synth_connectivity( 2, 2, 2 ), SynthesisError );
  CHECK_THROWS_AS( synth_connectivity( 5, 4, 2 ), SynthesisError );
}
