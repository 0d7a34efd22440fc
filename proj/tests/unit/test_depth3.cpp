#include <doctest.h>

#include <random>

#include "monosynth/addition.hpp"
#include "monosynth/depth3.hpp"
#include "monosynth/majority.hpp"

using namespace monosynth;

namespace
{

SymbolicNumber constant_number( std::uint64_t value, int width )
{
  SymbolicNumber n;
  for ( int e = 0; e < width; ++e )
    n.push_back( SymbolicBit::constant( ( value >> e ) & 1 ) );
  return n;
}

std::uint64_t row_sum( const InputMatrix& x )
{
  std::uint64_t total = 0;
  for ( int i = 1; i <= x.rows(); ++i )
  {
    std::uint64_t row = 0;
    for ( int j = 1; j <= x.cols(); ++j )
      row = row * 2 + x.at( i, j );
    total += row;
  }
  return total;
}

void check_sum_identity( int k, int N )
{
  const auto r = reduce_to_two( k, N );
  const Dims dims{ k, N };
  for ( std::uint64_t i = 0; i < ( std::uint64_t{ 1 } << dims.bits() ); ++i )
  {
    const auto x = InputMatrix::from_index( dims, i );
    REQUIRE( evaluate_number( r.y, x.bits() ) + evaluate_number( r.z, x.bits() ) == row_sum( x ) );
  }
}

std::size_t max_support( const SymbolicNumber& n )
{
  std::size_t m = 0;
  for ( const auto& b : n )
    m = std::max( m, b.support.size() );
  return m;
}

} // namespace

TEST_CASE( "symbolic bit algebra" )
{
  const auto a = SymbolicBit::variable( 3 );
  const auto b = SymbolicBit::variable( 1 );
  const auto one = SymbolicBit::constant( true );
  CHECK( ( a & one ).support == std::vector<int>{ 3 } );
  std::vector<std::uint8_t> zeros( 4, 0 );
  CHECK( ( a | one ).evaluate( zeros ) );
  CHECK_FALSE( ( a ^ a ).evaluate( zeros ) );
  CHECK( ( SymbolicBit::constant( true ) & one ).is_constant() );
  const auto c = a ^ b;
  CHECK( c.support == std::vector<int>{ 1, 3 } );
  std::vector<std::uint8_t> asg( 4, 0 );
  asg[3] = 1;
  CHECK( c.evaluate( asg ) );
  asg[1] = 1;
  CHECK_FALSE( c.evaluate( asg ) );
}

TEST_CASE( "three_to_two examples" )
{
  SUBCASE( "constant ones" )
  {
    const auto one = constant_number( 1, 1 );
    const auto r = three_to_two( one, one, one );
    REQUIRE( r.first.size() == 2 );
    REQUIRE( r.second.size() == 2 );
    const std::vector<std::uint8_t> none;
    CHECK( evaluate_number( r.first, none ) == 1 );
    CHECK( evaluate_number( r.second, none ) == 2 );
  }
  SUBCASE( "constant zeros" )
  {
    const auto zero = constant_number( 0, 1 );
    const auto r = three_to_two( zero, zero, zero );
    for ( const auto& bit : r.first )
      CHECK( ( bit.is_constant() && !bit.constant_value() ) );
    for ( const auto& bit : r.second )
      CHECK( ( bit.is_constant() && !bit.constant_value() ) );
  }
  SUBCASE( "three variables" )
  {
    const SymbolicNumber x{ SymbolicBit::variable( 0 ) }, y{ SymbolicBit::variable( 1 ) }, z{ SymbolicBit::variable( 2 ) };
    const auto r = three_to_two( x, y, z );
    CHECK( r.first[0].support == std::vector<int>{ 0, 1, 2 } );
    CHECK( r.second[1].support == std::vector<int>{ 0, 1, 2 } );
    CHECK( r.first[0].table == std::vector<std::uint8_t>{ 0, 1, 1, 0, 1, 0, 0, 1 } );
    CHECK( r.second[1].table == std::vector<std::uint8_t>{ 0, 0, 0, 1, 0, 1, 1, 1 } );
    CHECK( ( r.second[0].is_constant() && !r.second[0].constant_value() ) );
  }
  SUBCASE( "width mismatch and locality" )
  {
    CHECK_THROWS( three_to_two( constant_number( 0, 1 ), constant_number( 0, 2 ), constant_number( 0, 1 ) ) );
    const SymbolicNumber x{ SymbolicBit::variable( 0 ) }, y{ SymbolicBit::variable( 1 ) }, z{ SymbolicBit::variable( 2 ) };
    CHECK_THROWS_AS( three_to_two( x, y, z, 2 ), LocalityError );
  }
}

TEST_CASE( "reduce_to_two examples" )
{
  const auto two = reduce_to_two( 2, 3 );
  CHECK( two.rounds == 0 );
  const auto rows = input_rows( 2, 3 );
  CHECK( two.y.size() == 3 );
  for ( int e = 0; e < 3; ++e )
  {
    CHECK( two.y[e].support == rows[0][e].support );
    CHECK( two.z[e].support == rows[1][e].support );
  }

  CHECK( reduce_to_two( 3, 2 ).rounds == 1 );
  check_sum_identity( 3, 2 );

  // Three numbers in, two out: 5 -> 4 -> 3 -> 2 needs three rounds.
  const auto five = reduce_to_two( 5, 2 );
  CHECK( five.rounds == 3 );
  CHECK( max_support( five.y ) <= 9 );
  CHECK( max_support( five.z ) <= 9 );
  check_sum_identity( 5, 2 );

  check_sum_identity( 1, 4 );
}

TEST_CASE( "sum preservation, exhaustive kN <= 14" )
{
  for ( int k = 1; k <= 7; ++k )
    for ( int N = 1; k * N <= 14; ++N )
    {
      CAPTURE( k );
      CAPTURE( N );
      check_sum_identity( k, N );
    }
}

TEST_CASE( "sum preservation, sampled" )
{
  std::mt19937_64 rng( 11 );
  const int k = 6, N = 5;
  const auto r = reduce_to_two( k, N );
  for ( int rep = 0; rep < 10000; ++rep )
  {
    InputMatrix x( k, N );
    for ( int i = 1; i <= k; ++i )
      for ( int j = 1; j <= N; ++j )
        x.set( i, j, rng() & 1 );
    REQUIRE( evaluate_number( r.y, x.bits() ) + evaluate_number( r.z, x.bits() ) == row_sum( x ) );
  }
}

TEST_CASE( "synth_depth3 examples" )
{
  const int cases[][2] = { { 2, 3 }, { 3, 3 }, { 2, 4 }, { 3, 4 }, { 1, 3 }, { 4, 3 } };
  for ( const auto& [k, N] : cases )
  {
    CAPTURE( k );
    CAPTURE( N );
    Depth3Report report;
    const auto c = synth_depth3( k, N, default_locality_limit, &report );
    CHECK( depth( c ) == 3 );
    CHECK( report.depth == 3 );
    CHECK( report.size == size( c ) );
    CHECK_FALSE( c.monotone );
    for ( const auto& g : c.gates )
      CHECK( ( g.kind != GateKind::Thr && g.kind != GateKind::Input ) );
    const auto r = exhaustive_check( c, k, N );
    CHECK( r.mismatches == 0 );
  }
  Depth3Report report;
  synth_depth3( 3, 4, default_locality_limit, &report );
  for ( const auto s : report.generate_support )
    CHECK( s <= 9 );
  for ( const auto s : report.propagate_support )
    CHECK( s <= 9 );
}

TEST_CASE( "synth_depth3 refuses oversized supports" )
{
  try
  {
    synth_depth3( 5, 4, 5 );
    FAIL( "expected a locality refusal" );
  }
  catch ( const LocalityError& e )
  {
    CHECK( e.support() > 5 );
    CHECK( std::string( e.what() ).find( "depends on" ) != std::string::npos );
  }
}

TEST_CASE( "event circuits against the carry chain of y + z" )
{
  const int cases[][2] = { { 3, 3 }, { 3, 4 }, { 4, 3 }, { 2, 5 } };
  for ( const auto& [k, N] : cases )
  {
    const auto r = reduce_to_two( k, N );
    const Evaluator a( overflow_event_circuit( r, k, N ) );
    const Evaluator b( carry_event_circuit( r, k, N ) );
    const Dims dims{ k, N };
    for ( std::uint64_t i = 0; i < ( std::uint64_t{ 1 } << dims.bits() ); ++i )
    {
      const auto x = InputMatrix::from_index( dims, i );
      const auto y = evaluate_number( r.y, x.bits() );
      const auto z = evaluate_number( r.z, x.bits() );
      const bool high = ( y >> N ) != 0 || ( z >> N ) != 0;
      // Ripple-carry over the low N places.
      bool carry = false;
      for ( int e = 0; e < N; ++e )
      {
        const int s = ( ( y >> e ) & 1 ) + ( ( z >> e ) & 1 ) + carry;
        carry = s >= 2;
      }
      REQUIRE( a( x ) == high );
      REQUIRE( b( x ) == carry );
      REQUIRE( ( high || carry ) == addition_threshold( x ) );
    }
  }
}

TEST_CASE( "restrict_rows" )
{
  SUBCASE( "depth-3 circuit for three rows restricted to two" )
  {
    for ( int N = 3; N <= 4; ++N )
    {
      const auto c = restrict_rows( synth_depth3( 3, N ), 2 );
      CHECK( c.dims == Dims{ 2, N } );
      CHECK( depth( c ) <= 3 );
      CHECK( exhaustive_check( c, 2, N ).mismatches == 0 );
    }
  }
  SUBCASE( "empty restriction" )
  {
    const auto c = synth_depth3( 2, 3 );
    const auto r = restrict_rows( c, 2 );
    CHECK( size( r ) == size( c ) );
    CHECK( exhaustive_check( r, 2, 3 ).mismatches == 0 );
  }
  SUBCASE( "direct gate to one row" )
  {
    const auto r = restrict_rows( direct_threshold_circuit( 3, 2 ), 1 );
    CHECK( r.dims == Dims{ 1, 2 } );
    CHECK( exhaustive_check( r, 1, 2 ).mismatches == 0 );
  }
  SUBCASE( "bad row counts" )
  {
    const auto c = synth_depth3( 2, 3 );
    CHECK_THROWS_AS( restrict_rows( c, 3 ), std::invalid_argument );
    CHECK_THROWS_AS( restrict_rows( c, 0 ), std::invalid_argument );
  }
}
