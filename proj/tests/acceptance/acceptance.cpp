// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "monosynth/addition.hpp"
#include "monosynth/connectivity.hpp"
#include "monosynth/depth3.hpp"
#include "monosynth/distributions.hpp"
#include "monosynth/majority.hpp"
#include "monosynth/netlist.hpp"

using namespace monosynth;

namespace
{

// Pinned tolerances and budgets.
constexpr double majority_time_budget_s = 120.0;
constexpr double sampling_time_budget_s = 60.0;
constexpr std::uint64_t draws_per_family = 100000;
constexpr std::uint64_t paired_samples = 100000;
constexpr double stderr_multiplier = 4.0;
// Maximum exact advantage over all depth-1 gates with total weight <= 4 at N1 = 4,
// computed by a separate brute-force search and frozen here.
constexpr const char* frozen_level1_maximum = "5/4";

using Clock = std::chrono::steady_clock;

double seconds_since( Clock::time_point start )
{
  return std::chrono::duration<double>( Clock::now() - start ).count();
}

struct Outcome
{
  bool pass = true;
  std::string detail;
};

int failures = 0;

void record( int id, const std::string& title, const std::function<Outcome()>& body )
{
  const auto start = Clock::now();
  Outcome o;
  try
  {
    o = body();
  }
  catch ( const std::exception& e )
  {
    o.pass = false;
    o.detail = std::string( "exception: " ) + e.what();
  }
  if ( !o.pass )
  {
    ++failures;
  }
  while ( o.detail.size() >= 2 && o.detail.compare( o.detail.size() - 2, 2, "; " ) == 0 )
  {
    o.detail.resize( o.detail.size() - 2 );
  }
  char time[32];
  std::snprintf( time, sizeof time, "%.2fs", seconds_since( start ) );
  std::cout << "criterion " << id << ": " << ( o.pass ? "PASS" : "FAIL" ) << "  " << title << "  [" << o.detail << "; " << time
            << "]" << std::endl;
}

std::uint64_t pow2( int e )
{
  return std::uint64_t{ 1 } << e;
}

Circuit single_gate( Dims dims, const std::vector<std::uint64_t>& weights, std::uint64_t t )
{
  CircuitBuilder b( dims, true );
  std::vector<Wire> ws;
  for ( int i = 1; i <= dims.rows; ++i )
    for ( int j = 1; j <= dims.cols; ++j )
      ws.push_back( { b.input( { i, j } ), weights[bit_offset( dims, { i, j } )] } );
  const auto g = b.threshold( t, ws );
  return std::move( b ).finish( g );
}

/// Value table of a circuit over every input, in enumeration order.
std::vector<char> truth_table( const Circuit& c )
{
  const Evaluator e( c );
  const std::uint64_t total = pow2( c.dims.bits() );
  std::vector<char> out( total );
  std::vector<std::uint8_t> scratch;
  for ( std::uint64_t i = 0; i < total; ++i )
    out[i] = e.evaluate( InputMatrix::from_index( c.dims, i ).bits(), scratch );
  return out;
}

/// Row-integer oracle, independent of the library's carry chain.
bool u_rows( const InputMatrix& x )
{
  std::uint64_t total = 0;
  for ( int i = 1; i <= x.rows(); ++i )
  {
    std::uint64_t row = 0;
    for ( int j = 1; j <= x.cols(); ++j )
      row = 2 * row + x.at( i, j );
    total += row;
  }
  return total >= pow2( x.cols() );
}

std::uint64_t mismatches_vs_rows( const Circuit& c )
{
  const Evaluator e( c );
  std::vector<std::uint8_t> scratch;
  std::uint64_t bad = 0;
  for ( std::uint64_t i = 0; i < pow2( c.dims.bits() ); ++i )
  {
    const auto x = InputMatrix::from_index( c.dims, i );
    bad += e.evaluate( x.bits(), scratch ) != u_rows( x );
  }
  return bad;
}

// ---------------------------------------------------------------------------

Outcome criterion1()
{
  const auto start = Clock::now();
  std::uint64_t points = 0, inputs = 0, bad = 0;
  std::ostringstream misses;
  for ( const int k : { 2, 3 } )
    for ( const int d : { 1, 2, 3 } )
      for ( const int N : { 2, 3, 4, 8, 9 } )
      {
        if ( k * N > 20 )
          continue;
        const auto c = synth_majority( SynthParams::derive( k, N, d ) );
        const auto r = exhaustive_check( c, k, N, 20 );
        ++points;
        inputs += r.inputs;
        bad += r.mismatches;
        if ( r.mismatches || c.dims != Dims{ k, N } || depth( c ) > d )
          misses << " (" << k << "," << N << "," << d << ")";
      }
  const double elapsed = seconds_since( start );
  std::ostringstream d;
  d << points << " grid points, " << inputs << " inputs, " << bad << " mismatches, " << elapsed << "s of " << majority_time_budget_s
    << "s";
  if ( !misses.str().empty() )
    d << ", failing:" << misses.str();
  return { bad == 0 && misses.str().empty() && elapsed < majority_time_budget_s && points == 24, d.str() };
}

Outcome criterion2()
{
  std::cout << "  k,N,d,measured_size,bound,measured_depth\n";
  int points = 0, over = 0;
  for ( const int k : { 2, 3 } )
    for ( const int N : { 2, 3, 4, 8, 9 } )
      for ( const int d : { 1, 2, 3 } )
      {
        const auto p = SynthParams::derive( k, N, d );
        const auto r = size_report( p, synth_majority( p ) );
        std::cout << "  " << k << ',' << N << ',' << d << ',' << r.measured_size << ',' << r.bound.str() << ',' << r.measured_depth
                  << '\n';
        ++points;
        over += BigInt( r.measured_size ) > r.bound;
      }
  return { over == 0 && points == 30, std::to_string( points ) + " grid points, " + std::to_string( over ) + " above the bound" };
}

Outcome criterion3()
{
  std::uint64_t checked = 0, failed = 0;
  const int n = 2;
  for ( const int k : { 2, 3 } )
    for ( const int w : { 2, 3 } )
      for ( int u = 0; u < k; ++u )
        for ( int v = 0; v < k; ++v )
        {
          CircuitBuilder cb( { k, n * w }, true );
          CarryGrid grid( n, k );
          for ( int g = 1; g <= n; ++g )
            for ( int a = 1; a < k; ++a )
              for ( int b = 0; b < k; ++b )
                grid.set( g, a, b, carry_gate( cb, { ( g - 1 ) * w + 1, g * w }, k, a, b ) );
          const auto out = combine_gate( cb, u, v, grid );
          const auto combined = truth_table( std::move( cb ).finish( out ) );

          CircuitBuilder mb( { k, n * w }, true );
          const auto merged_gate = carry_gate( mb, { 1, n * w }, k, u, v );
          const auto merged = truth_table( std::move( mb ).finish( merged_gate ) );

          const Dims dims{ k, n * w };
          for ( std::uint64_t i = 0; i < combined.size(); ++i )
          {
            ++checked;
            // Also against the arithmetic form of the merged carry.
            const bool arith = carry_holds( InputMatrix::from_index( dims, i ), { 1, n * w }, k, u, v );
            failed += combined[i] != merged[i] || merged[i] != arith;
          }
        }
  return { failed == 0, std::to_string( checked ) + " (u,v,assignment) checks, " + std::to_string( failed ) + " failures" };
}

Outcome criterion4()
{
  std::uint64_t comparisons = 0, violations = 0;
  int blocks = 0;
  for ( const int k : { 2, 3, 4 } )
    for ( int w = 1; k * w <= 16; ++w )
    {
      if ( !log2_at_most( static_cast<std::uint64_t>( k ), static_cast<std::uint64_t>( w ) ) )
        continue;
      ++blocks;
      std::vector<std::vector<char>> table( static_cast<std::size_t>( k * k ) );
      for ( int a = 0; a < k; ++a )
        for ( int b = 0; b < k; ++b )
        {
          CircuitBuilder cb( { k, w }, true );
          const auto g = carry_gate( cb, { 1, w }, k, a, b );
          table[a * k + b] = truth_table( std::move( cb ).finish( g ) );
        }
      const std::size_t total = table[0].size();
      for ( int a = 0; a < k; ++a )
        for ( int b = 0; b < k; ++b )
          for ( int a2 = 0; a2 < k; ++a2 )
            for ( int b2 = 0; b2 < k; ++b2 )
            {
              const bool precedes = a < a2 || ( a == a2 && b > b2 );
              if ( !precedes )
                continue;
              const auto& lo = table[a * k + b];
              const auto& hi = table[a2 * k + b2];
              for ( std::size_t i = 0; i < total; ++i )
              {
                ++comparisons;
                violations += hi[i] > lo[i];
              }
            }
    }
  return { violations == 0, std::to_string( blocks ) + " block shapes, " + std::to_string( comparisons ) + " ordered comparisons, " +
                                std::to_string( violations ) + " violations" };
}

Outcome criterion5()
{
  std::ostringstream d;
  bool ok = true;
  for ( const auto& [k, N] : { std::pair{ 2, 3 }, { 2, 4 }, { 3, 3 }, { 3, 4 } } )
  {
    const auto c = synth_depth3( k, N );
    const auto mm = exhaustive_check( c, k, N ).mismatches + mismatches_vs_rows( c );
    const int dep = depth( c );
    ok = ok && dep == 3 && mm == 0;
    d << "(" << k << "," << N << "): depth " << dep << ", " << mm << " mismatches; ";
  }
  std::uint64_t assignments = 0, broken = 0;
  int shapes = 0;
  for ( int k = 1; k <= 14; ++k )
    for ( int N = 1; k * N <= 14; ++N )
    {
      ++shapes;
      const auto r = reduce_to_two( k, N );
      const Dims dims{ k, N };
      for ( std::uint64_t i = 0; i < pow2( dims.bits() ); ++i )
      {
        const auto x = InputMatrix::from_index( dims, i );
        std::uint64_t rows = 0;
        for ( int a = 1; a <= k; ++a )
        {
          std::uint64_t row = 0;
          for ( int j = 1; j <= N; ++j )
            row = 2 * row + x.at( a, j );
          rows += row;
        }
        ++assignments;
        broken += evaluate_number( r.y, x.bits() ) + evaluate_number( r.z, x.bits() ) != rows;
      }
    }
  ok = ok && broken == 0;
  d << "sum identity over " << shapes << " shapes, " << assignments << " assignments, " << broken << " failures";
  return { ok, d.str() };
}

Outcome criterion6()
{
  std::ostringstream d;
  bool ok = true;
  for ( const int N : { 3, 4 } )
  {
    const auto c = restrict_rows( synth_depth3( 3, N ), 2 );
    const auto mm = exhaustive_check( c, 2, N ).mismatches + mismatches_vs_rows( c );
    ok = ok && mm == 0 && c.dims == Dims{ 2, N };
    d << "N=" << N << ": " << mm << " mismatches; ";
  }
  return { ok, d.str() };
}

Outcome criterion7()
{
  std::ostringstream d;
  bool ok = true;
  for ( const auto& [k, l, bs] : { std::tuple{ 2, 2, 2 }, { 2, 4, 2 }, { 3, 2, 2 } } )
  {
    const int N = l * bs;
    const Dims dims{ k, N };
    const auto decomposition = Decomposition::uniform( N, bs );
    std::uint64_t graph_bad = 0;
    for ( std::uint64_t i = 0; i < pow2( dims.bits() ); ++i )
    {
      const auto x = InputMatrix::from_index( dims, i );
      graph_bad += reaches( build_graph( x, decomposition, k ) ) != u_rows( x );
    }
    const auto c = synth_connectivity( k, N, bs );
    const auto circuit_bad = exhaustive_check( c, k, N ).mismatches;
    std::uint64_t wide_and = 0;
    for ( const auto& g : c.gates )
      wide_and += g.kind == GateKind::And && g.fan_in() > 2;
    ok = ok && graph_bad == 0 && circuit_bad == 0 && wide_and == 0 && c.monotone;
    d << "(" << k << "," << l << "," << bs << "): graph " << graph_bad << ", circuit " << circuit_bad << ", wide AND " << wide_and << "; ";
  }
  return { ok, d.str() };
}

Outcome criterion8()
{
  const auto start = Clock::now();
  const Family families[] = { Family::Yes, Family::No, Family::YesPrime, Family::NoPrime, Family::YesStar, Family::NoStar };
  std::uint64_t draws = 0, wrong = 0, big_checked = 0;
  int configs = 0;
  for ( int level = 1; level <= 3; ++level )
    for ( const int n : { 2, 3 } )
      for ( const int N1 : { 3, 4 } )
        for ( const auto f : families )
        {
          if ( ( f == Family::YesStar || f == Family::NoStar ) && level < 2 )
            continue;
          const FamilyId id{ f, level };
          const DistParams p{ n, N1 };
          const auto dims = family_dims( id, p );
          if ( dims.cols > 60 )
            throw std::runtime_error( "unexpectedly wide family" );
          const auto expect = static_cast<std::uint64_t>( expected_sum( id, p ) );
          ++configs;
          Rng rng( 0x5eed0000u + static_cast<std::uint64_t>( configs ) );
          for ( std::uint64_t s = 0; s < draws_per_family; ++s )
          {
            const auto x = sample( id, p, rng );
            std::uint64_t sum = 0;
            const auto bits = x.bits();
            for ( int i = 0; i < dims.rows; ++i )
              for ( int j = 0; j < dims.cols; ++j )
                sum += static_cast<std::uint64_t>( bits[i * dims.cols + j] ) << ( dims.cols - 1 - j );
            ++draws;
            wrong += sum != expect || x.dims() != dims;
            if ( s < 1000 )
            {
              ++big_checked;
              wrong += sum_of( x ) != expected_sum( id, p );
            }
          }
        }
  const double elapsed = seconds_since( start );
  std::ostringstream d;
  d << configs << " family configs, " << draws << " draws (" << big_checked << " also via exact big-integer SUM), " << wrong
    << " deviations, " << elapsed << "s of " << sampling_time_budget_s << "s";
  return { wrong == 0 && configs == 64 && elapsed < sampling_time_budget_s, d.str() };
}

Outcome criterion9()
{
  const int N1 = 4;
  const Dims dims{ 2, N1 };
  const int vars = 2 * N1;
  std::string best_exact;
  double best = -1;
  std::vector<std::uint64_t> best_w;
  std::uint64_t best_t = 0, gates = 0;
  std::vector<std::uint64_t> w( vars, 0 );
  // Every weight vector with sum <= 4, thresholds 0..5.
  std::function<void( int, int )> walk = [&]( int pos, int left ) {
    if ( pos == vars )
    {
      for ( std::uint64_t t = 0; t <= 5; ++t )
      {
        ++gates;
        const auto est = advantage_exact_level1( single_gate( dims, w, t ), N1 );
        if ( est.value > best )
        {
          best = est.value;
          best_exact = est.exact;
          best_w = w;
          best_t = t;
        }
      }
      return;
    }
    for ( int v = 0; v <= left; ++v )
    {
      w[pos] = static_cast<std::uint64_t>( v );
      walk( pos + 1, left - v );
    }
    w[pos] = 0;
  };
  walk( 0, 4 );

  std::vector<std::uint64_t> perfect_w( vars );
  std::uint64_t total_weight = 0;
  for ( int i = 1; i <= 2; ++i )
    for ( int j = 1; j <= N1; ++j )
      total_weight += perfect_w[bit_offset( dims, { i, j } )] = pow2( N1 - j );
  const auto perfect = advantage_exact_level1( single_gate( dims, perfect_w, pow2( N1 ) ), N1 );

  std::ostringstream d;
  d << gates << " gates searched, maximum " << best_exact << " (frozen " << frozen_level1_maximum << ") at weights (";
  for ( std::size_t i = 0; i < best_w.size(); ++i )
    d << ( i ? "," : "" ) << best_w[i];
  d << ") threshold " << best_t << "; perfect gate of weight " << total_weight << " gives " << perfect.exact;
  const bool ok = best < 2.0 && best_exact == frozen_level1_maximum && perfect.exact == "2/1" && total_weight == 2 * ( pow2( N1 ) - 1 );
  return { ok, d.str() };
}

/// Random monotone circuit of threshold gates over `dims`, fixed by `seed`.
Circuit random_threshold_circuit( Dims dims, std::uint64_t seed )
{
  std::mt19937_64 rng( seed );
  CircuitBuilder b( dims, true );
  std::vector<GateId> pool;
  for ( int i = 1; i <= dims.rows; ++i )
    for ( int j = 1; j <= dims.cols; ++j )
      pool.push_back( b.input( { i, j } ) );
  std::vector<GateId> layer;
  for ( int g = 0; g < 12; ++g )
  {
    std::vector<Wire> ws;
    std::uint64_t total = 0;
    for ( int c = 0; c < 6; ++c )
    {
      const std::uint64_t m = 1 + rng() % 4;
      ws.push_back( { pool[rng() % pool.size()], m } );
      total += m;
    }
    layer.push_back( b.threshold( 1 + rng() % total, ws ) );
  }
  std::vector<Wire> top;
  for ( const auto id : layer )
    top.push_back( { id, 1 + rng() % 2 } );
  std::uint64_t total = 0;
  for ( const auto& w : top )
    total += w.mult;
  const auto out = b.threshold( total / 2, top );
  return std::move( b ).finish( out );
}

Outcome criterion10()
{
  const DistParams p{ 2, 3 };
  std::ostringstream d;
  bool ok = true;
  int pairs = 0;
  for ( const int level : { 2, 3 } )
  {
    const Dims dims{ level + 1, p.columns( level ) };
    const std::vector<std::pair<std::string, Circuit>> circuits = {
        { "direct", direct_threshold_circuit( dims.rows, dims.cols ) },
        { "majority-d2", synth_majority( SynthParams::derive( dims.rows, dims.cols, 2 ) ) },
        { "random", random_threshold_circuit( dims, 1000 + level ) },
    };
    for ( const auto& [name, F] : circuits )
    {
      const std::uint64_t seed = 0xadu + 10 * level + pairs;
      const FamilyId ys{ Family::YesStar, level }, ns{ Family::NoStar, level };

      const auto F22 = lemma22_reduce( F );
      const auto lhs22 = advantage_mc( F, { Family::YesPrime, level }, { Family::NoPrime, level }, p, paired_samples, seed );
      const auto rhs22 = advantage_mc( F22, ys, ns, p, paired_samples, seed );
      const double se22 = std::hypot( lhs22.stderr_, rhs22.stderr_ );
      const bool eq = std::abs( lhs22.value - rhs22.value ) <= stderr_multiplier * se22;

      const auto F23 = lemma23_reduce( F );
      const auto lhs23 = advantage_mc( F, { Family::Yes, level }, { Family::No, level }, p, paired_samples, seed );
      const auto rhs23 = advantage_mc( F23, ys, ns, p, paired_samples, seed );
      const double se23 = std::hypot( lhs23.stderr_, rhs23.stderr_ );
      const bool le = lhs23.value <= rhs23.value + stderr_multiplier * se23;

      const bool shapes = F22.dims == family_dims( ys, p ) && F23.dims == family_dims( ys, p ) && depth( F22 ) <= depth( F ) &&
                          depth( F23 ) <= depth( F ) && size( F22 ) <= size( F ) && size( F23 ) <= size( F );
      ok = ok && eq && le && shapes;
      ++pairs;
      char buf[256];
      std::snprintf( buf, sizeof buf, "l=%d %s: %.4f vs %.4f, %.4f <= %.4f%s; ", level, name.c_str(), lhs22.value, rhs22.value,
                     lhs23.value, rhs23.value, ( eq && le && shapes ) ? "" : " (violated)" );
      d << buf;
    }
  }
  return { ok && pairs == 6, d.str() };
}

Outcome criterion11()
{
  bool ok = true;
  int artifacts = 0;
  auto same = [&]( const std::string& a, const std::string& b ) {
    ++artifacts;
    ok = ok && a == b;
  };

  const std::vector<std::function<Circuit()>> builders = {
      [] { return synth_majority( SynthParams::derive( 3, 9, 2 ) ); },
      [] { return synth_majority( SynthParams::derive( 2, 8, 3 ) ); },
      [] { return synth_depth3( 3, 4 ); },
      [] { return synth_connectivity( 2, 8, 2 ); },
      [] { return lemma23_reduce( synth_majority( SynthParams::derive( 3, 7, 2 ) ) ); },
  };
  for ( const auto& build : builders )
  {
    const auto first = write_netlist( build() );
    same( first, write_netlist( build() ) );
    same( first, write_netlist( read_netlist( first ) ) );
    ok = ok && read_netlist( first ) == build();
  }

  const DistParams p{ 3, 4 };
  for ( const auto f : { Family::No, Family::NoPrime, Family::YesStar } )
  {
    auto dump = [&]( std::uint64_t seed ) {
      std::string text;
      const Rng base( seed );
      for ( std::uint64_t i = 0; i < 200; ++i )
      {
        auto rng = base.split( i );
        text += to_text( sample( { f, 3 }, p, rng ) ) + "\n";
      }
      return text;
    };
    same( dump( 99 ), dump( 99 ) );
    ok = ok && dump( 99 ) != dump( 100 );
  }

  const auto F = synth_majority( SynthParams::derive( 3, p.columns( 2 ), 2 ) );
  const auto a = advantage_mc( F, { Family::Yes, 2 }, { Family::No, 2 }, p, 5000, 8 ).to_json().dump();
  same( a, advantage_mc( F, { Family::Yes, 2 }, { Family::No, 2 }, p, 5000, 8 ).to_json().dump() );

  return { ok, std::to_string( artifacts ) + " artifact pairs byte-identical" };
}

} // namespace

int main()
{
  std::cout << "monosynth acceptance suite" << std::endl;
  record( 1, "majority construction matches U on the (k,N,d) grid", criterion1 );
  record( 2, "measured size within the size bound", criterion2 );
  record( 3, "combiner equals merged carry gate", criterion3 );
  record( 4, "carry bits ordered", criterion4 );
  record( 5, "depth-3 construction and carry-save sum identity", criterion5 );
  record( 6, "row restriction of the depth-3 circuit", criterion6 );
  record( 7, "carry-graph reachability and connectivity circuit", criterion7 );
  record( 8, "exact SUM of every sampled draw", criterion8 );
  record( 9, "level-1 depth-1 advantage search", criterion9 );
  record( 10, "frame reductions in paired Monte-Carlo runs", criterion10 );
  record( 11, "determinism and netlist round trip", criterion11 );
  std::cout << ( failures == 0 ? "ALL PASS" : std::to_string( failures ) + " FAILED" ) << std::endl;
  return failures == 0 ? 0 : 1;
}
