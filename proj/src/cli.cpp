#include "monosynth/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "monosynth/addition.hpp"
#include "monosynth/connectivity.hpp"
#include "monosynth/depth3.hpp"
#include "monosynth/distributions.hpp"
#include "monosynth/majority.hpp"
#include "monosynth/netlist.hpp"

namespace monosynth::cli
{

namespace
{

using nlohmann::ordered_json;

class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Built
{
  Circuit circuit;
  ordered_json report;
};

Built build( const RunConfig& c )
{
  Built b;
  if ( c.construction == "majority" )
  {
    const auto params = SynthParams::derive( c.k, c.N, c.d );
    b.circuit = synth_majority( params );
    const auto r = size_report( params, b.circuit );
    b.report["construction"] = "majority";
    b.report["k"] = params.k;
    b.report["N"] = params.N;
    b.report["d"] = params.d;
    b.report["n"] = params.n;
    b.report["s"] = params.s;
    b.report["t"] = params.t;
    b.report["M"] = params.M;
    b.report["direct"] = params.direct;
    b.report["measured_size"] = r.measured_size;
    b.report["measured_depth"] = r.measured_depth;
    b.report["bound"] = r.bound.str();
  }
  else if ( c.construction == "ac0" )
  {
    Depth3Report r;
    b.circuit = synth_depth3( c.k, c.N, default_locality_limit, &r );
    b.report["construction"] = "ac0";
    b.report["k"] = c.k;
    b.report["N"] = c.N;
    b.report["rounds"] = r.rounds;
    b.report["y_support"] = r.y_support;
    b.report["z_support"] = r.z_support;
    b.report["generate_support"] = r.generate_support;
    b.report["propagate_support"] = r.propagate_support;
    b.report["measured_size"] = r.size;
    b.report["measured_depth"] = r.depth;
  }
  else if ( c.construction == "connectivity" )
  {
    b.circuit = synth_connectivity( c.k, c.N, c.block_size );
    static constexpr GateKind and_or[] = { GateKind::And, GateKind::Or };
    b.report["construction"] = "connectivity";
    b.report["k"] = c.k;
    b.report["N"] = c.N;
    b.report["block_size"] = c.block_size;
    b.report["layers"] = c.N / c.block_size + 1;
    b.report["measured_size"] = size( b.circuit );
    b.report["measured_depth"] = depth( b.circuit );
    b.report["and_or_depth"] = depth_of_kinds( b.circuit, and_or );
  }
  else
  {
    throw UsageError( "unknown construction '" + c.construction + "' (expected majority, ac0 or connectivity)" );
  }
  return b;
}

/// Writes to --out when given, else to `fallback`.
void emit( const RunConfig& c, std::ostream& fallback, const std::string& text )
{
  if ( c.out.empty() )
  {
    fallback << text;
    return;
  }
  std::ofstream file( c.out, std::ios::binary );
  if ( !file )
  {
    throw UsageError( "cannot write '" + c.out + "'" );
  }
  file << text;
}

int run_synth( const RunConfig& c, std::ostream& out, std::ostream& err )
{
  const auto b = build( c );
  emit( c, out, write_netlist( b.circuit ) );
  ( c.out.empty() ? err : out ) << b.report.dump() << "\n";
  return 0;
}

int run_eval( const RunConfig& c, std::ostream& out )
{
  if ( c.netlist.empty() || c.matrix.empty() )
  {
    throw UsageError( "eval needs --netlist and --matrix" );
  }
  const auto circuit = load_netlist( c.netlist );
  std::ifstream in( c.matrix );
  if ( !in )
  {
    throw UsageError( "cannot open matrix file '" + c.matrix + "'" );
  }
  const auto matrices = read_matrices( in );
  if ( matrices.empty() )
  {
    throw UsageError( "matrix file '" + c.matrix + "' holds no matrix" );
  }
  const Evaluator eval( circuit );
  std::ostringstream text;
  for ( const auto& x : matrices )
  {
    text << ( eval( x ) ? 1 : 0 ) << "\n";
  }
  emit( c, out, text.str() );
  return 0;
}

int run_verify( const RunConfig& c, std::ostream& out )
{
  Circuit circuit;
  if ( !c.netlist.empty() )
  {
    circuit = load_netlist( c.netlist );
    const auto report = validate( circuit );
    if ( !report.structurally_valid() )
    {
      throw CircuitError( "invalid netlist:\n" + report.summary() );
    }
  }
  else
  {
    circuit = build( c ).circuit;
  }
  const auto report = exhaustive_check( circuit, circuit.dims.rows, circuit.dims.cols, c.enum_limit );
  std::ostringstream text;
  text << report.mismatches << " mismatches / " << report.inputs << " inputs\n";
  for ( std::size_t e = 0; e < report.counterexamples.size(); ++e )
  {
    text << "# counterexample " << report.counterexample_indices[e] << "\n" << to_text( report.counterexamples[e] ) << "\n";
  }
  emit( c, out, text.str() );
  return report.mismatches == 0 ? 0 : 1;
}

int run_sample( const RunConfig& c, std::ostream& out )
{
  const FamilyId id{ family_from_string( c.family ), c.level };
  const DistParams params{ c.n, c.N1 };
  const auto expected = expected_sum( id, params );
  const auto label = expected_sum_label( id, params );
  const Rng base( c.seed );

  std::ostringstream text;
  text << "# family " << to_string( id ) << " n=" << c.n << " N1=" << c.N1 << " seed=" << c.seed << "\n";
  bool all_ok = true;
  for ( std::uint64_t i = 0; i < c.samples; ++i )
  {
    auto rng = base.split( i );
    const auto x = sample( id, params, rng );
    const auto sum = sum_of( x );
    const bool ok = sum == expected;
    all_ok = all_ok && ok;
    if ( i > 0 )
    {
      text << "\n";
    }
    text << to_text( x ) << "# draw " << i << ": SUM = " << sum.str() << ( ok ? " = " : " != " ) << label
         << ( ok ? " ok" : " MISMATCH" ) << "\n";
  }
  emit( c, out, text.str() );
  return all_ok ? 0 : 1;
}

int run_advantage( const RunConfig& c, std::ostream& out )
{
  if ( c.netlist.empty() )
  {
    throw UsageError( "advantage needs --netlist" );
  }
  const auto circuit = load_netlist( c.netlist );
  AdvantageEstimate est;
  if ( c.exact )
  {
    est = advantage_exact_level1( circuit, c.N1, c.enum_limit.value_or( default_exact_level1_limit ) );
    est.seed = c.seed;
  }
  else
  {
    const FamilyId yes{ family_from_string( c.yes_family ), c.level };
    const FamilyId no{ family_from_string( c.no_family ), c.level };
    est = advantage_mc( circuit, yes, no, DistParams{ c.n, c.N1 }, c.samples, c.seed );
  }
  emit( c, out, est.to_json().dump() + "\n" );
  return 0;
}

int run_report( const RunConfig& c, std::ostream& out )
{
  std::ostringstream text;
  text << "k,N,d,measured_size,bound,measured_depth\n";
  for ( const int k : c.k_list )
  {
    for ( const int N : c.N_list )
    {
      for ( const int d : c.d_list )
      {
        const auto params = SynthParams::derive( k, N, d );
        const auto circuit = synth_majority( params );
        const auto r = size_report( params, circuit );
        text << k << ',' << N << ',' << d << ',' << r.measured_size << ',' << r.bound.str() << ',' << r.measured_depth << '\n';
      }
    }
  }
  emit( c, out, text.str() );
  return 0;
}

} // namespace

std::optional<RunConfig> parse_args( int argc, const char* const* argv, std::ostream& out, std::ostream& err, int& exit_code )
{
  RunConfig config;
  CLI::App app{ "Monotone threshold circuits for the addition-threshold function U_{k,N}", "monosynth" };
  app.require_subcommand( 1 );

  auto add_shape = [&]( CLI::App* sub ) {
    sub->add_option( "--construction", config.construction, "majority | ac0 | connectivity" )
        ->check( CLI::IsMember( { "majority", "ac0", "connectivity" } ) );
    sub->add_option( "--k", config.k, "number of rows" );
    sub->add_option( "--N", config.N, "number of columns" );
    sub->add_option( "--d", config.d, "depth (majority)" );
    sub->add_option( "--block-size,--blockSize", config.block_size, "block width (connectivity)" );
  };
  auto add_dist = [&]( CLI::App* sub ) {
    sub->add_option( "--level", config.level, "distribution level" );
    sub->add_option( "--n", config.n, "sections per level" );
    sub->add_option( "--N1", config.N1, "level-1 column count" );
    sub->add_option( "--samples", config.samples, "number of draws" );
    sub->add_option( "--seed", config.seed, "64-bit seed (default 0)" );
  };

  auto* synth = app.add_subcommand( "synth", "build a circuit and write its netlist" );
  add_shape( synth );
  synth->add_option( "--out", config.out, "netlist path (default stdout)" );

  auto* eval = app.add_subcommand( "eval", "evaluate a netlist on matrices" );
  eval->add_option( "--netlist", config.netlist, "netlist JSON" )->required();
  eval->add_option( "--matrix", config.matrix, "matrix text file" )->required();
  eval->add_option( "--out", config.out, "output path" );

  auto* verify = app.add_subcommand( "verify", "compare a circuit with U_{k,N} on every input" );
  add_shape( verify );
  verify->add_option( "--netlist", config.netlist, "verify this netlist instead of building one" );
  verify->add_option( "--enum-limit", config.enum_limit, "maximum k*N for enumeration" );
  verify->add_option( "--out", config.out, "output path" );

  auto* sample_cmd = app.add_subcommand( "sample", "draw matrices from a distribution family" );
  sample_cmd->add_option( "--family", config.family, "YES | NO | YESP | NOP | YESSTAR | NOSTAR" );
  add_dist( sample_cmd );
  sample_cmd->add_option( "--out", config.out, "output path" );

  auto* advantage = app.add_subcommand( "advantage", "estimate Pr_yes[F=1] + Pr_no[F=0]" );
  advantage->add_option( "--netlist", config.netlist, "netlist JSON" )->required();
  advantage->add_option( "--yes", config.yes_family, "YES-side family" );
  advantage->add_option( "--no", config.no_family, "NO-side family" );
  advantage->add_flag( "--exact", config.exact, "exact (YES_1, NO_1) value by enumeration" );
  advantage->add_option( "--enum-limit", config.enum_limit, "maximum N1 for --exact" );
  add_dist( advantage );
  advantage->add_option( "--out", config.out, "output path" );

  auto* report = app.add_subcommand( "report", "measured size against the size bound over a grid (CSV)" );
  report->add_option( "--k-list", config.k_list, "row counts" )->delimiter( ',' );
  report->add_option( "--N-list", config.N_list, "column counts" )->delimiter( ',' );
  report->add_option( "--d-list", config.d_list, "depths" )->delimiter( ',' );
  report->add_option( "--out", config.out, "CSV path" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    exit_code = app.exit( e, out, err );
    return std::nullopt;
  }

  if ( synth->parsed() )
    config.command = Command::Synth;
  else if ( eval->parsed() )
    config.command = Command::Eval;
  else if ( verify->parsed() )
    config.command = Command::Verify;
  else if ( sample_cmd->parsed() )
    config.command = Command::Sample;
  else if ( advantage->parsed() )
    config.command = Command::Advantage;
  else
    config.command = Command::Report;
  exit_code = 0;
  return config;
}

int run( const RunConfig& config, std::ostream& out, std::ostream& err )
{
  try
  {
    switch ( config.command )
    {
    case Command::Synth:
      return run_synth( config, out, err );
    case Command::Eval:
      return run_eval( config, out );
    case Command::Verify:
      return run_verify( config, out );
    case Command::Sample:
      return run_sample( config, out );
    case Command::Advantage:
      return run_advantage( config, out );
    case Command::Report:
      return run_report( config, out );
    }
  }
  catch ( const EnumerationLimitError& e )
  {
    err << "monosynth: " << e.what() << "\n";
    return 3;
  }
  catch ( const std::exception& e )
  {
    err << "monosynth: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int main( int argc, const char* const* argv )
{
  int code = 0;
  const auto config = parse_args( argc, argv, std::cout, std::cerr, code );
  if ( !config )
  {
    return code;
  }
  return run( *config, std::cout, std::cerr );
}

} // namespace monosynth::cli
