#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "monosynth/addition.hpp"
#include "monosynth/connectivity.hpp"
#include "monosynth/depth3.hpp"
#include "monosynth/distributions.hpp"
#include "monosynth/majority.hpp"
#include "monosynth/netlist.hpp"

namespace py = pybind11;
using namespace monosynth;

namespace
{

InputMatrix matrix_from( const std::vector<std::string>& rows )
{
  return InputMatrix::from_rows( std::span<const std::string>( rows ) );
}

std::vector<std::string> rows_of( const InputMatrix& x )
{
  std::vector<std::string> out;
  for ( int i = 1; i <= x.rows(); ++i )
  {
    std::string row;
    for ( int j = 1; j <= x.cols(); ++j )
      row += x.at( i, j ) ? '1' : '0';
    out.push_back( std::move( row ) );
  }
  return out;
}

py::int_ to_py( const BigInt& v )
{
  return py::int_( py::str( v.str() ) );
}

py::dict estimate_dict( const AdvantageEstimate& e )
{
  py::dict d;
  d["value"] = e.value;
  d["mode"] = e.mode == EstimateMode::Exact ? "exact" : "monte-carlo";
  d["samples"] = e.samples;
  d["stderr"] = e.stderr_;
  if ( e.mode == EstimateMode::Exact )
    d["exact"] = e.exact;
  d["seed"] = e.seed ? py::object( py::int_( *e.seed ) ) : py::object( py::none() );
  return d;
}

FamilyId family_of( const std::string& name, int level )
{
  return { family_from_string( name ), level };
}

} // namespace

PYBIND11_MODULE( monosynth, m )
{
  m.doc() = "Threshold and AND/OR circuits for U_{k,N}, with exhaustive checking and distribution samplers";

  py::register_exception<CircuitError>( m, "CircuitError", PyExc_ValueError );
  py::register_exception<SynthesisError>( m, "SynthesisError", PyExc_ValueError );
  py::register_exception<DistributionError>( m, "DistributionError", PyExc_ValueError );
  py::register_exception<NetlistError>( m, "NetlistError", PyExc_ValueError );
  py::register_exception<MatrixError>( m, "MatrixError", PyExc_ValueError );
  py::register_exception<EnumerationLimitError>( m, "EnumerationLimitError", PyExc_RuntimeError );
  py::register_exception<LocalityError>( m, "LocalityError", PyExc_RuntimeError );

  py::class_<Circuit>( m, "Circuit" )
      .def_property_readonly( "k", []( const Circuit& c ) { return c.dims.rows; } )
      .def_property_readonly( "N", []( const Circuit& c ) { return c.dims.cols; } )
      .def_property_readonly( "monotone", []( const Circuit& c ) { return c.monotone; } )
      .def_property_readonly( "gate_count", []( const Circuit& c ) { return c.gates.size(); } )
      .def( "size", []( const Circuit& c ) { return size( c ); } )
      .def( "depth", []( const Circuit& c ) { return depth( c ); } )
      .def( "evaluate", []( const Circuit& c, const std::vector<std::string>& rows ) { return evaluate( c, matrix_from( rows ) ); },
            py::arg( "rows" ) )
      .def( "validate", []( const Circuit& c ) {
        std::vector<std::string> out;
        for ( const auto& v : validate( c ).violations )
          out.push_back( v.message );
        return out;
      } )
      .def( "to_netlist", []( const Circuit& c ) { return write_netlist( c ); } )
      .def( "__eq__", []( const Circuit& a, const Circuit& b ) { return a == b; } );

  m.def( "read_netlist", []( const std::string& text ) { return read_netlist( text ); }, py::arg( "text" ) );

  m.def( "sum_of", []( const std::vector<std::string>& rows ) { return to_py( sum_of( matrix_from( rows ) ) ); }, py::arg( "rows" ) );
  m.def( "u", []( const std::vector<std::string>& rows ) { return addition_threshold( matrix_from( rows ) ); }, py::arg( "rows" ) );

  m.def(
      "exhaustive_check",
      []( const Circuit& c, int k, int N, std::optional<int> limit ) {
        const auto r = exhaustive_check( c, k, N, limit );
        py::dict d;
        d["inputs"] = r.inputs;
        d["mismatches"] = r.mismatches;
        d["counterexample_indices"] = r.counterexample_indices;
        std::vector<std::vector<std::string>> ce;
        for ( const auto& x : r.counterexamples )
          ce.push_back( rows_of( x ) );
        d["counterexamples"] = ce;
        return d;
      },
      py::arg( "circuit" ), py::arg( "k" ), py::arg( "N" ), py::arg( "limit" ) = py::none() );

  m.def(
      "synth_majority", []( int k, int N, int d ) { return synth_majority( SynthParams::derive( k, N, d ) ); }, py::arg( "k" ),
      py::arg( "N" ), py::arg( "d" ) );
  m.def( "direct_threshold_circuit", &direct_threshold_circuit, py::arg( "k" ), py::arg( "N" ) );
  m.def(
      "synth_params",
      []( int k, int N, int d ) {
        const auto p = SynthParams::derive( k, N, d );
        py::dict out;
        out["k"] = p.k;
        out["N"] = p.N;
        out["d"] = p.d;
        out["n"] = p.n;
        out["s"] = p.s;
        out["t"] = p.t;
        out["M"] = p.M;
        out["direct"] = p.direct;
        return out;
      },
      py::arg( "k" ), py::arg( "N" ), py::arg( "d" ) );
  m.def(
      "theoretical_size_bound", []( int k, int N, int d ) { return to_py( theoretical_size_bound( k, N, d ) ); }, py::arg( "k" ),
      py::arg( "N" ), py::arg( "d" ) );
  m.def(
      "synth_depth3", []( int k, int N, std::size_t limit ) { return synth_depth3( k, N, limit ); }, py::arg( "k" ), py::arg( "N" ),
      py::arg( "limit" ) = default_locality_limit );
  m.def( "restrict_rows", &restrict_rows, py::arg( "circuit" ), py::arg( "d" ) );
  m.def( "synth_connectivity", &synth_connectivity, py::arg( "k" ), py::arg( "N" ), py::arg( "block_size" ) );
  m.def(
      "reaches",
      []( const std::vector<std::string>& rows, int block_size ) {
        const auto x = matrix_from( rows );
        return reaches( build_graph( x, Decomposition::uniform( x.cols(), block_size ), x.rows() ) );
      },
      py::arg( "rows" ), py::arg( "block_size" ) );

  m.def(
      "sample",
      []( const std::string& family, int level, int n, int N1, std::uint64_t seed, std::uint64_t count ) {
        const auto id = family_of( family, level );
        const DistParams p{ n, N1 };
        const Rng base( seed );
        std::vector<std::vector<std::string>> out;
        for ( std::uint64_t i = 0; i < count; ++i )
        {
          auto rng = base.split( i );
          out.push_back( rows_of( sample( id, p, rng ) ) );
        }
        return out;
      },
      py::arg( "family" ), py::arg( "level" ), py::arg( "n" ), py::arg( "N1" ), py::arg( "seed" ) = 0, py::arg( "count" ) = 1 );
  m.def(
      "expected_sum",
      []( const std::string& family, int level, int n, int N1 ) { return to_py( expected_sum( family_of( family, level ), { n, N1 } ) ); },
      py::arg( "family" ), py::arg( "level" ), py::arg( "n" ), py::arg( "N1" ) );
  m.def(
      "advantage_mc",
      []( const Circuit& c, const std::string& yes, const std::string& no, int level, int n, int N1, std::uint64_t samples,
          std::uint64_t seed ) {
        return estimate_dict( advantage_mc( c, family_of( yes, level ), family_of( no, level ), { n, N1 }, samples, seed ) );
      },
      py::arg( "circuit" ), py::arg( "yes" ), py::arg( "no" ), py::arg( "level" ), py::arg( "n" ), py::arg( "N1" ),
      py::arg( "samples" ), py::arg( "seed" ) = 0 );
  m.def(
      "advantage_exact_level1", []( const Circuit& c, int N1 ) { return estimate_dict( advantage_exact_level1( c, N1 ) ); },
      py::arg( "circuit" ), py::arg( "N1" ) );
  m.def( "lemma22_reduce", &lemma22_reduce, py::arg( "circuit" ) );
  m.def( "lemma23_reduce", &lemma23_reduce, py::arg( "circuit" ) );
}
