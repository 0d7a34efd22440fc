#include "monosynth/netlist.hpp"

#include <fstream>
#include <sstream>

namespace monosynth
{

using nlohmann::ordered_json;

ordered_json to_json( const Circuit& circuit )
{
  ordered_json doc;
  doc["k"] = circuit.dims.rows;
  doc["N"] = circuit.dims.cols;
  doc["monotone"] = circuit.monotone;
  doc["output"] = circuit.output;
  auto gates = ordered_json::array();
  for ( const auto& g : circuit.gates )
  {
    ordered_json gate;
    gate["id"] = g.id;
    gate["kind"] = std::string( to_string( g.kind ) );
    if ( g.kind == GateKind::Thr )
    {
      gate["threshold"] = g.threshold;
    }
    if ( reads_input( g.kind ) )
    {
      gate["i"] = g.pos.row;
      gate["j"] = g.pos.col;
    }
    auto children = ordered_json::array();
    for ( const auto& w : g.children )
    {
      children.push_back( ordered_json{ { "id", w.child }, { "mult", w.mult } } );
    }
    gate["children"] = std::move( children );
    gates.push_back( std::move( gate ) );
  }
  doc["gates"] = std::move( gates );
  return doc;
}

Circuit circuit_from_json( const ordered_json& doc )
{
  try
  {
    Circuit c;
    c.dims = { doc.at( "k" ).get<int>(), doc.at( "N" ).get<int>() };
    c.monotone = doc.at( "monotone" ).get<bool>();
    c.output = doc.at( "output" ).get<GateId>();
    for ( const auto& entry : doc.at( "gates" ) )
    {
      Gate g;
      g.id = entry.at( "id" ).get<GateId>();
      g.kind = gate_kind_from_string( entry.at( "kind" ).get<std::string>() );
      if ( g.kind == GateKind::Thr )
      {
        g.threshold = entry.at( "threshold" ).get<std::uint64_t>();
      }
      if ( reads_input( g.kind ) )
      {
        g.pos = { entry.at( "i" ).get<int>(), entry.at( "j" ).get<int>() };
      }
      if ( const auto it = entry.find( "children" ); it != entry.end() )
      {
        for ( const auto& w : *it )
        {
          g.children.push_back( { w.at( "id" ).get<GateId>(), w.at( "mult" ).get<std::uint64_t>() } );
        }
      }
      c.gates.push_back( std::move( g ) );
    }
    return c;
  }
  catch ( const nlohmann::json::exception& e )
  {
    throw NetlistError( std::string( "malformed netlist: " ) + e.what() );
  }
  catch ( const CircuitError& e )
  {
    throw NetlistError( std::string( "malformed netlist: " ) + e.what() );
  }
}

std::string write_netlist( const Circuit& circuit )
{
  return to_json( circuit ).dump( 1 ) + "\n";
}

Circuit read_netlist( std::string_view text )
{
  ordered_json doc;
  try
  {
    doc = ordered_json::parse( text );
  }
  catch ( const nlohmann::json::parse_error& e )
  {
    throw NetlistError( std::string( "netlist is not valid JSON: " ) + e.what() );
  }
  return circuit_from_json( doc );
}

Circuit load_netlist( const std::string& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw NetlistError( "cannot open netlist '" + path + "'" );
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return read_netlist( buffer.str() );
}

void save_netlist( const Circuit& circuit, const std::string& path )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw NetlistError( "cannot write netlist '" + path + "'" );
  }
  out << write_netlist( circuit );
}

} // namespace monosynth
