#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "monosynth/circuit.hpp"

namespace monosynth
{

class NetlistError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Netlist JSON.

  {"k", "N", "monotone", "output", "gates": [{"id", "kind", "threshold" (Thr),
  "i", "j" (Input and literals), "children": [{"id", "mult"}]}]}. Keys are
  written in this order and gates in storage order, so writing is
  deterministic and write(read(write(c))) == write(c).
*/
nlohmann::ordered_json to_json( const Circuit& circuit );
Circuit circuit_from_json( const nlohmann::ordered_json& doc );

std::string write_netlist( const Circuit& circuit );
Circuit read_netlist( std::string_view text );

Circuit load_netlist( const std::string& path );
void save_netlist( const Circuit& circuit, const std::string& path );

} // namespace monosynth
