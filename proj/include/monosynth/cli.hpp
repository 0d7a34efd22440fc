#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace monosynth::cli
{

enum class Command
{
  Synth,
  Eval,
  Verify,
  Sample,
  Advantage,
  Report
};

struct RunConfig
{
  Command command = Command::Synth;
  std::string construction = "majority"; ///< majority | ac0 | connectivity
  int k = 2;
  int N = 4;
  int d = 2;
  int block_size = 2;

  std::string family = "YES";
  std::string yes_family = "YES";
  std::string no_family = "NO";
  int level = 1;
  int n = 2;
  int N1 = 3;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1;
  bool exact = false;

  std::string netlist;     ///< input netlist (eval, verify, advantage)
  std::string matrix;      ///< input matrix file (eval)
  std::string out;         ///< output path; empty means stdout
  std::optional<int> enum_limit;

  std::vector<int> k_list{ 2, 3 };
  std::vector<int> d_list{ 1, 2, 3 };
  std::vector<int> N_list{ 2, 3, 4, 8, 9 };
};

/// Parses argv; on --help or a usage error returns nullopt after printing to `err`
/// and sets `exit_code`.
std::optional<RunConfig> parse_args( int argc, const char* const* argv, std::ostream& out, std::ostream& err, int& exit_code );

/// Executes one command. Returns the process exit status.
int run( const RunConfig& config, std::ostream& out, std::ostream& err );

int main( int argc, const char* const* argv );

} // namespace monosynth::cli
