#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "monosynth/circuit.hpp"

namespace monosynth
{

inline constexpr std::size_t default_locality_limit = 20;

class LocalityError : public std::runtime_error
{
public:
  LocalityError( std::string bit, std::size_t support, std::size_t limit );

  std::size_t support() const { return support_; }

private:
  std::size_t support_;
};

/*! \brief A Boolean function of a few input variables, kept as a truth table.

  Variables are row-major input offsets ((i-1)*N + (j-1)), sorted ascending.
  Entry `m` of the table is the value when support[b] takes bit b of m.
*/
struct SymbolicBit
{
  std::vector<int> support;
  std::vector<std::uint8_t> table;

  static SymbolicBit constant( bool value );
  static SymbolicBit variable( int var );

  bool is_constant() const { return support.empty(); }
  bool constant_value() const { return table.front() != 0; }

  /// `assignment` is indexed by variable number.
  bool evaluate( std::span<const std::uint8_t> assignment ) const;
};

SymbolicBit operator^( const SymbolicBit& a, const SymbolicBit& b );
SymbolicBit operator&( const SymbolicBit& a, const SymbolicBit& b );
SymbolicBit operator|( const SymbolicBit& a, const SymbolicBit& b );

/// Parity and majority of three bits; support is the union of the inputs'.
SymbolicBit parity3( const SymbolicBit& a, const SymbolicBit& b, const SymbolicBit& c );
SymbolicBit majority3( const SymbolicBit& a, const SymbolicBit& b, const SymbolicBit& c );

/// bits[e] is the coefficient of 2^e.
using SymbolicNumber = std::vector<SymbolicBit>;

/// Value of a symbolic number under an assignment; width must be below 64.
std::uint64_t evaluate_number( const SymbolicNumber& number, std::span<const std::uint8_t> assignment );

struct SumPair
{
  SymbolicNumber first;
  SymbolicNumber second;
};

/*! \brief Carry-save step: X + Y + Z = A + B with A the bitwise parity and B
  the bitwise majority shifted up one place. Outputs have width w + 1.

  Throws LocalityError when an output bit's support would exceed `limit`.
*/
SumPair three_to_two( const SymbolicNumber& x, const SymbolicNumber& y, const SymbolicNumber& z,
                      std::size_t limit = default_locality_limit );

/// Rows of a k x N input matrix as symbolic numbers of width N.
std::vector<SymbolicNumber> input_rows( int k, int N );

struct Reduction
{
  SymbolicNumber y;
  SymbolicNumber z;
  int rounds = 0;
};

/*! \brief Balanced carry-save reduction of the k rows to two numbers.

  Each round groups the pending numbers three at a time from the left and
  passes one or two leftovers through. k = 1 pairs the row with zero.
*/
Reduction reduce_to_two( int k, int N, std::size_t limit = default_locality_limit );

struct Depth3Report
{
  int rounds = 0;
  std::vector<std::size_t> y_support; ///< per weight 2^e
  std::vector<std::size_t> z_support;
  std::vector<std::size_t> generate_support;
  std::vector<std::size_t> propagate_support;
  std::uint64_t size = 0;
  int depth = 0;
};

/// OR of the DNFs of every y_e, z_e with e >= N (some high bit is set).
Circuit overflow_event_circuit( const Reduction& r, int k, int N );

/// OR over e < N of CNF(g_e) and CNF(p_i) for e < i < N (a carry reaches 2^N).
Circuit carry_event_circuit( const Reduction& r, int k, int N );

/*! \brief Depth-3 OR-AND-OR circuit for U_{k,N} with negations on literals.

  The two events share one top OR gate.
*/
Circuit synth_depth3( int k, int N, std::size_t limit = default_locality_limit, Depth3Report* report = nullptr );

/// Hard-wires rows d+1..k to zero; a circuit for U_{k,N} becomes one for U_{d,N}.
Circuit restrict_rows( const Circuit& circuit, int d );

} // namespace monosynth
