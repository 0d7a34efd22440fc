#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "monosynth/circuit.hpp"
#include "monosynth/input_matrix.hpp"

namespace monosynth
{

using BigInt = boost::multiprecision::cpp_int;

/// Sum over columns j of 2^{N-j} times the number of ones in column j.
BigInt sum_of( const InputMatrix& x );

/// 2^exponent as an exact integer.
BigInt power_of_two( int exponent );

/// U_{k,N}: 1 iff the k rows, read as binary numbers, add up to at least 2^N.
bool addition_threshold( const InputMatrix& x );

/// Same predicate on a row-major bit array, via the carry chain (no big integers).
bool addition_threshold( std::span<const std::uint8_t> bits, Dims dims );

inline constexpr int default_enumeration_bits = 24;

/// MONOSYNTH_ENUM_LIMIT when set to a positive integer, else 24.
int enumeration_limit_from_env();

class EnumerationLimitError : public std::runtime_error
{
public:
  EnumerationLimitError( int required, int limit );

  int required() const { return required_; }
  int limit() const { return limit_; }

private:
  int required_;
  int limit_;
};

struct EquivalenceReport
{
  std::uint64_t inputs = 0;
  std::uint64_t mismatches = 0;
  /// At most ten, ascending by enumeration index.
  std::vector<std::uint64_t> counterexample_indices;
  std::vector<InputMatrix> counterexamples;

  bool equivalent() const { return mismatches == 0; }
};

/*! \brief Compares `circuit` with U_{k,N} on all 2^{kN} matrices.

  Matrices are visited in InputMatrix::from_index order. Throws
  EnumerationLimitError when k*N exceeds `limit_bits` (default: environment).
*/
EquivalenceReport exhaustive_check( const Circuit& circuit, int k, int N, std::optional<int> limit_bits = std::nullopt );

} // namespace monosynth
