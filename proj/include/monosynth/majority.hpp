#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "monosynth/addition.hpp"
#include "monosynth/circuit.hpp"

namespace monosynth
{

class SynthesisError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Consecutive column range [first, last], 1-based and inclusive.
struct Interval
{
  int first = 1;
  int last = 1;

  int size() const { return last - first + 1; }
  bool operator==( const Interval& ) const = default;
};

/// Ordered partition of [N] into consecutive intervals, most significant first.
class Decomposition
{
public:
  /// Throws SynthesisError unless the intervals tile [1, N] left to right.
  explicit Decomposition( std::vector<Interval> intervals );

  const std::vector<Interval>& intervals() const { return intervals_; }
  std::size_t block_count() const { return intervals_.size(); }
  int columns() const { return intervals_.back().last; }
  const Interval& block( std::size_t gamma ) const { return intervals_.at( gamma - 1 ); } ///< 1-based

  /// Equal-size blocks of width `block_size`; `block_size` must divide N.
  static Decomposition uniform( int N, int block_size );

private:
  std::vector<Interval> intervals_;
};

/// The n^level-decomposition of [n^s] into blocks of n^{s-level} columns.
Decomposition refine( int N, int n, int s, int level );

/// 2^bits >= value, i.e. bits >= log2(value), without floating point.
bool log2_at_most( std::uint64_t value, std::uint64_t bits );

/// Derived construction parameters for U_{k,N} at depth d.
struct SynthParams
{
  int k = 2;
  int N = 2;
  int d = 1;
  int n = 0;          ///< ceil(N^{1/d})
  int s = 0;          ///< smallest s with n^s >= N
  int t = 0;          ///< smallest t in [1,d] with n^t >= log2 k; 0 when none exists
  std::uint64_t M = 0; ///< n^t
  bool direct = false; ///< single-gate branch (k = 1, N < log2 k, or t >= s)

  static SynthParams derive( int k, int N, int d );
};

/*! \brief Arithmetic form of the block carry predicate.

  True iff sum over (i,j) in [k] x block of 2^{|block| - (j + 1 - first)} x_{i,j}
  plus `beta` is at least alpha * 2^{|block|}.
*/
bool carry_holds( const InputMatrix& x, Interval block, int k, int alpha, int beta );

/// Threshold realization of carry_holds: wire multiplicity 2^{last-j} on x_{i,j}.
GateId carry_gate( CircuitBuilder& builder, Interval block, int k, int alpha, int beta );

/// Child carry-gate ids for gamma in [1,n], alpha in [1,k-1], beta in [0,k-1].
class CarryGrid
{
public:
  CarryGrid( int n, int k );

  void set( int gamma, int alpha, int beta, GateId id );
  /// Throws SynthesisError when the slot was never filled.
  GateId at( int gamma, int alpha, int beta ) const;

  int blocks() const { return n_; }
  int k() const { return k_; }

private:
  std::size_t slot( int gamma, int alpha, int beta ) const;

  int n_;
  int k_;
  std::vector<std::optional<GateId>> ids_;
};

/*! \brief Carry bit of a merged block from the carry bits of its n sub-blocks.

  Wire multiplicity k^{n-gamma} on child (gamma, alpha, beta), threshold
  u * k^n - v. Equals carry_gate of the union block whenever every sub-block has
  at least log2 k columns.
*/
GateId combine_gate( CircuitBuilder& builder, int u, int v, const CarryGrid& children );

/// Monotone threshold circuit of depth <= d computing U_{k,N}.
Circuit synth_majority( const SynthParams& params );

/// The single threshold gate with weight 2^{N-j} on every x_{i,j} and threshold 2^N.
Circuit direct_threshold_circuit( int k, int N );

/// ceil(2^{6 (N^{1/d} log2 k + log2 N)}), exact.
BigInt theoretical_size_bound( int k, int N, int d );

struct SizeReport
{
  SynthParams params;
  std::uint64_t measured_size = 0;
  int measured_depth = 0;
  BigInt bound;
};

SizeReport size_report( const SynthParams& params, const Circuit& circuit );

} // namespace monosynth
