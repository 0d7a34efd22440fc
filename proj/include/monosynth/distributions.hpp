#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "monosynth/addition.hpp"
#include "monosynth/circuit.hpp"
#include "monosynth/rng.hpp"

namespace monosynth
{

enum class Family
{
  Yes,
  No,
  YesPrime,
  NoPrime,
  YesStar,
  NoStar
};

std::string_view to_string( Family family );
/// Accepts YES, NO, YESP, NOP, YESSTAR, NOSTAR.
Family family_from_string( std::string_view name );

struct FamilyId
{
  Family family = Family::Yes;
  int level = 1;
};

std::string to_string( FamilyId id );

class DistributionError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Sections per level (n) and level-1 column count (N_1).
struct DistParams
{
  int n = 2;
  int base_columns = 3;

  /// N_1 = base_columns, N_l = n * N_{l-1} + 1.
  int columns( int level ) const;
  /// N*_l = n * N_{l-1} = N_l - 1, for l >= 2.
  int star_columns( int level ) const;
};

/// (l+1) x N_l for the unstarred families, l x N*_l for the starred ones.
Dims family_dims( FamilyId id, const DistParams& params );

/// Throws DistributionError when the family/level/params combination is undefined.
void check_family( FamilyId id, const DistParams& params );

/*! \brief One draw from the family.

  Randomness is consumed in this order: the uniform position (R for level 1,
  T for starred levels), then one bit per undetermined column or section left
  to right; a section's mixture bit precedes its own sub-draw. Unstarred
  level >= 2 families wrap one starred draw and consume nothing else.
*/
InputMatrix sample( FamilyId id, const DistParams& params, Rng& rng );

/// The exact SUM every draw of the family has.
BigInt expected_sum( FamilyId id, const DistParams& params );

/// "2^{N} - c" style label of expected_sum.
std::string expected_sum_label( FamilyId id, const DistParams& params );

enum class EstimateMode
{
  Exact,
  MonteCarlo
};

struct AdvantageEstimate
{
  double value = 0.0;
  EstimateMode mode = EstimateMode::MonteCarlo;
  std::uint64_t samples = 0;
  double stderr_ = 0.0;
  std::string exact; ///< "p/q", exact mode only
  std::optional<std::uint64_t> seed;

  nlohmann::ordered_json to_json() const;
};

/*! \brief Monte-Carlo estimate of Pr_yes[F = 1] + Pr_no[F = 0].

  Draw i of the YES side uses Rng(seed).split(2i), the NO side split(2i + 1),
  so two runs with the same seed see coupled draws.
*/
AdvantageEstimate advantage_mc( const Circuit& circuit, FamilyId yes, FamilyId no, const DistParams& params,
                                std::uint64_t samples, std::uint64_t seed );

inline constexpr int default_exact_level1_limit = 20;

/// Exact Pr_{YES_1}[F = 1] + Pr_{NO_1}[F = 0] for a circuit over 2 x N_1.
AdvantageEstimate advantage_exact_level1( const Circuit& circuit, int base_columns, int limit = default_exact_level1_limit );

/// Hard-wires column 1 to 0 and the rest of the last row to 1: (l+1) x N_l -> l x (N_l - 1).
Circuit lemma22_reduce( const Circuit& circuit );

/// Hard-wires x_{l+1,1} to 1 and the rest of column 1 and the last row to 0.
Circuit lemma23_reduce( const Circuit& circuit );

} // namespace monosynth
