#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "monosynth/input_matrix.hpp"

namespace monosynth
{

using GateId = std::int64_t;

enum class GateKind
{
  Const0,
  Const1,
  Input,
  PosLiteral,
  NegLiteral,
  Thr,
  And,
  Or
};

std::string_view to_string( GateKind kind );
GateKind gate_kind_from_string( std::string_view name );

/// Leaf kinds have no children: constants, inputs and literals.
inline bool is_leaf( GateKind kind )
{
  return kind != GateKind::Thr && kind != GateKind::And && kind != GateKind::Or;
}

inline bool reads_input( GateKind kind )
{
  return kind == GateKind::Input || kind == GateKind::PosLiteral || kind == GateKind::NegLiteral;
}

/// A child reference; `mult` parallel wires from the same child.
struct Wire
{
  GateId child = 0;
  std::uint64_t mult = 1;

  bool operator==( const Wire& ) const = default;
};

struct Gate
{
  GateId id = 0;
  GateKind kind = GateKind::Const0;
  std::uint64_t threshold = 0; ///< Thr only
  Position pos{};              ///< Input and literal kinds only
  std::vector<Wire> children;

  std::uint64_t fan_in() const;
  bool operator==( const Gate& ) const = default;
};

/*! \brief Gate-level circuit with a single output.

  Gates are stored in insertion order; ids need not be dense. Circuits built
  through CircuitBuilder have dense ids in topological order (children first).
*/
struct Circuit
{
  Dims dims{};
  bool monotone = true;
  GateId output = 0;
  std::vector<Gate> gates;

  /// nullptr when no gate carries `id`.
  const Gate* find( GateId id ) const;

  bool operator==( const Circuit& ) const = default;
};

class CircuitError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/*! \brief Appends gates with dense ids; children must already exist, so the
  result is acyclic by construction.

  Constants, inputs and literals are deduplicated. Repeated children of a
  Thr gate are merged into one wire with summed multiplicity.
*/
class CircuitBuilder
{
public:
  CircuitBuilder( Dims dims, bool monotone );

  GateId constant( bool value );
  GateId input( Position p );
  GateId literal( Position p, bool negated );
  GateId threshold( std::uint64_t t, std::vector<Wire> children );
  GateId conjunction( std::vector<GateId> children );
  GateId disjunction( std::vector<GateId> children );

  const Gate& gate( GateId id ) const { return gates_.at( static_cast<std::size_t>( id ) ); }
  std::size_t gate_count() const { return gates_.size(); }
  Dims dims() const { return dims_; }

  /// Drops gates that do not feed `output` and renumbers densely.
  Circuit finish( GateId output ) &&;

private:
  GateId push( Gate g );
  void check_child( GateId id ) const;
  void check_position( Position p ) const;

  Dims dims_;
  bool monotone_;
  std::vector<Gate> gates_;
  std::map<std::pair<int, Position>, GateId> leaves_;
};

/// Removes gates not on any path to the output; ids become dense, children first.
Circuit prune( const Circuit& circuit );

// ---------------------------------------------------------------------------
// Validation and measurement
// ---------------------------------------------------------------------------

enum class ViolationKind
{
  DuplicateId,
  MissingOutput,
  MissingChild,
  Cycle,
  LeafWithChildren,
  ZeroMultiplicity,
  IndexOutOfRange,
  ThresholdOutOfRange,
  NegationInMonotone,
  DeadGate
};

struct Violation
{
  ViolationKind kind;
  GateId gate;
  std::string message;
};

struct ValidationReport
{
  std::vector<Violation> violations;

  bool empty() const { return violations.empty(); }
  /// True when there is nothing except dead-gate notices.
  bool structurally_valid() const;
  std::string summary() const;
};

ValidationReport validate( const Circuit& circuit );

/// Total wire multiplicity over all non-leaf gates.
std::uint64_t size( const Circuit& circuit );

/// Maximum number of non-leaf gates on any leaf-to-output path.
int depth( const Circuit& circuit );

/// Like depth(), counting only gates whose kind is in `kinds`.
int depth_of_kinds( const Circuit& circuit, std::span<const GateKind> kinds );

/// Gate ids in an order where every child precedes its parents. Throws on cycles.
std::vector<std::size_t> topological_order( const Circuit& circuit );

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/*! \brief Flattened, read-only form of a circuit for repeated evaluation.

  Construction validates the circuit and throws CircuitError on structural
  violations. A const Evaluator may be shared between threads as long as
  each thread supplies its own scratch buffer.
*/
class Evaluator
{
public:
  explicit Evaluator( const Circuit& circuit );

  Dims dims() const { return dims_; }

  bool operator()( const InputMatrix& x ) const;

  /// `bits` is a row-major matrix as in InputMatrix::bits().
  bool evaluate( std::span<const std::uint8_t> bits, std::vector<std::uint8_t>& scratch ) const;

private:
  struct Node
  {
    GateKind kind;
    std::uint64_t threshold;
    std::uint32_t input;
    std::uint32_t begin;
    std::uint32_t end;
  };

  Dims dims_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> children_;
  std::vector<std::uint64_t> mults_;
};

bool evaluate( const Circuit& circuit, const InputMatrix& x );

// ---------------------------------------------------------------------------
// Restriction
// ---------------------------------------------------------------------------

/// Partial assignment of input positions to constants.
class Restriction
{
public:
  /// Throws CircuitError when `p` is already assigned.
  Restriction& assign( Position p, bool value );

  const std::map<Position, bool>& assignments() const { return assignments_; }
  bool contains( Position p ) const { return assignments_.count( p ) != 0; }

private:
  std::map<Position, bool> assignments_;
};

/*! \brief Rows and columns that survive a restriction, in original order.

  A row or column survives when at least one of its positions is unassigned.
  Restricted circuits read the sub-matrix formed by these rows and columns.
*/
struct Projection
{
  std::vector<int> rows;
  std::vector<int> cols;

  Dims dims() const { return { static_cast<int>( rows.size() ), static_cast<int>( cols.size() ) }; }
  InputMatrix apply( const InputMatrix& x ) const;
};

Projection projection_of( Dims dims, const Restriction& rho );

struct RestrictedCircuit
{
  Circuit circuit;
  Projection projection;
};

/// Hard-wires the assigned inputs, propagates constants and relabels the rest.
RestrictedCircuit restrict_with_projection( const Circuit& circuit, const Restriction& rho );

inline Circuit restrict( const Circuit& circuit, const Restriction& rho )
{
  return restrict_with_projection( circuit, rho ).circuit;
}

} // namespace monosynth
