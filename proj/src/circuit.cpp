#include "monosynth/circuit.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace monosynth
{

namespace
{

constexpr std::string_view kind_names[] = { "Const0", "Const1", "Input", "PosLiteral", "NegLiteral", "Thr", "And", "Or" };

std::unordered_map<GateId, std::size_t> index_by_id( const Circuit& c )
{
  std::unordered_map<GateId, std::size_t> index;
  index.reserve( c.gates.size() );
  for ( std::size_t g = 0; g < c.gates.size(); ++g )
  {
    index.emplace( c.gates[g].id, g );
  }
  return index;
}

std::uint64_t checked_add( std::uint64_t a, std::uint64_t b )
{
  if ( a > std::numeric_limits<std::uint64_t>::max() - b )
  {
    throw CircuitError( "wire multiplicity overflow" );
  }
  return a + b;
}

} // namespace

std::string_view to_string( GateKind kind )
{
  return kind_names[static_cast<int>( kind )];
}

GateKind gate_kind_from_string( std::string_view name )
{
  for ( int k = 0; k < static_cast<int>( std::size( kind_names ) ); ++k )
  {
    if ( kind_names[k] == name )
    {
      return static_cast<GateKind>( k );
    }
  }
  throw CircuitError( "unknown gate kind '" + std::string( name ) + "'" );
}

std::uint64_t Gate::fan_in() const
{
  std::uint64_t total = 0;
  for ( const auto& w : children )
  {
    total = checked_add( total, w.mult );
  }
  return total;
}

const Gate* Circuit::find( GateId id ) const
{
  if ( id >= 0 && static_cast<std::size_t>( id ) < gates.size() && gates[static_cast<std::size_t>( id )].id == id )
  {
    return &gates[static_cast<std::size_t>( id )];
  }
  const auto it = std::find_if( gates.begin(), gates.end(), [id]( const Gate& g ) { return g.id == id; } );
  return it == gates.end() ? nullptr : &*it;
}

// ---------------------------------------------------------------------------
// CircuitBuilder
// ---------------------------------------------------------------------------

CircuitBuilder::CircuitBuilder( Dims dims, bool monotone ) : dims_( dims ), monotone_( monotone ) {}

GateId CircuitBuilder::push( Gate g )
{
  g.id = static_cast<GateId>( gates_.size() );
  gates_.push_back( std::move( g ) );
  return gates_.back().id;
}

void CircuitBuilder::check_child( GateId id ) const
{
  if ( id < 0 || static_cast<std::size_t>( id ) >= gates_.size() )
  {
    throw CircuitError( "child gate " + std::to_string( id ) + " does not exist" );
  }
}

void CircuitBuilder::check_position( Position p ) const
{
  if ( p.row < 1 || p.row > dims_.rows || p.col < 1 || p.col > dims_.cols )
  {
    throw CircuitError( "input position (" + std::to_string( p.row ) + "," + std::to_string( p.col ) + ") out of range" );
  }
}

GateId CircuitBuilder::constant( bool value )
{
  const auto key = std::make_pair( value ? 1 : 0, Position{} );
  if ( const auto it = leaves_.find( key ); it != leaves_.end() )
  {
    return it->second;
  }
  Gate g;
  g.kind = value ? GateKind::Const1 : GateKind::Const0;
  const auto id = push( std::move( g ) );
  leaves_.emplace( key, id );
  return id;
}

GateId CircuitBuilder::input( Position p )
{
  check_position( p );
  const auto key = std::make_pair( 2, p );
  if ( const auto it = leaves_.find( key ); it != leaves_.end() )
  {
    return it->second;
  }
  Gate g;
  g.kind = GateKind::Input;
  g.pos = p;
  const auto id = push( std::move( g ) );
  leaves_.emplace( key, id );
  return id;
}

GateId CircuitBuilder::literal( Position p, bool negated )
{
  check_position( p );
  if ( negated && monotone_ )
  {
    throw CircuitError( "negated literal in a monotone circuit" );
  }
  const auto key = std::make_pair( negated ? 4 : 3, p );
  if ( const auto it = leaves_.find( key ); it != leaves_.end() )
  {
    return it->second;
  }
  Gate g;
  g.kind = negated ? GateKind::NegLiteral : GateKind::PosLiteral;
  g.pos = p;
  const auto id = push( std::move( g ) );
  leaves_.emplace( key, id );
  return id;
}

GateId CircuitBuilder::threshold( std::uint64_t t, std::vector<Wire> children )
{
  std::sort( children.begin(), children.end(), []( const Wire& a, const Wire& b ) { return a.child < b.child; } );
  std::vector<Wire> merged;
  merged.reserve( children.size() );
  for ( const auto& w : children )
  {
    check_child( w.child );
    if ( w.mult == 0 )
    {
      continue;
    }
    if ( !merged.empty() && merged.back().child == w.child )
    {
      merged.back().mult = checked_add( merged.back().mult, w.mult );
    }
    else
    {
      merged.push_back( w );
    }
  }
  Gate g;
  g.kind = GateKind::Thr;
  g.children = std::move( merged );
  // A threshold above fan-in + 1 is the same constant-0 function as fan-in + 1.
  const auto fan_in = g.fan_in();
  g.threshold = std::min( t, checked_add( fan_in, 1 ) );
  return push( std::move( g ) );
}

GateId CircuitBuilder::conjunction( std::vector<GateId> children )
{
  Gate g;
  g.kind = GateKind::And;
  for ( const auto c : children )
  {
    check_child( c );
    g.children.push_back( { c, 1 } );
  }
  return push( std::move( g ) );
}

GateId CircuitBuilder::disjunction( std::vector<GateId> children )
{
  Gate g;
  g.kind = GateKind::Or;
  for ( const auto c : children )
  {
    check_child( c );
    g.children.push_back( { c, 1 } );
  }
  return push( std::move( g ) );
}

Circuit CircuitBuilder::finish( GateId output ) &&
{
  check_child( output );
  Circuit c;
  c.dims = dims_;
  c.monotone = monotone_;
  c.output = output;
  c.gates = std::move( gates_ );
  return prune( c );
}

Circuit prune( const Circuit& circuit )
{
  const auto index = index_by_id( circuit );
  const auto order = topological_order( circuit );

  std::vector<char> live( circuit.gates.size(), 0 );
  const auto out = index.find( circuit.output );
  if ( out == index.end() )
  {
    throw CircuitError( "output gate " + std::to_string( circuit.output ) + " does not exist" );
  }
  live[out->second] = 1;
  for ( auto it = order.rbegin(); it != order.rend(); ++it )
  {
    if ( !live[*it] )
    {
      continue;
    }
    for ( const auto& w : circuit.gates[*it].children )
    {
      live[index.at( w.child )] = 1;
    }
  }

  Circuit result;
  result.dims = circuit.dims;
  result.monotone = circuit.monotone;
  std::unordered_map<GateId, GateId> renumber;
  for ( const auto g : order )
  {
    if ( !live[g] )
    {
      continue;
    }
    Gate copy = circuit.gates[g];
    copy.id = static_cast<GateId>( result.gates.size() );
    for ( auto& w : copy.children )
    {
      w.child = renumber.at( w.child );
    }
    renumber.emplace( circuit.gates[g].id, copy.id );
    result.gates.push_back( std::move( copy ) );
  }
  result.output = renumber.at( circuit.output );
  return result;
}

// ---------------------------------------------------------------------------
// Validation and measurement
// ---------------------------------------------------------------------------

std::vector<std::size_t> topological_order( const Circuit& circuit )
{
  const auto index = index_by_id( circuit );
  if ( index.size() != circuit.gates.size() )
  {
    throw CircuitError( "duplicate gate ids" );
  }

  enum : char { unvisited, active, done };
  std::vector<char> state( circuit.gates.size(), unvisited );
  std::vector<std::size_t> order;
  order.reserve( circuit.gates.size() );
  std::vector<std::pair<std::size_t, std::size_t>> stack;

  for ( std::size_t root = 0; root < circuit.gates.size(); ++root )
  {
    if ( state[root] != unvisited )
    {
      continue;
    }
    stack.emplace_back( root, 0 );
    state[root] = active;
    while ( !stack.empty() )
    {
      auto& [g, next] = stack.back();
      const auto& children = circuit.gates[g].children;
      if ( next < children.size() )
      {
        const auto it = index.find( children[next++].child );
        if ( it == index.end() )
        {
          throw CircuitError( "gate " + std::to_string( circuit.gates[g].id ) + " references a missing child" );
        }
        if ( state[it->second] == active )
        {
          throw CircuitError( "circuit contains a cycle through gate " + std::to_string( circuit.gates[it->second].id ) );
        }
        if ( state[it->second] == unvisited )
        {
          state[it->second] = active;
          stack.emplace_back( it->second, 0 );
        }
      }
      else
      {
        state[g] = done;
        order.push_back( g );
        stack.pop_back();
      }
    }
  }
  return order;
}

bool ValidationReport::structurally_valid() const
{
  return std::all_of( violations.begin(), violations.end(), []( const Violation& v ) { return v.kind == ViolationKind::DeadGate; } );
}

std::string ValidationReport::summary() const
{
  std::ostringstream os;
  for ( const auto& v : violations )
  {
    os << "gate " << v.gate << ": " << v.message << "\n";
  }
  return os.str();
}

ValidationReport validate( const Circuit& circuit )
{
  ValidationReport report;
  auto add = [&]( ViolationKind kind, GateId gate, std::string message ) {
    report.violations.push_back( { kind, gate, std::move( message ) } );
  };

  std::unordered_map<GateId, std::size_t> index;
  for ( std::size_t g = 0; g < circuit.gates.size(); ++g )
  {
    if ( !index.emplace( circuit.gates[g].id, g ).second )
    {
      add( ViolationKind::DuplicateId, circuit.gates[g].id, "duplicate gate id" );
    }
  }
  if ( index.count( circuit.output ) == 0 )
  {
    add( ViolationKind::MissingOutput, circuit.output, "output gate does not exist" );
  }

  bool children_ok = true;
  for ( const auto& g : circuit.gates )
  {
    if ( is_leaf( g.kind ) && !g.children.empty() )
    {
      add( ViolationKind::LeafWithChildren, g.id, std::string( to_string( g.kind ) ) + " gate must not have children" );
    }
    if ( reads_input( g.kind ) &&
         ( g.pos.row < 1 || g.pos.row > circuit.dims.rows || g.pos.col < 1 || g.pos.col > circuit.dims.cols ) )
    {
      add( ViolationKind::IndexOutOfRange, g.id,
           "input index (" + std::to_string( g.pos.row ) + "," + std::to_string( g.pos.col ) + ") out of range" );
    }
    if ( g.kind == GateKind::NegLiteral && circuit.monotone )
    {
      add( ViolationKind::NegationInMonotone, g.id, "negation in monotone circuit" );
    }
    std::uint64_t fan_in = 0;
    bool overflow = false;
    for ( const auto& w : g.children )
    {
      if ( index.count( w.child ) == 0 )
      {
        add( ViolationKind::MissingChild, g.id, "child " + std::to_string( w.child ) + " does not exist" );
        children_ok = false;
      }
      if ( w.mult == 0 )
      {
        add( ViolationKind::ZeroMultiplicity, g.id, "wire multiplicity must be positive" );
      }
      if ( fan_in > std::numeric_limits<std::uint64_t>::max() - w.mult )
      {
        overflow = true;
      }
      fan_in += w.mult;
    }
    if ( g.kind == GateKind::Thr && !overflow && g.threshold > fan_in + 1 )
    {
      add( ViolationKind::ThresholdOutOfRange, g.id,
           "threshold out of range (" + std::to_string( g.threshold ) + " > fan-in + 1 = " + std::to_string( fan_in + 1 ) + ")" );
    }
  }

  if ( !children_ok || index.size() != circuit.gates.size() )
  {
    return report;
  }

  try
  {
    const auto order = topological_order( circuit );
    if ( index.count( circuit.output ) )
    {
      std::vector<char> live( circuit.gates.size(), 0 );
      live[index.at( circuit.output )] = 1;
      for ( auto it = order.rbegin(); it != order.rend(); ++it )
      {
        if ( live[*it] )
        {
          for ( const auto& w : circuit.gates[*it].children )
          {
            live[index.at( w.child )] = 1;
          }
        }
      }
      for ( std::size_t g = 0; g < circuit.gates.size(); ++g )
      {
        if ( !live[g] )
        {
          add( ViolationKind::DeadGate, circuit.gates[g].id, "dead gate (not on any path to the output)" );
        }
      }
    }
  }
  catch ( const CircuitError& e )
  {
    add( ViolationKind::Cycle, circuit.output, e.what() );
  }
  return report;
}

std::uint64_t size( const Circuit& circuit )
{
  std::uint64_t total = 0;
  for ( const auto& g : circuit.gates )
  {
    if ( !is_leaf( g.kind ) )
    {
      total = checked_add( total, g.fan_in() );
    }
  }
  return total;
}

int depth_of_kinds( const Circuit& circuit, std::span<const GateKind> kinds )
{
  const auto index = index_by_id( circuit );
  const auto order = topological_order( circuit );
  std::vector<int> level( circuit.gates.size(), 0 );
  for ( const auto g : order )
  {
    const auto& gate = circuit.gates[g];
    int below = 0;
    for ( const auto& w : gate.children )
    {
      below = std::max( below, level[index.at( w.child )] );
    }
    const bool counted = std::find( kinds.begin(), kinds.end(), gate.kind ) != kinds.end();
    level[g] = below + ( counted ? 1 : 0 );
  }
  const auto out = index.find( circuit.output );
  if ( out == index.end() )
  {
    throw CircuitError( "output gate does not exist" );
  }
  return level[out->second];
}

int depth( const Circuit& circuit )
{
  static constexpr GateKind gate_kinds[] = { GateKind::Thr, GateKind::And, GateKind::Or };
  return depth_of_kinds( circuit, gate_kinds );
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

Evaluator::Evaluator( const Circuit& circuit ) : dims_( circuit.dims )
{
  const auto report = validate( circuit );
  if ( !report.structurally_valid() )
  {
    throw CircuitError( "invalid circuit:\n" + report.summary() );
  }

  // Only the output cone is evaluated; the output is the last node.
  const Circuit live = prune( circuit );
  nodes_.reserve( live.gates.size() );
  for ( const auto& g : live.gates )
  {
    Node node{ g.kind, g.threshold, 0, static_cast<std::uint32_t>( children_.size() ), 0 };
    if ( reads_input( g.kind ) )
    {
      node.input = static_cast<std::uint32_t>( bit_offset( dims_, g.pos ) );
    }
    for ( const auto& w : g.children )
    {
      children_.push_back( static_cast<std::uint32_t>( w.child ) );
      mults_.push_back( w.mult );
    }
    node.end = static_cast<std::uint32_t>( children_.size() );
    nodes_.push_back( node );
  }
}

bool Evaluator::evaluate( std::span<const std::uint8_t> bits, std::vector<std::uint8_t>& scratch ) const
{
  if ( bits.size() != static_cast<std::size_t>( dims_.bits() ) )
  {
    throw CircuitError( "input has " + std::to_string( bits.size() ) + " bits, circuit expects " + std::to_string( dims_.bits() ) );
  }
  scratch.resize( nodes_.size() );
  for ( std::size_t g = 0; g < nodes_.size(); ++g )
  {
    const auto& node = nodes_[g];
    std::uint8_t value = 0;
    switch ( node.kind )
    {
    case GateKind::Const0:
      value = 0;
      break;
    case GateKind::Const1:
      value = 1;
      break;
    case GateKind::Input:
    case GateKind::PosLiteral:
      value = bits[node.input];
      break;
    case GateKind::NegLiteral:
      value = bits[node.input] ^ 1u;
      break;
    case GateKind::Thr:
    {
      std::uint64_t count = 0;
      for ( auto c = node.begin; c < node.end; ++c )
      {
        count += scratch[children_[c]] ? mults_[c] : 0;
      }
      value = count >= node.threshold ? 1 : 0;
      break;
    }
    case GateKind::And:
      value = 1;
      for ( auto c = node.begin; c < node.end && value; ++c )
      {
        value = scratch[children_[c]];
      }
      break;
    case GateKind::Or:
      value = 0;
      for ( auto c = node.begin; c < node.end && !value; ++c )
      {
        value = scratch[children_[c]];
      }
      break;
    }
    scratch[g] = value;
  }
  return scratch.back() != 0;
}

bool Evaluator::operator()( const InputMatrix& x ) const
{
  if ( x.dims() != dims_ )
  {
    throw CircuitError( "input is " + std::to_string( x.rows() ) + "x" + std::to_string( x.cols() ) + ", circuit expects " +
                        std::to_string( dims_.rows ) + "x" + std::to_string( dims_.cols ) );
  }
  std::vector<std::uint8_t> scratch;
  return evaluate( x.bits(), scratch );
}

bool evaluate( const Circuit& circuit, const InputMatrix& x )
{
  return Evaluator( circuit )( x );
}

// ---------------------------------------------------------------------------
// Restriction
// ---------------------------------------------------------------------------

Restriction& Restriction::assign( Position p, bool value )
{
  if ( !assignments_.emplace( p, value ).second )
  {
    throw CircuitError( "position (" + std::to_string( p.row ) + "," + std::to_string( p.col ) + ") assigned twice" );
  }
  return *this;
}

InputMatrix Projection::apply( const InputMatrix& x ) const
{
  InputMatrix y( dims() );
  for ( std::size_t i = 0; i < rows.size(); ++i )
  {
    for ( std::size_t j = 0; j < cols.size(); ++j )
    {
      y.set( static_cast<int>( i + 1 ), static_cast<int>( j + 1 ), x.at( rows[i], cols[j] ) );
    }
  }
  return y;
}

Projection projection_of( Dims dims, const Restriction& rho )
{
  std::vector<int> free_in_row( static_cast<std::size_t>( dims.rows ) + 1, dims.cols );
  std::vector<int> free_in_col( static_cast<std::size_t>( dims.cols ) + 1, dims.rows );
  for ( const auto& [p, value] : rho.assignments() )
  {
    if ( p.row < 1 || p.row > dims.rows || p.col < 1 || p.col > dims.cols )
    {
      throw CircuitError( "restriction position (" + std::to_string( p.row ) + "," + std::to_string( p.col ) + ") out of range" );
    }
    --free_in_row[static_cast<std::size_t>( p.row )];
    --free_in_col[static_cast<std::size_t>( p.col )];
  }
  Projection proj;
  for ( int i = 1; i <= dims.rows; ++i )
  {
    if ( free_in_row[static_cast<std::size_t>( i )] > 0 )
    {
      proj.rows.push_back( i );
    }
  }
  for ( int j = 1; j <= dims.cols; ++j )
  {
    if ( free_in_col[static_cast<std::size_t>( j )] > 0 )
    {
      proj.cols.push_back( j );
    }
  }
  return proj;
}

RestrictedCircuit restrict_with_projection( const Circuit& circuit, const Restriction& rho )
{
  RestrictedCircuit result;
  result.projection = projection_of( circuit.dims, rho );

  std::vector<int> new_row( static_cast<std::size_t>( circuit.dims.rows ) + 1, 0 );
  std::vector<int> new_col( static_cast<std::size_t>( circuit.dims.cols ) + 1, 0 );
  for ( std::size_t i = 0; i < result.projection.rows.size(); ++i )
  {
    new_row[static_cast<std::size_t>( result.projection.rows[i] )] = static_cast<int>( i + 1 );
  }
  for ( std::size_t j = 0; j < result.projection.cols.size(); ++j )
  {
    new_col[static_cast<std::size_t>( result.projection.cols[j] )] = static_cast<int>( j + 1 );
  }

  const auto index = index_by_id( circuit );
  const auto order = topological_order( circuit );
  CircuitBuilder builder( result.projection.dims(), circuit.monotone );

  // Each original gate maps to either a constant or a gate of the new circuit.
  enum class State : char { False, True, Gate };
  std::vector<State> state( circuit.gates.size(), State::False );
  std::vector<GateId> mapped( circuit.gates.size(), -1 );

  for ( const auto g : order )
  {
    const auto& gate = circuit.gates[g];
    auto set_const = [&]( bool v ) { state[g] = v ? State::True : State::False; };
    auto set_gate = [&]( GateId id ) {
      state[g] = State::Gate;
      mapped[g] = id;
    };

    switch ( gate.kind )
    {
    case GateKind::Const0:
      set_const( false );
      break;
    case GateKind::Const1:
      set_const( true );
      break;
    case GateKind::Input:
    case GateKind::PosLiteral:
    case GateKind::NegLiteral:
    {
      const auto it = rho.assignments().find( gate.pos );
      const bool negated = gate.kind == GateKind::NegLiteral;
      if ( it != rho.assignments().end() )
      {
        set_const( it->second != negated );
        break;
      }
      const Position p{ new_row.at( static_cast<std::size_t>( gate.pos.row ) ), new_col.at( static_cast<std::size_t>( gate.pos.col ) ) };
      set_gate( gate.kind == GateKind::Input ? builder.input( p ) : builder.literal( p, negated ) );
      break;
    }
    case GateKind::Thr:
    {
      std::uint64_t satisfied = 0;
      std::uint64_t open = 0;
      std::vector<Wire> wires;
      for ( const auto& w : gate.children )
      {
        const auto c = index.at( w.child );
        if ( state[c] == State::True )
        {
          satisfied += w.mult;
        }
        else if ( state[c] == State::Gate )
        {
          open += w.mult;
          wires.push_back( { mapped[c], w.mult } );
        }
      }
      if ( gate.threshold <= satisfied )
      {
        set_const( true );
      }
      else if ( gate.threshold - satisfied > open )
      {
        set_const( false );
      }
      else
      {
        set_gate( builder.threshold( gate.threshold - satisfied, std::move( wires ) ) );
      }
      break;
    }
    case GateKind::And:
    case GateKind::Or:
    {
      // And absorbs on 0, Or on 1.
      const bool absorbing = gate.kind == GateKind::Or;
      bool absorbed = false;
      std::vector<GateId> open;
      for ( const auto& w : gate.children )
      {
        const auto c = index.at( w.child );
        if ( state[c] == State::Gate )
        {
          open.push_back( mapped[c] );
        }
        else if ( ( state[c] == State::True ) == absorbing )
        {
          absorbed = true;
        }
      }
      if ( absorbed )
      {
        set_const( absorbing );
      }
      else if ( open.empty() )
      {
        set_const( !absorbing );
      }
      else
      {
        set_gate( gate.kind == GateKind::And ? builder.conjunction( std::move( open ) ) : builder.disjunction( std::move( open ) ) );
      }
      break;
    }
    }
  }

  const auto out = index.at( circuit.output );
  const GateId output = state[out] == State::Gate ? mapped[out] : builder.constant( state[out] == State::True );
  result.circuit = std::move( builder ).finish( output );
  return result;
}

} // namespace monosynth
