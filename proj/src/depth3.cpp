#include "monosynth/depth3.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>

namespace monosynth
{

LocalityError::LocalityError( std::string bit, std::size_t support, std::size_t limit )
    : std::runtime_error( "locality limit exceeded: " + bit + " depends on " + std::to_string( support ) +
                          " input bits, limit is " + std::to_string( limit ) ),
      support_( support )
{
}

namespace
{

/// Truth-table composition of up to three symbolic bits.
template<std::size_t Arity, typename Fn>
SymbolicBit compose( const std::array<const SymbolicBit*, Arity>& args, Fn fn, std::size_t limit, const std::string& name )
{
  SymbolicBit out;
  for ( const auto* a : args )
  {
    out.support.insert( out.support.end(), a->support.begin(), a->support.end() );
  }
  std::sort( out.support.begin(), out.support.end() );
  out.support.erase( std::unique( out.support.begin(), out.support.end() ), out.support.end() );
  if ( out.support.size() > limit )
  {
    throw LocalityError( name, out.support.size(), limit );
  }

  // place[a][b]: position in the union of bit b of argument a.
  std::array<std::vector<int>, Arity> place;
  for ( std::size_t a = 0; a < Arity; ++a )
  {
    for ( const auto var : args[a]->support )
    {
      place[a].push_back( static_cast<int>( std::lower_bound( out.support.begin(), out.support.end(), var ) - out.support.begin() ) );
    }
  }

  const std::size_t entries = std::size_t{ 1 } << out.support.size();
  out.table.resize( entries );
  std::array<bool, Arity> values{};
  for ( std::size_t m = 0; m < entries; ++m )
  {
    for ( std::size_t a = 0; a < Arity; ++a )
    {
      std::size_t local = 0;
      for ( std::size_t b = 0; b < place[a].size(); ++b )
      {
        local |= ( ( m >> place[a][b] ) & 1u ) << b;
      }
      values[a] = args[a]->table[local] != 0;
    }
    out.table[m] = fn( values ) ? 1u : 0u;
  }
  return out;
}

SymbolicNumber widened( SymbolicNumber number, std::size_t width )
{
  number.resize( width, SymbolicBit::constant( false ) );
  return number;
}

Position position_of( int var, int N )
{
  return { var / N + 1, var % N + 1 };
}

/// Emits DNF/CNF expansions of symbolic bits into a shared builder.
class EventEmitter
{
public:
  EventEmitter( CircuitBuilder& builder, int N ) : builder_( builder ), N_( N ) {}

  /// Top-OR children whose disjunction is "some bit of weight >= 2^N is set".
  std::vector<GateId> overflow_terms( const Reduction& r )
  {
    std::vector<GateId> terms;
    for ( const auto* number : { &r.y, &r.z } )
    {
      for ( std::size_t e = static_cast<std::size_t>( N_ ); e < number->size(); ++e )
      {
        append_dnf( ( *number )[e], terms );
      }
    }
    return terms;
  }

  /// Top-OR children whose disjunction is "a carry enters the 2^N position".
  std::vector<GateId> carry_terms( const Reduction& r, std::size_t limit )
  {
    std::vector<SymbolicBit> generate, propagate;
    for ( int e = 0; e < N_; ++e )
    {
      generate.push_back( compose<2>( { &r.y[e], &r.z[e] }, []( auto v ) { return v[0] && v[1]; }, limit, "g_" + std::to_string( e ) ) );
      propagate.push_back( compose<2>( { &r.y[e], &r.z[e] }, []( auto v ) { return v[0] || v[1]; }, limit, "p_" + std::to_string( e ) ) );
    }

    std::vector<GateId> terms;
    for ( int j = 0; j < N_; ++j )
    {
      std::vector<GateId> clauses;
      bool unsatisfiable = !append_cnf( generate[static_cast<std::size_t>( j )], clauses );
      for ( int i = j + 1; i < N_ && !unsatisfiable; ++i )
      {
        unsatisfiable = !append_cnf( propagate[static_cast<std::size_t>( i )], clauses );
      }
      if ( unsatisfiable )
      {
        continue;
      }
      std::sort( clauses.begin(), clauses.end() );
      clauses.erase( std::unique( clauses.begin(), clauses.end() ), clauses.end() );
      terms.push_back( clauses.empty() ? builder_.constant( true ) : builder_.conjunction( std::move( clauses ) ) );
    }
    return terms;
  }

private:
  GateId literal( int var, bool negated ) { return builder_.literal( position_of( var, N_ ), negated ); }

  void append_dnf( const SymbolicBit& bit, std::vector<GateId>& terms )
  {
    if ( bit.is_constant() )
    {
      if ( bit.constant_value() )
      {
        terms.push_back( builder_.constant( true ) );
      }
      return;
    }
    for ( std::size_t m = 0; m < bit.table.size(); ++m )
    {
      if ( !bit.table[m] )
      {
        continue;
      }
      std::vector<GateId> lits;
      for ( std::size_t b = 0; b < bit.support.size(); ++b )
      {
        lits.push_back( literal( bit.support[b], ( ( m >> b ) & 1u ) == 0 ) );
      }
      terms.push_back( builder_.conjunction( std::move( lits ) ) );
    }
  }

  /// False when the bit is constant 0 (the conjunction it joins is unsatisfiable).
  bool append_cnf( const SymbolicBit& bit, std::vector<GateId>& clauses )
  {
    if ( bit.is_constant() )
    {
      return bit.constant_value();
    }
    for ( std::size_t m = 0; m < bit.table.size(); ++m )
    {
      if ( bit.table[m] )
      {
        continue;
      }
      // The clause excluding assignment m: each literal is false exactly at m.
      std::vector<int> codes;
      for ( std::size_t b = 0; b < bit.support.size(); ++b )
      {
        codes.push_back( bit.support[b] * 2 + ( ( ( m >> b ) & 1u ) ? 1 : 0 ) );
      }
      auto [it, inserted] = clauses_.try_emplace( codes, 0 );
      if ( inserted )
      {
        std::vector<GateId> lits;
        for ( const auto code : codes )
        {
          lits.push_back( literal( code / 2, ( code & 1 ) != 0 ) );
        }
        it->second = builder_.disjunction( std::move( lits ) );
      }
      clauses.push_back( it->second );
    }
    return true;
  }

  CircuitBuilder& builder_;
  int N_;
  std::map<std::vector<int>, GateId> clauses_;
};

} // namespace

// ---------------------------------------------------------------------------
// Symbolic bits
// ---------------------------------------------------------------------------

SymbolicBit SymbolicBit::constant( bool value )
{
  return { {}, { static_cast<std::uint8_t>( value ? 1u : 0u ) } };
}

SymbolicBit SymbolicBit::variable( int var )
{
  return { { var }, { 0u, 1u } };
}

bool SymbolicBit::evaluate( std::span<const std::uint8_t> assignment ) const
{
  std::size_t m = 0;
  for ( std::size_t b = 0; b < support.size(); ++b )
  {
    m |= static_cast<std::size_t>( assignment[static_cast<std::size_t>( support[b] )] & 1u ) << b;
  }
  return table[m] != 0;
}

SymbolicBit operator^( const SymbolicBit& a, const SymbolicBit& b )
{
  return compose<2>( { &a, &b }, []( auto v ) { return v[0] != v[1]; }, default_locality_limit, "xor" );
}

SymbolicBit operator&( const SymbolicBit& a, const SymbolicBit& b )
{
  return compose<2>( { &a, &b }, []( auto v ) { return v[0] && v[1]; }, default_locality_limit, "and" );
}

SymbolicBit operator|( const SymbolicBit& a, const SymbolicBit& b )
{
  return compose<2>( { &a, &b }, []( auto v ) { return v[0] || v[1]; }, default_locality_limit, "or" );
}

SymbolicBit parity3( const SymbolicBit& a, const SymbolicBit& b, const SymbolicBit& c )
{
  return compose<3>( { &a, &b, &c }, []( auto v ) { return ( v[0] != v[1] ) != v[2]; }, default_locality_limit, "parity" );
}

SymbolicBit majority3( const SymbolicBit& a, const SymbolicBit& b, const SymbolicBit& c )
{
  return compose<3>( { &a, &b, &c }, []( auto v ) { return ( v[0] + v[1] + v[2] ) >= 2; }, default_locality_limit, "majority" );
}

std::uint64_t evaluate_number( const SymbolicNumber& number, std::span<const std::uint8_t> assignment )
{
  std::uint64_t value = 0;
  for ( std::size_t e = 0; e < number.size(); ++e )
  {
    value |= static_cast<std::uint64_t>( number[e].evaluate( assignment ) ) << e;
  }
  return value;
}

// ---------------------------------------------------------------------------
// Carry-save reduction
// ---------------------------------------------------------------------------

SumPair three_to_two( const SymbolicNumber& x, const SymbolicNumber& y, const SymbolicNumber& z, std::size_t limit )
{
  if ( x.size() != y.size() || y.size() != z.size() )
  {
    throw std::invalid_argument( "three_to_two needs numbers of equal width" );
  }
  const std::size_t w = x.size();
  SumPair out;
  out.first.reserve( w + 1 );
  out.second.reserve( w + 1 );
  out.second.push_back( SymbolicBit::constant( false ) );
  for ( std::size_t e = 0; e < w; ++e )
  {
    const std::array<const SymbolicBit*, 3> args{ &x[e], &y[e], &z[e] };
    out.first.push_back( compose<3>( args, []( auto v ) { return ( v[0] != v[1] ) != v[2]; }, limit, "A_" + std::to_string( e ) ) );
    out.second.push_back( compose<3>( args, []( auto v ) { return ( v[0] + v[1] + v[2] ) >= 2; }, limit, "B_" + std::to_string( e + 1 ) ) );
  }
  out.first.push_back( SymbolicBit::constant( false ) );
  return out;
}

std::vector<SymbolicNumber> input_rows( int k, int N )
{
  std::vector<SymbolicNumber> rows;
  for ( int i = 1; i <= k; ++i )
  {
    SymbolicNumber row( static_cast<std::size_t>( N ) );
    for ( int j = 1; j <= N; ++j )
    {
      row[static_cast<std::size_t>( N - j )] = SymbolicBit::variable( ( i - 1 ) * N + ( j - 1 ) );
    }
    rows.push_back( std::move( row ) );
  }
  return rows;
}

Reduction reduce_to_two( int k, int N, std::size_t limit )
{
  if ( k < 1 || N < 1 )
  {
    throw std::invalid_argument( "reduce_to_two needs k >= 1 and N >= 1" );
  }
  auto pending = input_rows( k, N );
  if ( pending.size() == 1 )
  {
    pending.push_back( SymbolicNumber( static_cast<std::size_t>( N ), SymbolicBit::constant( false ) ) );
  }

  Reduction r;
  while ( pending.size() > 2 )
  {
    const std::size_t width = pending.front().size() + 1;
    std::vector<SymbolicNumber> next;
    std::size_t g = 0;
    for ( ; g + 3 <= pending.size(); g += 3 )
    {
      auto [a, b] = three_to_two( pending[g], pending[g + 1], pending[g + 2], limit );
      next.push_back( std::move( a ) );
      next.push_back( std::move( b ) );
    }
    for ( ; g < pending.size(); ++g )
    {
      next.push_back( widened( std::move( pending[g] ), width ) );
    }
    pending = std::move( next );
    ++r.rounds;
  }
  r.y = std::move( pending[0] );
  r.z = std::move( pending[1] );
  return r;
}

// ---------------------------------------------------------------------------
// Depth-3 circuit
// ---------------------------------------------------------------------------

namespace
{

GateId disjunction_or_false( CircuitBuilder& builder, std::vector<GateId> terms )
{
  return terms.empty() ? builder.constant( false ) : builder.disjunction( std::move( terms ) );
}

} // namespace

Circuit overflow_event_circuit( const Reduction& r, int k, int N )
{
  CircuitBuilder builder( { k, N }, false );
  EventEmitter emit( builder, N );
  const auto top = disjunction_or_false( builder, emit.overflow_terms( r ) );
  return std::move( builder ).finish( top );
}

Circuit carry_event_circuit( const Reduction& r, int k, int N )
{
  CircuitBuilder builder( { k, N }, false );
  EventEmitter emit( builder, N );
  const auto top = disjunction_or_false( builder, emit.carry_terms( r, default_locality_limit ) );
  return std::move( builder ).finish( top );
}

Circuit synth_depth3( int k, int N, std::size_t limit, Depth3Report* report )
{
  const auto r = reduce_to_two( k, N, limit );
  CircuitBuilder builder( { k, N }, false );
  EventEmitter emit( builder, N );
  auto terms = emit.overflow_terms( r );
  const auto carries = emit.carry_terms( r, limit );
  terms.insert( terms.end(), carries.begin(), carries.end() );
  const auto top = disjunction_or_false( builder, std::move( terms ) );
  Circuit circuit = std::move( builder ).finish( top );

  if ( report )
  {
    report->rounds = r.rounds;
    report->y_support.clear();
    report->z_support.clear();
    report->generate_support.clear();
    report->propagate_support.clear();
    for ( std::size_t e = 0; e < r.y.size(); ++e )
    {
      report->y_support.push_back( r.y[e].support.size() );
      report->z_support.push_back( r.z[e].support.size() );
      std::vector<int> both = r.y[e].support;
      both.insert( both.end(), r.z[e].support.begin(), r.z[e].support.end() );
      std::sort( both.begin(), both.end() );
      both.erase( std::unique( both.begin(), both.end() ), both.end() );
      if ( e < static_cast<std::size_t>( N ) )
      {
        report->generate_support.push_back( both.size() );
        report->propagate_support.push_back( both.size() );
      }
    }
    report->size = size( circuit );
    report->depth = depth( circuit );
  }
  return circuit;
}

Circuit restrict_rows( const Circuit& circuit, int d )
{
  if ( d < 1 || d > circuit.dims.rows )
  {
    throw std::invalid_argument( "restrict_rows needs 1 <= d <= k (d = " + std::to_string( d ) + ", k = " +
                                 std::to_string( circuit.dims.rows ) + ")" );
  }
  Restriction rho;
  for ( int i = d + 1; i <= circuit.dims.rows; ++i )
  {
    for ( int j = 1; j <= circuit.dims.cols; ++j )
    {
      rho.assign( { i, j }, false );
    }
  }
  return restrict( circuit, rho );
}

} // namespace monosynth
