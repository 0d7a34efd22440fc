#include "monosynth/distributions.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>

namespace monosynth
{

namespace
{

constexpr std::string_view family_names[] = { "YES", "NO", "YESP", "NOP", "YESSTAR", "NOSTAR" };

bool is_starred( Family f )
{
  return f == Family::YesStar || f == Family::NoStar;
}

void copy_block( const InputMatrix& from, InputMatrix& to, int row_offset, int col_offset )
{
  for ( int i = 1; i <= from.rows(); ++i )
  {
    for ( int j = 1; j <= from.cols(); ++j )
    {
      to.set( i + row_offset, j + col_offset, from.at( i, j ) );
    }
  }
}

void fill_block( InputMatrix& to, int rows, int first_col, int cols, bool value )
{
  for ( int i = 1; i <= rows; ++i )
  {
    for ( int j = first_col; j < first_col + cols; ++j )
    {
      to.set( i, j, value );
    }
  }
}

InputMatrix sample_yes1( int N1, Rng& rng )
{
  InputMatrix x( 2, N1 );
  const int R = static_cast<int>( rng.uniform( 1, static_cast<std::uint64_t>( N1 ) ) );
  for ( int j = 1; j < R; ++j )
  {
    const bool top = rng.bit();
    x.set( 1, j, top );
    x.set( 2, j, !top );
  }
  x.set( 1, R, true );
  x.set( 2, R, true );
  return x;
}

InputMatrix sample_no1( int N1, Rng& rng )
{
  InputMatrix x( 2, N1 );
  for ( int j = 1; j <= N1; ++j )
  {
    const bool top = rng.bit();
    x.set( 1, j, top );
    x.set( 2, j, !top );
  }
  return x;
}

InputMatrix sample_starred( int level, bool yes, const DistParams& p, Rng& rng )
{
  const int width = p.columns( level - 1 );
  InputMatrix x( level, p.star_columns( level ) );
  const int T = static_cast<int>( rng.uniform( 1, static_cast<std::uint64_t>( p.n ) ) );
  for ( int section = 1; section < T; ++section )
  {
    const bool from_no = rng.bit();
    const FamilyId part{ from_no ? Family::No : Family::YesPrime, level - 1 };
    copy_block( sample( part, p, rng ), x, 0, ( section - 1 ) * width );
  }
  const FamilyId middle{ yes ? Family::Yes : Family::NoPrime, level - 1 };
  copy_block( sample( middle, p, rng ), x, 0, ( T - 1 ) * width );
  fill_block( x, level, T * width + 1, ( p.n - T ) * width, !yes );
  return x;
}

} // namespace

std::string_view to_string( Family family )
{
  return family_names[static_cast<int>( family )];
}

Family family_from_string( std::string_view name )
{
  for ( int f = 0; f < static_cast<int>( std::size( family_names ) ); ++f )
  {
    if ( family_names[f] == name )
    {
      return static_cast<Family>( f );
    }
  }
  throw DistributionError( "unknown family '" + std::string( name ) + "' (expected YES, NO, YESP, NOP, YESSTAR or NOSTAR)" );
}

std::string to_string( FamilyId id )
{
  return std::string( to_string( id.family ) ) + "_" + std::to_string( id.level );
}

int DistParams::columns( int level ) const
{
  if ( level < 1 )
  {
    throw DistributionError( "level must be at least 1" );
  }
  long long cols = base_columns;
  for ( int l = 2; l <= level; ++l )
  {
    cols = static_cast<long long>( n ) * cols + 1;
    if ( cols > ( 1 << 24 ) )
    {
      throw DistributionError( "distribution too wide" );
    }
  }
  return static_cast<int>( cols );
}

int DistParams::star_columns( int level ) const
{
  if ( level < 2 )
  {
    throw DistributionError( "starred families need level >= 2" );
  }
  return columns( level ) - 1;
}

void check_family( FamilyId id, const DistParams& params )
{
  if ( params.n < 1 || params.base_columns < 1 )
  {
    throw DistributionError( "need n >= 1 and N1 >= 1" );
  }
  if ( id.level < 1 )
  {
    throw DistributionError( "level must be at least 1" );
  }
  if ( is_starred( id.family ) && id.level < 2 )
  {
    throw DistributionError( "starred families need level >= 2" );
  }
  if ( id.family == Family::No && id.level >= 2 )
  {
    // The last row holds l - 1 in N_l - 1 bits.
    const int room = params.columns( id.level ) - 1;
    if ( room < 63 && ( std::uint64_t{ 1 } << room ) <= static_cast<std::uint64_t>( id.level - 1 ) )
    {
      throw DistributionError( "N_l - 1 columns cannot hold the binary representation of l - 1" );
    }
  }
  (void)params.columns( id.level );
}

Dims family_dims( FamilyId id, const DistParams& params )
{
  check_family( id, params );
  if ( is_starred( id.family ) )
  {
    return { id.level, params.star_columns( id.level ) };
  }
  return { id.level + 1, params.columns( id.level ) };
}

InputMatrix sample( FamilyId id, const DistParams& params, Rng& rng )
{
  check_family( id, params );
  const int level = id.level;

  if ( level == 1 )
  {
    const int N1 = params.base_columns;
    switch ( id.family )
    {
    case Family::Yes:
      return sample_yes1( N1, rng );
    case Family::No:
    case Family::YesPrime:
      return sample_no1( N1, rng );
    case Family::NoPrime:
    {
      auto x = sample_yes1( N1, rng );
      for ( int i = 1; i <= 2; ++i )
      {
        for ( int j = 1; j <= N1; ++j )
        {
          x.set( i, j, !x.at( i, j ) );
        }
      }
      return x;
    }
    default:
      break;
    }
  }

  switch ( id.family )
  {
  case Family::YesStar:
    return sample_starred( level, true, params, rng );
  case Family::NoStar:
    return sample_starred( level, false, params, rng );
  default:
    break;
  }

  const bool yes_core = id.family == Family::Yes || id.family == Family::YesPrime;
  const auto z = sample_starred( level, yes_core, params, rng );
  const int cols = params.columns( level );
  InputMatrix x( level + 1, cols );
  copy_block( z, x, 0, 1 );
  const int last = level + 1;
  switch ( id.family )
  {
  case Family::YesPrime:
  case Family::NoPrime:
    for ( int j = 2; j <= cols; ++j )
    {
      x.set( last, j, true );
    }
    break;
  case Family::Yes:
    x.set( last, 1, true );
    break;
  case Family::No:
  {
    x.set( last, 1, true );
    // l - 1 in binary, least significant bit in column N_l.
    auto value = static_cast<std::uint64_t>( level - 1 );
    for ( int j = cols; j >= 2 && value != 0; --j, value >>= 1 )
    {
      x.set( last, j, ( value & 1u ) != 0 );
    }
    break;
  }
  default:
    break;
  }
  return x;
}

BigInt expected_sum( FamilyId id, const DistParams& params )
{
  check_family( id, params );
  const int l = id.level;
  switch ( id.family )
  {
  case Family::Yes:
    return power_of_two( params.columns( l ) );
  case Family::No:
  case Family::YesPrime:
    return power_of_two( params.columns( l ) ) - 1;
  case Family::NoPrime:
    return power_of_two( params.columns( l ) ) - ( l + 1 );
  case Family::YesStar:
    return power_of_two( params.star_columns( l ) );
  case Family::NoStar:
    return power_of_two( params.star_columns( l ) ) - l;
  }
  return 0;
}

std::string expected_sum_label( FamilyId id, const DistParams& params )
{
  check_family( id, params );
  const int l = id.level;
  const bool starred = is_starred( id.family );
  const int exponent = starred ? params.star_columns( l ) : params.columns( l );
  int offset = 0;
  switch ( id.family )
  {
  case Family::Yes:
  case Family::YesStar:
    offset = 0;
    break;
  case Family::No:
  case Family::YesPrime:
    offset = 1;
    break;
  case Family::NoPrime:
    offset = l + 1;
    break;
  case Family::NoStar:
    offset = l;
    break;
  }
  std::string label = "2^" + std::to_string( exponent );
  if ( offset != 0 )
  {
    label += " - " + std::to_string( offset );
  }
  return label;
}

nlohmann::ordered_json AdvantageEstimate::to_json() const
{
  nlohmann::ordered_json j;
  j["value"] = value;
  j["mode"] = mode == EstimateMode::Exact ? "exact" : "monte-carlo";
  j["samples"] = samples;
  j["stderr"] = stderr_;
  if ( mode == EstimateMode::Exact )
  {
    j["exact"] = exact;
  }
  if ( seed )
  {
    j["seed"] = *seed;
  }
  else
  {
    j["seed"] = nullptr;
  }
  return j;
}

AdvantageEstimate advantage_mc( const Circuit& circuit, FamilyId yes, FamilyId no, const DistParams& params,
                                std::uint64_t samples, std::uint64_t seed )
{
  if ( samples == 0 )
  {
    throw DistributionError( "advantage estimate needs at least one sample" );
  }
  const auto yes_dims = family_dims( yes, params );
  const auto no_dims = family_dims( no, params );
  if ( circuit.dims != yes_dims || circuit.dims != no_dims )
  {
    throw DistributionError( "circuit shape " + std::to_string( circuit.dims.rows ) + "x" + std::to_string( circuit.dims.cols ) +
                             " does not match the families (" + std::to_string( yes_dims.rows ) + "x" +
                             std::to_string( yes_dims.cols ) + ", " + std::to_string( no_dims.rows ) + "x" +
                             std::to_string( no_dims.cols ) + ")" );
  }

  const Evaluator eval( circuit );
  const Rng base( seed );
  std::vector<std::uint8_t> scratch;
  std::uint64_t yes_accepted = 0;
  std::uint64_t no_rejected = 0;
  for ( std::uint64_t i = 0; i < samples; ++i )
  {
    auto yes_rng = base.split( 2 * i );
    auto no_rng = base.split( 2 * i + 1 );
    yes_accepted += eval.evaluate( sample( yes, params, yes_rng ).bits(), scratch ) ? 1 : 0;
    no_rejected += eval.evaluate( sample( no, params, no_rng ).bits(), scratch ) ? 0 : 1;
  }

  const double s = static_cast<double>( samples );
  const double p_yes = static_cast<double>( yes_accepted ) / s;
  const double p_no = static_cast<double>( no_rejected ) / s;
  AdvantageEstimate est;
  est.value = p_yes + p_no;
  est.mode = EstimateMode::MonteCarlo;
  est.samples = samples;
  est.stderr_ = std::sqrt( p_yes * ( 1 - p_yes ) / s + p_no * ( 1 - p_no ) / s );
  est.seed = seed;
  return est;
}

AdvantageEstimate advantage_exact_level1( const Circuit& circuit, int base_columns, int limit )
{
  using Rational = boost::multiprecision::cpp_rational;
  const int N1 = base_columns;
  if ( N1 < 1 )
  {
    throw DistributionError( "N1 must be at least 1" );
  }
  if ( N1 > limit )
  {
    throw EnumerationLimitError( N1, limit );
  }
  if ( circuit.dims != Dims{ 2, N1 } )
  {
    throw DistributionError( "exact level-1 advantage needs a 2 x N1 circuit" );
  }
  const Evaluator eval( circuit );
  std::vector<std::uint8_t> scratch;

  // Column pattern bit j-1 set means column j is (1,0), else (0,1).
  auto fill = [&]( InputMatrix& x, std::uint64_t pattern, int columns ) {
    for ( int j = 1; j <= columns; ++j )
    {
      const bool top = ( ( pattern >> ( j - 1 ) ) & 1u ) != 0;
      x.set( 1, j, top );
      x.set( 2, j, !top );
    }
  };

  std::uint64_t no_rejected = 0;
  for ( std::uint64_t pattern = 0; pattern < ( std::uint64_t{ 1 } << N1 ); ++pattern )
  {
    InputMatrix x( 2, N1 );
    fill( x, pattern, N1 );
    no_rejected += eval.evaluate( x.bits(), scratch ) ? 0 : 1;
  }

  Rational yes_accepted = 0;
  for ( int R = 1; R <= N1; ++R )
  {
    std::uint64_t accepted = 0;
    const std::uint64_t prefixes = std::uint64_t{ 1 } << ( R - 1 );
    for ( std::uint64_t pattern = 0; pattern < prefixes; ++pattern )
    {
      InputMatrix x( 2, N1 );
      fill( x, pattern, R - 1 );
      x.set( 1, R, true );
      x.set( 2, R, true );
      accepted += eval.evaluate( x.bits(), scratch ) ? 1 : 0;
    }
    yes_accepted += Rational( BigInt( accepted ), BigInt( prefixes ) * N1 );
  }

  const Rational total = yes_accepted + Rational( BigInt( no_rejected ), power_of_two( N1 ) );
  AdvantageEstimate est;
  est.mode = EstimateMode::Exact;
  est.value = static_cast<double>( total );
  est.samples = 0;
  est.stderr_ = 0.0;
  std::ostringstream os;
  os << numerator( total ) << "/" << denominator( total );
  est.exact = os.str();
  return est;
}

namespace
{

Circuit reduce_frame( const Circuit& circuit, bool lemma23 )
{
  const int rows = circuit.dims.rows;
  const int cols = circuit.dims.cols;
  if ( rows < 2 || cols < 2 )
  {
    throw DistributionError( "reduction needs a circuit with at least 2 rows and 2 columns" );
  }
  Restriction rho;
  for ( int i = 1; i <= rows; ++i )
  {
    rho.assign( { i, 1 }, lemma23 && i == rows );
  }
  for ( int j = 2; j <= cols; ++j )
  {
    rho.assign( { rows, j }, !lemma23 );
  }
  return restrict( circuit, rho );
}

} // namespace

Circuit lemma22_reduce( const Circuit& circuit )
{
  return reduce_frame( circuit, false );
}

Circuit lemma23_reduce( const Circuit& circuit )
{
  return reduce_frame( circuit, true );
}

} // namespace monosynth
