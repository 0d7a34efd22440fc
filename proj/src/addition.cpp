#include "monosynth/addition.hpp"

#include <cstdlib>
#include <string>

namespace monosynth
{

BigInt sum_of( const InputMatrix& x )
{
  BigInt total = 0;
  for ( int j = 1; j <= x.cols(); ++j )
  {
    unsigned column = 0;
    for ( int i = 1; i <= x.rows(); ++i )
    {
      column += x.at( i, j ) ? 1u : 0u;
    }
    total <<= 1;
    total += column;
  }
  return total;
}

BigInt power_of_two( int exponent )
{
  BigInt p = 1;
  p <<= exponent;
  return p;
}

bool addition_threshold( std::span<const std::uint8_t> bits, Dims dims )
{
  // Carry out of column j into column j-1 is floor((column sum + carry in) / 2);
  // the sum reaches 2^N exactly when a carry leaves column 1.
  std::uint64_t carry = 0;
  for ( int j = dims.cols; j >= 1; --j )
  {
    std::uint64_t column = carry;
    for ( int i = 0; i < dims.rows; ++i )
    {
      column += bits[static_cast<std::size_t>( i ) * dims.cols + ( j - 1 )];
    }
    carry = column >> 1;
  }
  return carry > 0;
}

bool addition_threshold( const InputMatrix& x )
{
  return sum_of( x ) >= power_of_two( x.cols() );
}

int enumeration_limit_from_env()
{
  if ( const char* value = std::getenv( "MONOSYNTH_ENUM_LIMIT" ) )
  {
    char* end = nullptr;
    const long parsed = std::strtol( value, &end, 10 );
    if ( end != value && *end == '\0' && parsed > 0 && parsed < 64 )
    {
      return static_cast<int>( parsed );
    }
  }
  return default_enumeration_bits;
}

EnumerationLimitError::EnumerationLimitError( int required, int limit )
    : std::runtime_error( "enumeration limit exceeded: need " + std::to_string( required ) + " input bits but the limit is " +
                          std::to_string( limit ) + " (set MONOSYNTH_ENUM_LIMIT=" + std::to_string( required ) + " to allow)" ),
      required_( required ), limit_( limit )
{
}

EquivalenceReport exhaustive_check( const Circuit& circuit, int k, int N, std::optional<int> limit_bits )
{
  const Dims dims{ k, N };
  if ( circuit.dims != dims )
  {
    throw CircuitError( "circuit is " + std::to_string( circuit.dims.rows ) + "x" + std::to_string( circuit.dims.cols ) +
                        ", expected " + std::to_string( k ) + "x" + std::to_string( N ) );
  }
  const int limit = limit_bits.value_or( enumeration_limit_from_env() );
  const int bits = dims.bits();
  if ( bits > limit || bits >= 63 )
  {
    throw EnumerationLimitError( bits, limit );
  }

  const Evaluator eval( circuit );
  EquivalenceReport report;
  report.inputs = std::uint64_t{ 1 } << bits;

  // Enumeration bit b sits at row-major offset slot[b].
  std::vector<std::size_t> slot;
  for ( int j = N; j >= 1; --j )
  {
    for ( int i = k; i >= 1; --i )
    {
      slot.push_back( bit_offset( dims, { i, j } ) );
    }
  }

  std::vector<std::uint8_t> x( static_cast<std::size_t>( bits ), 0 );
  std::vector<std::uint8_t> scratch;
  for ( std::uint64_t m = 0; m < report.inputs; ++m )
  {
    if ( m > 0 )
    {
      // Increment: flip the trailing ones and the lowest zero.
      for ( int b = 0; b < bits; ++b )
      {
        auto& bit = x[slot[static_cast<std::size_t>( b )]];
        bit ^= 1u;
        if ( bit )
        {
          break;
        }
      }
    }
    if ( eval.evaluate( x, scratch ) != addition_threshold( x, dims ) )
    {
      if ( report.counterexample_indices.size() < 10 )
      {
        report.counterexample_indices.push_back( m );
        report.counterexamples.push_back( InputMatrix::from_index( dims, m ) );
      }
      ++report.mismatches;
    }
  }
  return report;
}

} // namespace monosynth
