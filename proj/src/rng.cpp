#include "monosynth/rng.hpp"

#include <limits>
#include <stdexcept>

namespace monosynth
{

std::uint64_t splitmix64( std::uint64_t x )
{
  x += 0x9e3779b97f4a7c15ull;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebull;
  return x ^ ( x >> 31 );
}

std::uint64_t Rng::uniform( std::uint64_t lo, std::uint64_t hi )
{
  if ( lo > hi )
  {
    throw std::invalid_argument( "Rng::uniform needs lo <= hi" );
  }
  const std::uint64_t span = hi - lo;
  if ( span == std::numeric_limits<std::uint64_t>::max() )
  {
    return next();
  }
  const std::uint64_t range = span + 1;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - ( ( max % range ) + 1 ) % range; // largest accepted value
  std::uint64_t v;
  do
  {
    v = next();
  } while ( v > limit );
  return lo + v % range;
}

Rng Rng::split( std::uint64_t index ) const
{
  return Rng( splitmix64( splitmix64( seed_ ) ^ splitmix64( index + 0x632be59bd9b4e019ull ) ) );
}

} // namespace monosynth
