#pragma once

#include <cstdint>
#include <random>

namespace monosynth
{

/*! \brief Seeded, splittable random source with a fixed stream definition.

  Raw output is std::mt19937_64 seeded with the 64-bit seed. A bit is the top
  bit of one raw output. uniform(lo, hi) rejects raw outputs at or above the
  largest multiple of the range size and reduces the rest modulo that size.
  split(i) derives an independent stream from the seed and i with splitmix64,
  independent of how much of this stream has been consumed.
*/
class Rng
{
public:
  explicit Rng( std::uint64_t seed ) : seed_( seed ), engine_( seed ) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }
  bool bit() { return ( next() >> 63 ) != 0; }
  /// Uniform on [lo, hi]; requires lo <= hi.
  std::uint64_t uniform( std::uint64_t lo, std::uint64_t hi );

  Rng split( std::uint64_t index ) const;

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64( std::uint64_t x );

} // namespace monosynth
