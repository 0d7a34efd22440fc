#pragma once

#include <cstdint>
#include <random>

#include "monosynth/circuit.hpp"

namespace monosynth::test
{

inline Gate leaf( GateId id, GateKind kind, int i = 0, int j = 0 )
{
  Gate g;
  g.id = id;
  g.kind = kind;
  g.pos = { i, j };
  return g;
}

inline Gate thr( GateId id, std::uint64_t t, std::vector<Wire> children )
{
  Gate g;
  g.id = id;
  g.kind = GateKind::Thr;
  g.threshold = t;
  g.children = std::move( children );
  return g;
}

inline Gate node( GateId id, GateKind kind, std::vector<Wire> children )
{
  Gate g;
  g.id = id;
  g.kind = kind;
  g.children = std::move( children );
  return g;
}

/// Random monotone circuit of Thr/And/Or gates over `dims`.
inline Circuit random_monotone( Dims dims, int gates, std::uint64_t seed )
{
  std::mt19937_64 rng( seed );
  CircuitBuilder b( dims, true );
  std::vector<GateId> pool;
  for ( int i = 1; i <= dims.rows; ++i )
    for ( int j = 1; j <= dims.cols; ++j )
      pool.push_back( b.input( { i, j } ) );
  for ( int g = 0; g < gates; ++g )
  {
    const int fan = 2 + static_cast<int>( rng() % 3 );
    std::vector<Wire> ws;
    std::vector<GateId> ids;
    std::uint64_t total = 0;
    for ( int c = 0; c < fan; ++c )
    {
      const auto id = pool[rng() % pool.size()];
      const std::uint64_t m = 1 + rng() % 3;
      ws.push_back( { id, m } );
      ids.push_back( id );
      total += m;
    }
    switch ( rng() % 3 )
    {
    case 0:
      pool.push_back( b.threshold( 1 + rng() % total, ws ) );
      break;
    case 1:
      pool.push_back( b.conjunction( ids ) );
      break;
    default:
      pool.push_back( b.disjunction( ids ) );
      break;
    }
  }
  return std::move( b ).finish( pool.back() );
}

/// Random circuit that also uses negated literals.
inline Circuit random_mixed( Dims dims, int gates, std::uint64_t seed )
{
  std::mt19937_64 rng( seed );
  CircuitBuilder b( dims, false );
  std::vector<GateId> pool;
  for ( int i = 1; i <= dims.rows; ++i )
    for ( int j = 1; j <= dims.cols; ++j )
    {
      pool.push_back( b.literal( { i, j }, false ) );
      pool.push_back( b.literal( { i, j }, true ) );
    }
  for ( int g = 0; g < gates; ++g )
  {
    std::vector<GateId> ids;
    for ( int c = 0; c < 2 + static_cast<int>( rng() % 2 ); ++c )
      ids.push_back( pool[rng() % pool.size()] );
    pool.push_back( rng() % 2 ? b.conjunction( ids ) : b.disjunction( ids ) );
  }
  return std::move( b ).finish( pool.back() );
}

} // namespace monosynth::test
