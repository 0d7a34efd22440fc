#pragma once

#include <string>
#include <vector>

#include "monosynth/circuit.hpp"
#include "monosynth/majority.hpp"

namespace monosynth
{

/*! \brief Layered carry graph with layers numbered top (source s) down to 0 (sink t).

  Layer `top` and layer 0 hold one vertex each; every other layer holds k
  vertices, vertex a of layer g standing for "a carry of at least a leaves the
  g-th block counted from the least significant end". Edges only run from
  layer g to layer g - 1.
*/
class LayeredGraph
{
public:
  LayeredGraph( int top, int k );

  int top() const { return top_; }
  int k() const { return k_; }
  int layer_size( int layer ) const { return ( layer == top_ || layer == 0 ) ? 1 : k_; }

  bool edge( int layer, int from, int to ) const;
  void set_edge( int layer, int from, int to, bool present );
  std::size_t edge_count() const;

  bool operator==( const LayeredGraph& ) const = default;

private:
  std::size_t slot( int layer, int from, int to ) const;

  int top_;
  int k_;
  std::vector<char> edges_; ///< per layer, k x k (unused entries stay 0)
};

/*! \brief The carry graph of `x` for an l-block decomposition (l >= 2).

  With g counting blocks from the least significant end:
  s -> (l-1, j) iff block l, given incoming carry j, emits a carry >= 1;
  (g, a) -> (g-1, b) iff block g, given incoming carry b, emits a carry >= a;
  (1, j) -> t iff block 1 alone emits a carry >= j.
*/
LayeredGraph build_graph( const InputMatrix& x, const Decomposition& decomposition, int k );

/// Layer-by-layer sweep: is t reachable from s?
bool reaches( const LayeredGraph& graph );

/// One "layer from -> layer-1 to" line per edge; s and t are vertex 0 of their layers.
std::string to_edge_list( const LayeredGraph& graph );

/*! \brief Monotone circuit for U_{k,N}: carry threshold gates as edge
  indicators, then divide-and-conquer reachability with fan-in-2 AND gates and
  unbounded OR gates.
*/
Circuit synth_connectivity( int k, int N, int block_size );

} // namespace monosynth
