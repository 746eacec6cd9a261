#ifndef JCHNET_GENERATORS_HPP
#define JCHNET_GENERATORS_HPP

#include <cstdint>

#include "jchnet/graph.hpp"

namespace jchnet {

/// Circulant graph: each node linked to the z/2 nearest nodes on each side.
Graph ring_lattice(int n, int z);

/// G(n,p) with p = mean_degree/(n-1); every pair drawn independently.
Graph erdos_renyi(int n, double mean_degree, std::uint64_t seed);

/// Configuration model with degrees ~ k^-gamma on [k_min, k_cut],
/// k_cut = floor(min(sqrt(n), n^{1/(gamma-1)})) (structural cutoff).
/// Self-loops and multi-edges produced by the stub matching are erased.
Graph scale_free(int n, double gamma, int k_min, std::uint64_t seed);

/// Deterministic recursive Apollonian construction.
/// N_g = (3^g + 5)/2 nodes, 3(3^g + 1)/2 edges.
Graph apollonian(int generation);

/// Ring lattice with every original edge rewired with probability p:
/// the clockwise endpoint is reattached to a uniform random node,
/// resampling on self-loops and duplicates. Edge count is preserved.
Graph watts_strogatz(int n, int z, double p, std::uint64_t seed);

/// One of the generator families above, with its shape parameters bound.
/// `size` means node count, except for the Apollonian family where it is
/// the generation index.
struct FamilySpec {
  enum class Kind { ring, er, scale_free, apollonian, small_world };
  Kind kind = Kind::ring;
  int z = 4;               // ring, small_world
  double mean_degree = 4;  // er
  double gamma = 2.2;      // scale_free
  int k_min = 2;           // scale_free
  double p = 0.1;          // small_world

  bool deterministic() const {
    return kind == Kind::ring || kind == Kind::apollonian;
  }
};

Graph make_graph(const FamilySpec& family, int size, std::uint64_t seed);

/// Independent per-(stream) seed derivation, stable across runs and schedules.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace jchnet

#endif
