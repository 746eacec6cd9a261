#include "jchnet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "jchnet/errors.hpp"

namespace jchnet {

namespace {

using Rng = std::mt19937_64;

int uniform_node(Rng& rng, int n) {
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over (seed, stream): independent streams per task.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Graph ring_lattice(int n, int z) {
  if (z < 2 || z % 2 != 0) throw std::invalid_argument("z must be even and >= 2");
  if (n <= z) throw std::invalid_argument("need n > z");
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int d = 1; d <= z / 2; ++d) g.add_edge(i, (i + d) % n);
  return g;
}

Graph erdos_renyi(int n, double mean_degree, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (!(mean_degree > 0.0) || mean_degree > n - 1)
    throw std::invalid_argument("mean degree must lie in (0, n-1]");
  Graph g(n);
  const double p = mean_degree / (n - 1);
  if (p >= 1.0) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }
  // Geometric skips over the lexicographic pair order: O(E) for sparse p.
  Rng rng(seed);
  std::geometric_distribution<long long> skip(p);
  const long long total = static_cast<long long>(n) * (n - 1) / 2;
  long long idx = skip(rng);
  long long u = 0, row_start = 0;  // row u covers [row_start, row_start + n-1-u)
  while (idx < total) {
    while (idx - row_start >= n - 1 - u) {
      row_start += n - 1 - u;
      ++u;
    }
    g.add_edge(static_cast<int>(u), static_cast<int>(u + 1 + (idx - row_start)));
    idx += 1 + skip(rng);
  }
  return g;
}

Graph scale_free(int n, double gamma, int k_min, std::uint64_t seed) {
  if (!(gamma > 2.0)) throw std::invalid_argument("gamma must exceed 2");
  if (k_min < 1) throw std::invalid_argument("k_min must be >= 1");
  const int k_cut = static_cast<int>(
      std::floor(std::min(std::sqrt(double(n)), std::pow(double(n), 1.0 / (gamma - 1.0)))));
  if (k_cut < k_min) throw std::invalid_argument("empty degree support: k_min exceeds the structural cutoff");

  // Inverse-CDF sampling of P(k) ~ k^-gamma on [k_min, k_cut].
  std::vector<double> cdf(static_cast<std::size_t>(k_cut - k_min + 1));
  double acc = 0.0;
  for (int k = k_min; k <= k_cut; ++k) {
    acc += std::pow(double(k), -gamma);
    cdf[static_cast<std::size_t>(k - k_min)] = acc;
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto draw = [&]() {
    const double u = uni(rng) * acc;
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    return k_min + static_cast<int>(it - cdf.begin());
  };

  std::vector<int> deg(static_cast<std::size_t>(n));
  long long sum = 0;
  for (auto& d : deg) {
    d = draw();
    sum += d;
  }
  if (sum % 2 != 0) {
    bool fixable = false;  // parity can only flip if the support holds both parities
    for (int k = k_min; k <= k_cut; ++k)
      if ((k - k_min) % 2 == 1) fixable = true;
    if (!fixable)
      throw std::invalid_argument("degree support cannot produce an even stub count");
    while (sum % 2 != 0) {
      const int d = draw();
      sum += d - deg[0];
      deg[0] = d;
    }
  }

  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(sum));
  for (int u = 0; u < n; ++u) stubs.insert(stubs.end(), deg[u], u);
  std::shuffle(stubs.begin(), stubs.end(), rng);

  Graph g(n);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
    g.add_edge(stubs[i], stubs[i + 1]);  // self-loops and repeats are dropped
  return g;
}

Graph apollonian(int generation) {
  if (generation < 0) throw std::invalid_argument("generation must be >= 0");
  if (generation > 12) throw size_guard_error("apollonian generation beyond size guard (12)");
  Graph g(static_cast<int>((std::pow(3.0, generation) + 5.0) / 2.0));
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  struct Face {
    int a, b, c;
  };
  std::vector<Face> faces{{0, 1, 2}};
  int next = 3;
  for (int gen = 0; gen < generation; ++gen) {
    std::vector<Face> children;
    children.reserve(3 * faces.size());
    for (const Face& f : faces) {
      const int d = next++;
      g.add_edge(f.a, d);
      g.add_edge(f.b, d);
      g.add_edge(f.c, d);
      children.push_back({f.a, f.b, d});
      children.push_back({f.a, f.c, d});
      children.push_back({f.b, f.c, d});
    }
    faces = std::move(children);
  }
  return g;
}

Graph watts_strogatz(int n, int z, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  Graph g = ring_lattice(n, z);
  if (p == 0.0) return g;
  Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  // Visit the original lattice edges in deterministic (i, d) order. The
  // counterclockwise endpoint i stays; the clockwise one is reattached.
  for (int i = 0; i < n; ++i) {
    for (int d = 1; d <= z / 2; ++d) {
      const int j = (i + d) % n;
      if (!g.has_edge(i, j)) continue;  // already rewired away
      if (uni(rng) >= p) continue;
      if (g.degree(i) == n - 1) continue;  // no free target exists
      for (;;) {
        const int w = uniform_node(rng, n);
        if (w == i || g.has_edge(i, w)) continue;
        g.remove_edge(i, j);
        g.add_edge(i, w);
        break;
      }
    }
  }
  return g;
}

Graph make_graph(const FamilySpec& family, int size, std::uint64_t seed) {
  switch (family.kind) {
    case FamilySpec::Kind::ring:
      return ring_lattice(size, family.z);
    case FamilySpec::Kind::er:
      return erdos_renyi(size, family.mean_degree, seed);
    case FamilySpec::Kind::scale_free:
      return scale_free(size, family.gamma, family.k_min, seed);
    case FamilySpec::Kind::apollonian:
      return apollonian(size);
    case FamilySpec::Kind::small_world:
      return watts_strogatz(size, family.z, family.p, seed);
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace jchnet
