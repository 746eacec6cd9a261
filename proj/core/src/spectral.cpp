#include "jchnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "jchnet/errors.hpp"
#include "jchnet/util.hpp"

namespace jchnet {

namespace {

// Power iteration for the Perron root of A+I restricted to one component.
// Returns the component's largest adjacency eigenvalue (shift removed).
struct ComponentEig {
  double lambda;
  long iterations;
  double residual;
  bool converged;
};

ComponentEig component_power_iteration(const Graph& g,
                                       const std::vector<int>& nodes,
                                       double tol, long max_iter) {
  const std::size_t m = nodes.size();
  if (m == 1) return {0.0, 0, 0.0, true};

  std::vector<int> local(g.num_nodes(), -1);
  for (std::size_t i = 0; i < m; ++i) local[nodes[i]] = static_cast<int>(i);

  // Degree start vector: strictly positive on the component, hence never
  // orthogonal to the Perron vector.
  std::vector<double> v(m), w(m);
  double norm = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    v[i] = g.degree(nodes[i]);
    norm += v[i] * v[i];
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;

  double est_prev = 0.0, est = 0.0, residual = 0.0;
  for (long it = 1; it <= max_iter; ++it) {
    // w = (A + I) v on the component
    for (std::size_t i = 0; i < m; ++i) {
      double acc = v[i];
      for (int nb : g.neighbors(nodes[i])) acc += v[local[nb]];
      w[i] = acc;
    }
    est = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);  // Rayleigh
    residual = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      residual = std::max(residual, std::abs(w[i] - est * v[i]));
    if (it > 1 && std::abs(est - est_prev) < tol && residual < tol)
      return {est - 1.0, it, residual, true};
    est_prev = est;
    norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    for (std::size_t i = 0; i < m; ++i) v[i] = w[i] / norm;
  }
  return {est - 1.0, max_iter, residual, false};
}

}  // namespace

EigenResult max_eigenvalue(const Graph& g, double tol, long max_iter) {
  if (g.num_nodes() == 0) throw std::invalid_argument("empty graph");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  double best = 0.0, best_residual = 0.0;
  long total_iter = 0;
  bool all_converged = true;
  bool first = true;
  for (const auto& comp : connected_components(g)) {
    const ComponentEig r = component_power_iteration(g, comp, tol, max_iter);
    total_iter += r.iterations;
    all_converged = all_converged && r.converged;
    if (first || r.lambda > best) {
      best = r.lambda;
      best_residual = r.residual;
      first = false;
    }
  }
  if (!all_converged)
    throw iteration_limit_error("power iteration exceeded max_iter", best,
                                best_residual, total_iter);
  return {best, total_iter, best_residual};
}

double max_eigenvalue_dense(const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("empty graph");
  if (n > 2000) throw size_guard_error("dense eigensolver guard: n <= 2000");

  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) a[static_cast<std::size_t>(u) * n + v] = 1.0;

  auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * n + j];
  };

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += at(i, j) * at(i, j);
    return std::sqrt(2.0 * s);
  };

  // Cyclic Jacobi sweeps; rotations annihilate a_pq one pair at a time.
  bool converged = false;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_norm() < 1e-12) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = 0.5 * std::atan2(2.0 * apq, at(q, q) - at(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  double lam = at(0, 0);
  for (int i = 1; i < n; ++i) lam = std::max(lam, at(i, i));
  if (!converged)
    throw iteration_limit_error("Jacobi sweeps did not reach the off-norm target",
                                lam, off_norm(), 100);
  return lam;
}

bool spectral_bounds_check(const Graph& g, double lambda, double tol) {
  const DegreeStats s = degree_stats(g);
  const double lower =
      std::max({std::sqrt(double(s.k_max)), s.second_moment_ratio, s.mean_k});
  return lower <= lambda + tol && lambda <= s.k_max + tol;
}

ScalingResult fit_power_law(std::span<const double> sizes,
                            std::span<const double> means) {
  if (sizes.size() != means.size() || sizes.size() < 3)
    throw std::invalid_argument("power-law fit needs >= 3 (size, mean) points");
  const std::size_t m = sizes.size();
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(sizes[i] > 0.0) || !(means[i] > 0.0))
      throw std::invalid_argument("power-law fit needs positive data");
    lx[i] = std::log(sizes[i]);
    ly[i] = std::log(means[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0)
    throw std::invalid_argument("degenerate fit: zero variance in log N");
  const double a = sxy / sxx;
  const double b = my - a * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ly[i] - (a * lx[i] + b);
    ssr += r * r;
  }
  const double stderr_a = std::sqrt(ssr / double(m - 2) / sxx);

  ScalingResult out;
  out.sizes.assign(sizes.begin(), sizes.end());
  out.lambda_means.assign(means.begin(), means.end());
  out.lambda_stddevs.assign(m, 0.0);
  out.exponent = a;
  out.exponent_stderr = stderr_a;
  out.intercept = b;
  return out;
}

namespace {

// Lambda for one ensemble member; near-degenerate top pairs can hit the
// iteration limit, in which case the carried Rayleigh estimate is used.
double ensemble_lambda(const Graph& g) {
  try {
    return max_eigenvalue(g).lambda_max;
  } catch (const iteration_limit_error& e) {
    return e.best_estimate();
  }
}

}  // namespace

ScalingResult scaling_study(const FamilySpec& family, std::span<const int> sizes,
                            int realizations, std::uint64_t seed,
                            unsigned threads) {
  if (sizes.size() < 3) throw std::invalid_argument("need >= 3 sizes");
  if (realizations < 1) throw std::invalid_argument("need >= 1 realization");
  const int reps = family.deterministic() ? 1 : realizations;

  const std::size_t ns = sizes.size();
  std::vector<double> node_counts(ns);
  std::vector<double> means(ns), stds(ns);
  std::vector<std::vector<double>> values(ns, std::vector<double>(reps));

  parallel_for(ns * static_cast<std::size_t>(reps), threads, [&](std::size_t t) {
    const std::size_t si = t / reps;
    const std::size_t ri = t % reps;
    const Graph g = make_graph(family, sizes[si], derive_seed(seed, t));
    values[si][ri] = ensemble_lambda(g);
    if (ri == 0) node_counts[si] = g.num_nodes();
  });

  for (std::size_t si = 0; si < ns; ++si) {
    const auto& vs = values[si];
    const double mean = std::accumulate(vs.begin(), vs.end(), 0.0) / reps;
    double var = 0.0;
    for (double v : vs) var += (v - mean) * (v - mean);
    means[si] = mean;
    stds[si] = reps > 1 ? std::sqrt(var / (reps - 1)) : 0.0;
  }

  ScalingResult out = fit_power_law(node_counts, means);
  out.lambda_stddevs = stds;
  return out;
}

std::vector<LambdaCurvePoint> small_world_lambda_curve(
    int n, int z, std::span<const double> p_grid, int realizations,
    std::uint64_t seed, unsigned threads) {
  for (double p : p_grid)
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  if (realizations < 1) throw std::invalid_argument("need >= 1 realization");

  const std::size_t np = p_grid.size();
  std::vector<std::vector<double>> values(np, std::vector<double>(realizations));
  parallel_for(np * static_cast<std::size_t>(realizations), threads,
               [&](std::size_t t) {
                 const std::size_t pi = t / realizations;
                 const Graph g =
                     watts_strogatz(n, z, p_grid[pi], derive_seed(seed, t));
                 values[pi][t % realizations] = ensemble_lambda(g);
               });

  std::vector<LambdaCurvePoint> out(np);
  for (std::size_t pi = 0; pi < np; ++pi) {
    const auto& vs = values[pi];
    const double mean =
        std::accumulate(vs.begin(), vs.end(), 0.0) / realizations;
    double var = 0.0;
    for (double v : vs) var += (v - mean) * (v - mean);
    out[pi] = {p_grid[pi], mean,
               realizations > 1 ? std::sqrt(var / (realizations - 1)) : 0.0};
  }
  return out;
}

void write_scaling_csv(std::ostream& os, const ScalingResult& r) {
  os << "N,lambda_mean,lambda_std\n";
  for (std::size_t i = 0; i < r.sizes.size(); ++i)
    os << format_double(r.sizes[i]) << ',' << format_double(r.lambda_means[i])
       << ',' << format_double(r.lambda_stddevs[i]) << '\n';
}

void write_lambda_curve_csv(std::ostream& os,
                            const std::vector<LambdaCurvePoint>& pts) {
  os << "p,lambda_mean,lambda_std\n";
  for (const auto& pt : pts)
    os << format_double(pt.p) << ',' << format_double(pt.lambda_mean) << ','
       << format_double(pt.lambda_std) << '\n';
}

}  // namespace jchnet
