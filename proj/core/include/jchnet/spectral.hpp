#ifndef JCHNET_SPECTRAL_HPP
#define JCHNET_SPECTRAL_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "jchnet/generators.hpp"
#include "jchnet/graph.hpp"

namespace jchnet {

struct EigenResult {
  double lambda_max;
  long iterations;
  double residual;  // ||A v - lambda v||_inf at the returned vector
};

/// Largest adjacency eigenvalue via power iteration on A+I, run per
/// connected component from the normalized degree vector. The shift keeps
/// bipartite components from oscillating between ±Lambda.
EigenResult max_eigenvalue(const Graph& g, double tol = 1e-10,
                           long max_iter = 100000);

/// Dense oracle: cyclic Jacobi sweeps on the full adjacency matrix,
/// iterated until the off-diagonal norm drops below 1e-12. n <= 2000.
double max_eigenvalue_dense(const Graph& g);

/// max(sqrt(k_max), <k^2>/<k>, <k>) <= lambda <= k_max, within tol.
bool spectral_bounds_check(const Graph& g, double lambda, double tol = 1e-6);

struct ScalingResult {
  std::vector<double> sizes;  // node counts
  std::vector<double> lambda_means;
  std::vector<double> lambda_stddevs;
  double exponent;
  double exponent_stderr;
  double intercept;
};

/// Least-squares fit of log y = a log x + b; returns {a, stderr(a), b}.
/// Requires >= 3 points and non-degenerate x spread.
ScalingResult fit_power_law(std::span<const double> sizes,
                            std::span<const double> means);

/// Lambda(N) over a family: per size, mean/stddev over `realizations`
/// independently seeded graphs, then a log-log fit of the means.
/// Deterministic families ignore `realizations`.
ScalingResult scaling_study(const FamilySpec& family, std::span<const int> sizes,
                            int realizations, std::uint64_t seed,
                            unsigned threads = 1);

struct LambdaCurvePoint {
  double p;
  double lambda_mean;
  double lambda_std;
};

/// Mean/stddev of Lambda for Watts-Strogatz graphs across a rewiring grid.
std::vector<LambdaCurvePoint> small_world_lambda_curve(
    int n, int z, std::span<const double> p_grid, int realizations,
    std::uint64_t seed, unsigned threads = 1);

void write_scaling_csv(std::ostream& os, const ScalingResult& r);
void write_lambda_curve_csv(std::ostream& os,
                            const std::vector<LambdaCurvePoint>& pts);

}  // namespace jchnet

#endif
