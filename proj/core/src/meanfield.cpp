#include "jchnet/meanfield.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "jchnet/errors.hpp"
#include "jchnet/util.hpp"

namespace jchnet {

namespace {

constexpr int kMaxTrunc = 96;
constexpr double kTopWeightLimit = 1e-8;

void check_config(const MeanFieldConfig& cfg) {
  if (cfg.n_trunc < 2) throw std::invalid_argument("n_trunc must be >= 2");
  if (!(cfg.damping > 0.0) || cfg.damping > 1.0)
    throw std::invalid_argument("damping must lie in (0, 1]");
  if (!(cfg.sf_threshold > cfg.tol_psi))
    throw std::invalid_argument("sf_threshold must exceed tol_psi");
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
}

void check_chemical_potential(const CavityParams& p) {
  if (!(p.omega - p.mu > 0.0))
    throw unbounded_occupation_error(
        "chemical potential reaches photon frequency; polariton number diverges");
}

CavityParams at_mu_rel(const CavityParams& p, double mu_rel) {
  CavityParams q = p;
  q.mu = p.omega + mu_rel * p.beta;
  return q;
}

// local_ground_state with the adaptive truncation ladder of the solvers:
// retry with doubled n_trunc up to the hard cap, then propagate.
LocalGroundState solve_local_adaptive(double eta, double kappa,
                                      const CavityParams& p, int& n_trunc) {
  for (;;) {
    try {
      return local_ground_state(eta, kappa, p, n_trunc);
    } catch (const truncation_error&) {
      if (n_trunc >= kMaxTrunc) throw;
      n_trunc = std::min(2 * n_trunc, kMaxTrunc);
    }
  }
}

}  // namespace

double critical_hopping(double mu_rel, const CavityParams& p, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const CavityParams q = at_mu_rel(p, mu_rel);
  check_chemical_potential(q);
  const int lobe = ground_state_occupation(q);
  const double r = r_coefficient(lobe, q);
  if (!(r > 0.0))
    throw degeneracy_error("non-positive linear response inside a lobe");
  return 1.0 / (lambda * r);
}

std::vector<CriticalLinePoint> critical_line(const CavityParams& p, double lambda,
                                             std::span<const double> mu_grid) {
  std::vector<CriticalLinePoint> out;
  out.reserve(mu_grid.size());
  for (double mu_rel : mu_grid) {
    const CavityParams q = at_mu_rel(p, mu_rel);
    check_chemical_potential(q);
    const int lobe = ground_state_occupation(q);
    try {
      const double kc = critical_hopping(mu_rel, p, lambda);
      out.push_back({mu_rel, lobe, kc * lambda / p.beta, false});
    } catch (const degeneracy_error&) {
      out.push_back({mu_rel, lobe, std::numeric_limits<double>::quiet_NaN(), true});
    }
  }
  return out;
}

LocalGroundState local_ground_state(double eta, double kappa,
                                    const CavityParams& p, int n_trunc) {
  if (n_trunc < 2) throw std::invalid_argument("n_trunc must be >= 2");
  if (eta < 0.0) throw std::invalid_argument("eta must be >= 0 (gauge choice)");
  if (!(p.beta > 0.0)) throw std::invalid_argument("beta must be positive");

  // Basis |n,s>, n = 0..n_trunc photons, s in {down, up}; index 2n + s.
  const int dim = 2 * (n_trunc + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const double field = kappa * eta;
  for (int n = 0; n <= n_trunc; ++n) {
    for (int s = 0; s <= 1; ++s)
      h(2 * n + s, 2 * n + s) = p.epsilon * s + p.omega * n - p.mu * (n + s);
    if (n < n_trunc) {
      const double root = std::sqrt(double(n + 1));
      // beta (sigma+ a + h.c.): |n+1,down> <-> |n,up>
      h(2 * n + 1, 2 * (n + 1)) += p.beta * root;
      h(2 * (n + 1), 2 * n + 1) += p.beta * root;
      // -kappa eta (a + a^dag)
      for (int s = 0; s <= 1; ++s) {
        h(2 * n + s, 2 * (n + 1) + s) -= field * root;
        h(2 * (n + 1) + s, 2 * n + s) -= field * root;
      }
    }
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("local eigensolve failed");
  const Eigen::VectorXd ground = es.eigenvectors().col(0);

  double top = 0.0;
  for (int s = 0; s <= 1; ++s) {
    top += ground(2 * n_trunc + s) * ground(2 * n_trunc + s);
    top += ground(2 * (n_trunc - 1) + s) * ground(2 * (n_trunc - 1) + s);
  }

  double psi = 0.0;
  for (int n = 0; n < n_trunc; ++n) {
    const double root = std::sqrt(double(n + 1));
    for (int s = 0; s <= 1; ++s)
      psi += root * ground(2 * n + s) * ground(2 * (n + 1) + s);
  }

  if (top > kTopWeightLimit)
    throw truncation_error("ground state reaches the photon-number cutoff; retry with larger n_trunc",
                           top, psi);
  return {psi, es.eigenvalues()(0), top};
}

PhasePoint uniform_self_consistent(double kappa_lambda, const CavityParams& p,
                                   const MeanFieldConfig& cfg) {
  check_config(cfg);
  check_chemical_potential(p);
  if (kappa_lambda < 0.0) throw std::invalid_argument("kappa_lambda must be >= 0");

  const double mu_rel = (p.mu - p.omega) / p.beta;
  const double kappa = kappa_lambda * p.beta;  // Lambda collapsed into kappa

  int n_trunc = cfg.n_trunc;
  double psi = cfg.psi_init;
  bool converged = false;
  for (int it = 0; it < cfg.max_iter; ++it) {
    double f;
    try {
      f = solve_local_adaptive(psi, kappa, p, n_trunc).psi_out;
    } catch (const truncation_error& e) {
      throw truncation_error(e.what(), e.top_weight(), psi);
    }
    const double next = (1.0 - cfg.damping) * psi + cfg.damping * f;
    const bool done = std::abs(next - psi) < cfg.tol_psi;
    psi = next;
    if (done) {
      converged = true;
      break;
    }
  }

  PhasePoint pt;
  pt.mu_rel = mu_rel;
  pt.kappa_lambda = kappa_lambda;
  pt.order_param = psi;
  pt.converged = converged;
  if (psi < cfg.sf_threshold) pt.mott_n = ground_state_occupation(p);
  return pt;
}

NetworkResult network_self_consistent(const Graph& g, double kappa,
                                      const CavityParams& p,
                                      const MeanFieldConfig& cfg,
                                      unsigned threads) {
  check_config(cfg);
  check_chemical_potential(p);
  if (g.num_nodes() == 0) throw std::invalid_argument("empty graph");

  const std::size_t n = static_cast<std::size_t>(g.num_nodes());
  std::vector<double> psi(n, cfg.psi_init), next(n, 0.0);
  std::vector<int> n_trunc(n, cfg.n_trunc);

  NetworkResult out;
  out.converged = false;
  out.iterations = 0;
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    // synchronous (Jacobi-style) update: every site sees the previous sweep
    parallel_for(n, threads, [&](std::size_t i) {
      double eta = 0.0;
      for (int nb : g.neighbors(static_cast<int>(i))) eta += psi[nb];
      double f;
      try {
        f = solve_local_adaptive(eta, kappa, p, n_trunc[i]).psi_out;
      } catch (const truncation_error& e) {
        throw truncation_error(e.what(), e.top_weight(), psi[i]);
      }
      next[i] = (1.0 - cfg.damping) * psi[i] + cfg.damping * f;
    });
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      delta = std::max(delta, std::abs(next[i] - psi[i]));
    psi.swap(next);
    if (delta < cfg.tol_psi) {
      out.converged = true;
      ++it;
      break;
    }
  }
  out.iterations = it;

  // ground-state energy: local terms plus the constant mean-field piece
  // kappa sum_ij tau_ij psi_i psi_j (absent from the psi iteration itself).
  double energy = 0.0;
  parallel_for(n, threads, [&](std::size_t i) {
    double eta = 0.0;
    for (int nb : g.neighbors(static_cast<int>(i))) eta += psi[nb];
    const LocalGroundState lgs = solve_local_adaptive(eta, kappa, p, n_trunc[i]);
    next[i] = lgs.energy;  // reuse as scratch
  });
  for (std::size_t i = 0; i < n; ++i) energy += next[i];
  for (const auto& [u, v] : g.edges()) energy += 2.0 * kappa * psi[u] * psi[v];

  out.energy = energy;
  out.superfluid =
      *std::max_element(psi.begin(), psi.end()) >= cfg.sf_threshold;
  out.psi = std::move(psi);
  return out;
}

PhaseDiagram phase_diagram(const CavityParams& p, double lambda,
                           std::span<const double> mu_grid,
                           std::span<const double> kappa_grid,
                           const MeanFieldConfig& cfg, unsigned threads) {
  check_config(cfg);
  if (mu_grid.empty() || kappa_grid.empty())
    throw std::invalid_argument("empty grid");
  for (double mu_rel : mu_grid) check_chemical_potential(at_mu_rel(p, mu_rel));

  PhaseDiagram d;
  d.mu_grid.assign(mu_grid.begin(), mu_grid.end());
  d.kappa_grid.assign(kappa_grid.begin(), kappa_grid.end());
  d.params = p;
  d.lambda = lambda;
  d.points.resize(mu_grid.size() * kappa_grid.size());

  parallel_for(d.points.size(), threads, [&](std::size_t t) {
    const double mu_rel = d.mu_grid[t / kappa_grid.size()];
    const double kl = d.kappa_grid[t % kappa_grid.size()];
    const CavityParams q = at_mu_rel(p, mu_rel);
    try {
      d.points[t] = uniform_self_consistent(kl, q, cfg);
    } catch (const truncation_error& e) {
      PhasePoint pt;
      pt.mu_rel = mu_rel;
      pt.kappa_lambda = kl;
      pt.order_param = e.psi();
      pt.converged = false;
      if (e.psi() < cfg.sf_threshold) pt.mott_n = ground_state_occupation(q);
      d.points[t] = pt;
    }
  });

  d.analytic = critical_line(p, lambda, mu_grid);
  return d;
}

bool tight_binding_instability(const CavityParams& p, double lambda,
                               double kappa) {
  return kappa * lambda > p.omega - p.mu;
}

void write_phase_diagram_csv(std::ostream& os, const PhaseDiagram& d) {
  os << "mu_rel,kappa_lambda,phase,order_param,mott_n,converged\n";
  for (const auto& pt : d.points) {
    os << format_double(pt.mu_rel) << ',' << format_double(pt.kappa_lambda)
       << ',' << (pt.mott_n ? "mott" : "superfluid") << ','
       << format_double(pt.order_param) << ',';
    if (pt.mott_n) os << *pt.mott_n;
    os << ',' << (pt.converged ? 1 : 0) << '\n';
  }
}

void write_critical_line_csv(std::ostream& os,
                             const std::vector<CriticalLinePoint>& line) {
  os << "mu_rel,mott_n,kappa_lambda_c,degenerate\n";
  for (const auto& pt : line) {
    os << format_double(pt.mu_rel) << ',' << pt.lobe << ',';
    if (!pt.degenerate) os << format_double(pt.kappa_lambda_c);
    os << ',' << (pt.degenerate ? 1 : 0) << '\n';
  }
}

}  // namespace jchnet
