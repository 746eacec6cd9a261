#ifndef JCHNET_MEANFIELD_HPP
#define JCHNET_MEANFIELD_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "jchnet/cavity.hpp"
#include "jchnet/graph.hpp"

namespace jchnet {

struct MeanFieldConfig {
  int n_trunc = 12;           // photon-number cutoff of the local basis
  double tol_psi = 1e-10;     // convergence threshold on the order parameter
  int max_iter = 10000;
  double damping = 0.5;       // mixing weight alpha in (0, 1]
  double psi_init = 0.1;      // finite kick; psi = 0 is always a fixed point
  double sf_threshold = 1e-6; // superfluid classification cut, >> tol_psi
};

struct PhasePoint {
  double mu_rel;        // (mu - omega)/beta
  double kappa_lambda;  // kappa Lambda / beta
  double order_param;   // converged psi >= 0
  std::optional<int> mott_n;  // present iff order_param < sf_threshold
  bool converged;
};

struct CriticalLinePoint {
  double mu_rel;
  int lobe;
  double kappa_lambda_c;
  bool degenerate;  // sits on a lobe boundary; kappa_lambda_c is NaN
};

struct PhaseDiagram {
  std::vector<double> mu_grid;
  std::vector<double> kappa_grid;            // kappa Lambda / beta values
  std::vector<PhasePoint> points;            // row-major: mu outer, kappa inner
  std::vector<CriticalLinePoint> analytic;   // perturbative boundary over mu_grid
  CavityParams params;
  double lambda;
};

/// Perturbative critical hopping kappa_c = 1/(lambda R_{n*}) at the lobe
/// selected by the grand-canonical ground state. mu_rel overrides p.mu.
double critical_hopping(double mu_rel, const CavityParams& p, double lambda);

/// kappa_c Lambda per grid point; lobe-boundary points are marked degenerate
/// instead of interpolated.
std::vector<CriticalLinePoint> critical_line(const CavityParams& p, double lambda,
                                             std::span<const double> mu_grid);

struct LocalGroundState {
  double psi_out;     // <a> in the local ground state
  double energy;      // local ground-state energy (no constant MF term)
  double top_weight;  // probability weight on the top two photon levels
};

/// Ground state of the local mean-field operator
///   eps s+s- + omega a^dag a + beta(s+ a + s- a^dag) - mu N - kappa eta (a + a^dag)
/// on the truncated basis {|n,s> : 0 <= n <= n_trunc}. Throws truncation_error
/// when the top-level weight exceeds 1e-8.
LocalGroundState local_ground_state(double eta, double kappa,
                                    const CavityParams& p, int n_trunc);

/// Uniform (Lambda-collapsed) self-consistency psi = F(psi) by damped fixed
/// point iteration; classifies the point as Mott or superfluid.
PhasePoint uniform_self_consistent(double kappa_lambda, const CavityParams& p,
                                   const MeanFieldConfig& cfg);

struct NetworkResult {
  std::vector<double> psi;
  bool superfluid;   // max_i psi_i >= sf_threshold
  bool converged;
  int iterations;
  double energy;     // sum of local energies + kappa sum_ij tau_ij psi_i psi_j
};

/// Site-resolved self-consistency psi_i = <a_i> with eta_i = sum_j tau_ij psi_j,
/// all sites updated synchronously per iteration.
NetworkResult network_self_consistent(const Graph& g, double kappa,
                                      const CavityParams& p,
                                      const MeanFieldConfig& cfg,
                                      unsigned threads = 1);

/// Grid sweep of uniform_self_consistent with the analytic boundary attached.
/// Per-point failures are flagged on the point, never fatal.
PhaseDiagram phase_diagram(const CavityParams& p, double lambda,
                           std::span<const double> mu_grid,
                           std::span<const double> kappa_grid,
                           const MeanFieldConfig& cfg, unsigned threads = 1);

/// Tight-binding instability kappa lambda > omega - mu (strict).
bool tight_binding_instability(const CavityParams& p, double lambda, double kappa);

void write_phase_diagram_csv(std::ostream& os, const PhaseDiagram& d);
void write_critical_line_csv(std::ostream& os,
                             const std::vector<CriticalLinePoint>& line);

}  // namespace jchnet

#endif
