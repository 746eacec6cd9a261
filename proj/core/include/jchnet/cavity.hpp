#ifndef JCHNET_CAVITY_HPP
#define JCHNET_CAVITY_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace jchnet {

/// Physical constants of a single cavity-atom system (hbar = 1).
/// All energies are expressed in the same units; beta > 0 sets the scale.
struct CavityParams {
  double omega;    // photon frequency
  double epsilon;  // atomic transition frequency
  double beta;     // atom-cavity coupling, > 0
  double mu;       // chemical potential

  double detuning() const noexcept { return epsilon - omega; }
};

enum class Branch { lower, upper };

struct DressedLevel {
  int n;
  std::optional<Branch> branch;  // empty for the n = 0 vacuum
  double energy;                 // grand-canonical E^mu
  std::optional<double> theta;   // mixing angle, empty for n = 0
};

/// Mixing angle theta_n in (0, pi/2), continuous in the detuning with
/// theta = pi/4 at zero detuning. tan(2 theta_n) = 2 beta sqrt(n) / Delta.
double mixing_angle(int n, const CavityParams& p);

/// Dressed-state energy E(n,±) = omega n + Delta/2 ± sqrt(n beta^2 + Delta^2/4),
/// with omega -> omega - mu when grand_canonical is set. n = 0 returns 0.
double dressed_energy(int n, std::optional<Branch> branch, const CavityParams& p,
                      bool grand_canonical);

/// omega/beta at which E(n,-) = E(n+1,-), n >= 1.
double degeneracy_point(int n, double delta, double beta);

/// Lowest polariton number n* in the grand-canonical ensemble:
/// argmin over {E_0 = 0} and {E^mu_(n-)}. Ties resolve to the smaller n.
int ground_state_occupation(const CavityParams& p);

/// Linear-response coefficient R_n of the lobe with occupation n.
/// Requires that n is the ground-state occupation at p.
double r_coefficient(int n, const CavityParams& p);

struct SpectrumRow {
  int n;
  Branch branch;
  double delta;
  double energy_rescaled;  // E(n,±) - n omega
};

/// Rescaled spectrum E(n,±) - n omega for n = 1..n_max over a detuning grid,
/// ordered by (n, branch, delta).
std::vector<SpectrumRow> anharmonic_spectrum(int n_max,
                                             std::span<const double> delta_grid,
                                             const CavityParams& p);

/// CSV with header `n,branch,delta,energy_rescaled`.
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows);

}  // namespace jchnet

#endif
