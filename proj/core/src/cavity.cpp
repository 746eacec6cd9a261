#include "jchnet/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "jchnet/errors.hpp"
#include "jchnet/util.hpp"

namespace jchnet {

namespace {

void check_params(const CavityParams& p) {
  if (!(p.beta > 0.0))
    throw std::invalid_argument("cavity coupling beta must be positive");
}

double rabi_split(int n, double beta, double delta) {
  return std::sqrt(n * beta * beta + 0.25 * delta * delta);
}

// E^mu_{n-} for n >= 1, E_0 = 0 for n = 0.
double lower_level(int n, double x, double beta, double delta) {
  if (n == 0) return 0.0;
  return x * n + 0.5 * delta - rabi_split(n, beta, delta);
}

}  // namespace

double mixing_angle(int n, const CavityParams& p) {
  check_params(p);
  if (n < 1)
    throw std::domain_error("mixing angle undefined for the vacuum state");
  // atan2 places 2*theta in (0, pi), which is the branch continuous in the
  // detuning with theta(0) = pi/4 and limits {pi/2, 0} at Delta -> {-inf, +inf}.
  return 0.5 * std::atan2(2.0 * p.beta * std::sqrt(double(n)), p.detuning());
}

double dressed_energy(int n, std::optional<Branch> branch, const CavityParams& p,
                      bool grand_canonical) {
  check_params(p);
  if (n < 0) throw std::domain_error("polariton number must be >= 0");
  if (n == 0) {
    if (branch)
      throw std::domain_error("the n = 0 vacuum carries no branch");
    return 0.0;
  }
  if (!branch)
    throw std::domain_error("branch required for n >= 1");
  const double w = grand_canonical ? p.omega - p.mu : p.omega;
  const double delta = p.detuning();
  const double split = rabi_split(n, p.beta, delta);
  return w * n + 0.5 * delta + (*branch == Branch::upper ? split : -split);
}

double degeneracy_point(int n, double delta, double beta) {
  if (n < 1) throw std::domain_error("degeneracy points are defined for n >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  const double q2 = 0.25 * (delta / beta) * (delta / beta);
  return std::sqrt(n + 1 + q2) - std::sqrt(n + q2);
}

int ground_state_occupation(const CavityParams& p) {
  check_params(p);
  const double x = p.omega - p.mu;
  if (!(x > 0.0))
    throw unbounded_occupation_error(
        "chemical potential reaches photon frequency; polariton number diverges");
  const double delta = p.detuning();
  const double ratio = p.beta / x;
  const double stop = std::ceil(ratio * ratio) + 2.0;

  int best = 0;
  double e_best = 0.0;  // E_0
  auto consider = [&](long n) {
    if (n < 1) return;
    const double e = lower_level(static_cast<int>(n), x, p.beta, delta);
    if (e < e_best) {  // strict: ties stay with the smaller n seen first
      e_best = e;
      best = static_cast<int>(n);
    }
  };

  if (stop <= 1e6) {
    const long n_stop = static_cast<long>(stop);
    for (long n = 1; n <= n_stop; ++n) consider(n);
  } else {
    // E^mu_{n-} is convex in n, so the integer minimizer brackets the
    // stationary point of x n - sqrt(n beta^2 + Delta^2/4).
    const double nc =
        p.beta * p.beta / (4.0 * x * x) - delta * delta / (4.0 * p.beta * p.beta);
    const long lo = static_cast<long>(std::floor(std::max(nc, 1.0)));
    for (long n = std::max(lo - 1, 1L); n <= lo + 2; ++n) consider(n);
  }
  return best;
}

double r_coefficient(int n, const CavityParams& p) {
  check_params(p);
  const double x = p.omega - p.mu;
  if (!(x > 0.0))
    throw unbounded_occupation_error(
        "chemical potential reaches photon frequency; polariton number diverges");
  if (n < 0) throw std::domain_error("lobe index must be >= 0");
  if (ground_state_occupation(p) != n)
    throw std::domain_error("R_n requested outside the n-lobe");

  const double delta = p.detuning();
  const double guard = 1e-12 * p.beta;
  auto checked_div = [&](double num, double den) {
    if (std::abs(den) < guard)
      throw degeneracy_error("vanishing energy denominator: point sits on a lobe boundary");
    return num / den;
  };

  auto level = [&](int m, Branch b) {
    return dressed_energy(m, b, p, /*grand_canonical=*/true);
  };

  if (n == 0) {
    const double t1 = mixing_angle(1, p);
    const double c = std::cos(t1), s = std::sin(t1);
    return checked_div(c * c, level(1, Branch::lower)) +
           checked_div(s * s, level(1, Branch::upper));
  }

  const double tn = mixing_angle(n, p);
  const double tp = mixing_angle(n + 1, p);
  const double cn = std::cos(tn), sn = std::sin(tn);
  const double cp = std::cos(tp), sp = std::sin(tp);
  const double rn = std::sqrt(double(n)), rp = std::sqrt(double(n + 1));

  const double en = lower_level(n, x, p.beta, delta);

  // <n,-|a|(n+1),±>
  const double up_minus = rp * cn * cp + rn * sn * sp;
  const double up_plus = rp * cn * sp - rn * sn * cp;

  double sum = checked_div(up_minus * up_minus, en - lower_level(n + 1, x, p.beta, delta)) +
               checked_div(up_plus * up_plus,
                           en - dressed_energy(n + 1, Branch::upper, p, true));

  if (n == 1) {
    // The n-1 = 0 sector holds only the vacuum: <0|a|1,-> = cos(theta_1).
    sum += checked_div(cn * cn, en /* - E_0 */);
  } else {
    const double tm = mixing_angle(n - 1, p);
    const double cm = std::cos(tm), sm = std::sin(tm);
    const double rm = std::sqrt(double(n - 1));
    const double dn_minus = rn * cn * cm + rm * sn * sm;
    const double dn_plus = rn * cn * sm - rm * sn * cm;
    sum += checked_div(dn_minus * dn_minus,
                       en - lower_level(n - 1, x, p.beta, delta)) +
           checked_div(dn_plus * dn_plus,
                       en - dressed_energy(n - 1, Branch::upper, p, true));
  }
  return -sum;
}

std::vector<SpectrumRow> anharmonic_spectrum(int n_max,
                                             std::span<const double> delta_grid,
                                             const CavityParams& p) {
  check_params(p);
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (delta_grid.empty()) throw std::invalid_argument("empty detuning grid");

  std::vector<double> deltas(delta_grid.begin(), delta_grid.end());
  std::sort(deltas.begin(), deltas.end());

  std::vector<SpectrumRow> rows;
  rows.reserve(2 * static_cast<std::size_t>(n_max) * deltas.size());
  for (int n = 1; n <= n_max; ++n) {
    for (Branch b : {Branch::lower, Branch::upper}) {
      for (double d : deltas) {
        CavityParams q = p;
        q.epsilon = q.omega + d;
        rows.push_back({n, b, d,
                        dressed_energy(n, b, q, false) - n * q.omega});
      }
    }
  }
  return rows;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
  os << "n,branch,delta,energy_rescaled\n";
  for (const auto& r : rows) {
    os << r.n << ',' << (r.branch == Branch::lower ? '-' : '+') << ','
       << format_double(r.delta) << ',' << format_double(r.energy_rescaled)
       << '\n';
  }
}

}  // namespace jchnet
