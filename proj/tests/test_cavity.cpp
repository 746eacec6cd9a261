#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "jchnet/cavity.hpp"
#include "jchnet/errors.hpp"

using namespace jchnet;

namespace {

// Brute-force eigensolve of the symmetric 2x2 sector block via an explicit
// Jacobi rotation; independent of the closed-form energy expression.
struct TwoByTwo {
  double lower, upper;
};

TwoByTwo sector_block_eigenvalues(int n, double omega_eff, double epsilon_eff,
                                  double beta) {
  // basis {|n,down>, |n-1,up>}
  const double a = omega_eff * n;
  const double b = epsilon_eff + omega_eff * (n - 1);
  const double c = beta * std::sqrt(double(n));
  const double theta = 0.5 * std::atan2(2.0 * c, b - a);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double d1 = ct * ct * a - 2.0 * ct * st * c + st * st * b;
  const double d2 = st * st * a + 2.0 * ct * st * c + ct * ct * b;
  return {std::min(d1, d2), std::max(d1, d2)};
}

CavityParams params(double omega, double delta, double beta, double mu) {
  return {omega, omega + delta, beta, mu};
}

}  // namespace

TEST_CASE("mixing angle fixed points and limits") {
  CHECK(mixing_angle(1, params(1, 0, 1, 0)) == doctest::Approx(M_PI / 4).epsilon(1e-14));
  CHECK(mixing_angle(1, params(1, 2, 1, 0)) == doctest::Approx(M_PI / 8).epsilon(1e-14));
  CHECK(mixing_angle(3, params(1, 1e12, 1, 0)) == doctest::Approx(0.0).margin(1e-10));
  CHECK(mixing_angle(3, params(1, -1e12, 1, 0)) ==
        doctest::Approx(M_PI / 2).margin(1e-10));
  CHECK_THROWS_AS(mixing_angle(0, params(1, 0, 1, 0)), std::domain_error);
}

TEST_CASE("mixing angle is monotone decreasing in the detuning") {
  for (int n : {1, 2, 5}) {
    double prev = M_PI;
    for (double delta = -30.0; delta <= 30.0; delta += 0.25) {
      const double th = mixing_angle(n, params(1, delta, 1, 0));
      CHECK(th > 0.0);
      CHECK(th < M_PI / 2);
      CHECK(th < prev);
      prev = th;
    }
  }
}

TEST_CASE("mixing angle selects the lower-branch eigenvector") {
  // (n=4, Delta=-2, beta=1): |n,-> must satisfy H v = E(n,-) v in the sector
  // basis {|4,down>, |3,up>}.
  const CavityParams p = params(1.0, -2.0, 1.0, 0.0);
  const double th = mixing_angle(4, p);
  const double e_minus = dressed_energy(4, Branch::lower, p, false);
  const double a = p.omega * 4, b = p.epsilon + p.omega * 3,
               c = p.beta * std::sqrt(4.0);
  const double v0 = std::cos(th), v1 = -std::sin(th);
  CHECK(a * v0 + c * v1 == doctest::Approx(e_minus * v0).epsilon(1e-12));
  CHECK(c * v0 + b * v1 == doctest::Approx(e_minus * v1).epsilon(1e-12));
  const TwoByTwo ev = sector_block_eigenvalues(4, p.omega, p.epsilon, p.beta);
  CHECK(e_minus == doctest::Approx(ev.lower).epsilon(1e-13));
}

TEST_CASE("dressed energies match brute-force sector diagonalization") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> udelta(-10.0, 10.0);
  std::uniform_real_distribution<double> uomega(0.1, 5.0);
  std::uniform_real_distribution<double> umu(-2.0, 2.0);
  std::uniform_int_distribution<int> un(1, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = un(rng);
    const double omega = uomega(rng), mu = umu(rng), delta = udelta(rng);
    const CavityParams p = params(omega, delta, 1.0, mu);
    for (bool gc : {false, true}) {
      const double w = gc ? omega - mu : omega;
      const TwoByTwo ev = sector_block_eigenvalues(n, w, w + delta, p.beta);
      CHECK(std::abs(dressed_energy(n, Branch::lower, p, gc) - ev.lower) < 1e-12);
      CHECK(std::abs(dressed_energy(n, Branch::upper, p, gc) - ev.upper) < 1e-12);
    }
  }
}

TEST_CASE("dressed energy closed-form spot values") {
  CHECK(dressed_energy(1, Branch::lower, params(1, 0, 1, 0), false) ==
        doctest::Approx(0.0).margin(1e-15));
  CHECK(dressed_energy(0, std::nullopt, params(1, 0, 1, 0), true) == 0.0);
  // omega=2, delta=1, beta=1, mu=0.5, n=2 upper, grand-canonical
  CHECK(dressed_energy(2, Branch::upper, params(2, 1, 1, 0.5), true) ==
        doctest::Approx(5.0).epsilon(1e-14));
  CHECK_THROWS_AS(dressed_energy(0, Branch::lower, params(1, 0, 1, 0), false),
                  std::domain_error);
  CHECK_THROWS_AS(dressed_energy(2, std::nullopt, params(1, 0, 1, 0), false),
                  std::domain_error);
}

TEST_CASE("upper-lower splitting identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> udelta(-8.0, 8.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + int(rng() % 12);
    const double delta = udelta(rng);
    const CavityParams p = params(1.3, delta, 0.7, 0.2);
    const double gap = dressed_energy(n, Branch::upper, p, true) -
                       dressed_energy(n, Branch::lower, p, true);
    CHECK(gap == doctest::Approx(2.0 * std::sqrt(n * 0.49 + 0.25 * delta * delta))
                     .epsilon(1e-14));
  }
}

TEST_CASE("degeneracy points") {
  CHECK(degeneracy_point(1, 0.0, 1.0) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
  CHECK(degeneracy_point(1, 1e9, 1.0) == doctest::Approx(0.0).margin(1e-6));
  CHECK(degeneracy_point(3, 2.0, 1.0) ==
        doctest::Approx(std::sqrt(5.0) - 2.0).epsilon(1e-13));

  // E(3,-) = E(4,-) at the quoted omega (canonical, beta=1, Delta=2)
  const double w = degeneracy_point(3, 2.0, 1.0);
  const CavityParams p = params(w, 2.0, 1.0, 0.0);
  CHECK(dressed_energy(3, Branch::lower, p, false) ==
        doctest::Approx(dressed_energy(4, Branch::lower, p, false)).epsilon(1e-12));

  for (double delta : {0.3, 1.0, 2.7}) {
    for (int n : {1, 2, 6}) {
      CHECK(degeneracy_point(n, delta, 1.0) ==
            doctest::Approx(degeneracy_point(n, -delta, 1.0)).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(degeneracy_point(0, 0.0, 1.0), std::domain_error);
}

namespace {

// Exhaustive independent search over a wide n range using the brute-force
// sector eigenvalues.
int occupation_oracle(const CavityParams& p, int n_max = 4000) {
  int best = 0;
  double e_best = 0.0;
  const double w = p.omega - p.mu;
  for (int n = 1; n <= n_max; ++n) {
    const double e = sector_block_eigenvalues(n, w, w + p.detuning(), p.beta).lower;
    if (e < e_best) {
      e_best = e;
      best = n;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("ground-state occupation against enumeration oracle") {
  CHECK(ground_state_occupation(params(2.0, 0, 1, 0)) == 0);   // x = 2
  CHECK(ground_state_occupation(params(0.9, 0, 1, 0)) == 1);   // x = 0.9
  CHECK(ground_state_occupation(params(0.2, 0, 1, 0)) == 6);   // x = 0.2

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(0.05, 3.0);
  std::uniform_real_distribution<double> udelta(-4.0, 4.0);
  for (int trial = 0; trial < 300; ++trial) {
    const CavityParams p = params(ux(rng), udelta(rng), 1.0, 0.0);
    CHECK(ground_state_occupation(p) == occupation_oracle(p));
  }
  CHECK_THROWS_AS(ground_state_occupation(params(1.0, 0, 1, 1.0)),
                  unbounded_occupation_error);
  CHECK_THROWS_AS(ground_state_occupation(params(1.0, 0, 1, 2.0)),
                  unbounded_occupation_error);
}

TEST_CASE("ground-state occupation is non-increasing in (omega-mu)/beta") {
  for (double delta : {0.0, 1.5, -1.5}) {
    int prev = ground_state_occupation(params(0.05, delta, 1.0, 0.0));
    for (double x = 0.06; x < 3.0; x += 0.01) {
      const int n = ground_state_occupation(params(x, delta, 1.0, 0.0));
      CHECK(n <= prev);
      prev = n;
    }
  }
}

TEST_CASE("r coefficient closed-form values") {
  // x = 2, Delta = 0: theta_1 = pi/4, E_{1-+} = x -+ 1 -> 1/2 + 1/6 = 2/3
  CHECK(r_coefficient(0, params(2.0, 0, 1, 0)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // far into the vacuum lobe the response vanishes
  CHECK(r_coefficient(0, params(1e8, 0, 1, 0)) ==
        doctest::Approx(0.0).margin(1e-7));

  CHECK_THROWS_AS(r_coefficient(1, params(2.0, 0, 1, 0)), std::domain_error);
  CHECK_THROWS_AS(r_coefficient(0, params(0.9, 0, 1, 0)), std::domain_error);
}

TEST_CASE("r coefficient is positive inside the vacuum lobe") {
  for (double delta : {0.0, 0.8, -0.8}) {
    // lobe-0 floor in x depends on the detuning sign
    const double x0 = std::sqrt(1.0 + 0.25 * delta * delta) - 0.5 * delta;
    for (double x = x0 * 1.01; x < 6.0; x += 0.05) {
      const CavityParams p = params(x, delta, 1.0, 0.0);
      REQUIRE(ground_state_occupation(p) == 0);
      CHECK(r_coefficient(0, p) > 0.0);
    }
  }
}

TEST_CASE("r coefficient degeneracy guard at a lobe boundary") {
  // place x exactly on the 0/1 boundary at Delta=0: E_{1-} = 0
  const CavityParams p = params(1.0, 0, 1, 0);
  CHECK_THROWS_AS(r_coefficient(ground_state_occupation(p), p),
                  degeneracy_error);
}

TEST_CASE("anharmonic spectrum values and ordering") {
  const CavityParams p = params(1.0, 0, 1, 0);
  const std::vector<double> grid{-10.0, 0.0, 4.0, 10.0};
  const auto rows = anharmonic_spectrum(4, grid, p);
  REQUIRE(rows.size() == 2 * 4 * grid.size());

  // ordered by (n, branch, delta)
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto &a = rows[i - 1], &b = rows[i];
    const auto key = [](const SpectrumRow& r) {
      return std::tuple(r.n, r.branch == Branch::upper, r.delta);
    };
    CHECK(key(a) < key(b));
  }

  auto value = [&](int n, Branch br, double delta) {
    for (const auto& r : rows)
      if (r.n == n && r.branch == br && r.delta == delta) return r.energy_rescaled;
    REQUIRE(false);
    return 0.0;
  };
  CHECK(value(1, Branch::lower, 0.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(value(1, Branch::upper, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(value(4, Branch::lower, 0.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(value(4, Branch::upper, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(value(1, Branch::upper, 4.0) ==
        doctest::Approx(2.0 + std::sqrt(5.0)).epsilon(1e-14));
  CHECK(value(1, Branch::lower, 4.0) ==
        doctest::Approx(2.0 - std::sqrt(5.0)).epsilon(1e-13));

  CHECK_THROWS_AS(anharmonic_spectrum(0, grid, p), std::invalid_argument);
  CHECK_THROWS_AS(anharmonic_spectrum(2, std::vector<double>{}, p),
                  std::invalid_argument);
}

TEST_CASE("spectrum CSV shape") {
  const CavityParams p = params(1.0, 0, 1, 0);
  std::ostringstream os;
  write_spectrum_csv(os, anharmonic_spectrum(1, std::vector<double>{0.0}, p));
  CHECK(os.str() == "n,branch,delta,energy_rescaled\n1,-,0,-1\n1,+,0,1\n");
}
