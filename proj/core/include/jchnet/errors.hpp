#ifndef JCHNET_ERRORS_HPP
#define JCHNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jchnet {

// Chemical potential at or above the photon frequency: polariton number
// has no minimum and the grand-canonical ground state is undefined.
class unbounded_occupation_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A perturbative energy denominator vanished: the requested point sits on
// a lobe boundary where the linear-response expansion is invalid.
class degeneracy_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class size_guard_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ground state leaks onto the top photon levels of the truncated basis.
class truncation_error : public std::runtime_error {
 public:
  truncation_error(const std::string& msg, double top_weight, double psi)
      : std::runtime_error(msg), top_weight_(top_weight), psi_(psi) {}
  double top_weight() const noexcept { return top_weight_; }
  double psi() const noexcept { return psi_; }

 private:
  double top_weight_;
  double psi_;
};

class iteration_limit_error : public std::runtime_error {
 public:
  iteration_limit_error(const std::string& msg, double best_estimate,
                        double residual, long iterations)
      : std::runtime_error(msg),
        best_estimate_(best_estimate),
        residual_(residual),
        iterations_(iterations) {}
  double best_estimate() const noexcept { return best_estimate_; }
  double residual() const noexcept { return residual_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double best_estimate_;
  double residual_;
  long iterations_;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, long line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace jchnet

#endif
