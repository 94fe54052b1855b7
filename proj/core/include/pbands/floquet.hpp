#pragma once

// Fiber matrices of the periodic operator (H u)(n) = sum_{|m-n|=1} u(m) + V(n) u(n)
// restricted to one period cell with twisted boundary condition
// u(n + q_i b_i) = exp(2 pi i q_i theta_i) u(n).

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pbands/lattice.hpp"

namespace pbands {

class Potential {
 public:
  // Values are row-major over the period cell; throws DomainError on a
  // length mismatch or a non-finite entry.
  Potential(PeriodVector q, std::vector<double> values);

  static Potential zero(const PeriodVector& q);

  // {"q": [...], "values": [...]}. Throws ConfigError with the expected Q on
  // a length mismatch.
  static Potential from_json(std::string_view text);
  std::string to_json() const;

  const PeriodVector& period() const noexcept { return q_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double at(std::size_t linear) const { return values_[linear]; }
  double sup_norm() const noexcept { return sup_norm_; }

 private:
  PeriodVector q_;
  std::vector<double> values_;
  double sup_norm_ = 0.0;
};

struct FiberMatrix {
  PeriodVector q;
  Phase theta;
  Eigen::MatrixXcd entries;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

// Eigenvalues of one fiber, largest first.
struct EigenList {
  Phase theta;
  std::vector<double> values;
};

FiberMatrix assemble(const PeriodVector& q, const Potential& v, const Phase& theta);

// Precomputed bond list for repeated assembly of one (q, V) at many phases.
class FiberBuilder {
 public:
  explicit FiberBuilder(const Potential& v);

  const PeriodVector& period() const noexcept { return v_.period(); }
  FiberMatrix build(const Phase& theta) const;
  std::vector<double> eigenvalues(const Phase& theta) const;

 private:
  struct Bond {
    Eigen::Index from;
    Eigen::Index to;
    std::size_t direction;
    bool wraps;
  };

  Potential v_;
  std::vector<Bond> bonds_;
};

// All Q eigenvalues in non-increasing order. Throws ComputationError carrying
// theta if the solver does not converge.
EigenList eigenvalues_sorted_desc(const FiberMatrix& m);

// Shorthand for eigenvalues_sorted_desc(assemble(...)).values.
std::vector<double> fiber_eigenvalues(const PeriodVector& q, const Potential& v, const Phase& theta);

// Componentwise smallest p with p_i | q_i such that V is p-periodic.
PeriodVector minimal_period(const Potential& v);

}  // namespace pbands
