#pragma once

// Index arithmetic for one period cell of Z^d: the period vector, site
// coordinates, the frequency set {l : 0 <= l_i < q_i} and the phase torus
// prod_i [0, 1/q_i).
//
// Every multi-index in this library is linearized row-major with the last
// axis fastest. Sites, frequencies, potential files and grid nodes all share
// that convention.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace pbands {

class PeriodVector {
 public:
  // Throws DomainError unless d >= 2 and every entry is >= 1.
  explicit PeriodVector(std::vector<int> q);
  PeriodVector(std::initializer_list<int> q) : PeriodVector(std::vector<int>(q)) {}

  std::size_t dim() const noexcept { return q_.size(); }
  int operator[](std::size_t i) const { return q_[i]; }
  const std::vector<int>& entries() const noexcept { return q_; }

  // Q = prod q_i, the number of sites in a period cell.
  std::size_t cell_size() const noexcept { return cell_size_; }
  bool all_even() const noexcept { return all_even_; }
  bool any_odd() const noexcept { return !all_even_; }

  friend bool operator==(const PeriodVector&, const PeriodVector&) = default;

 private:
  std::vector<int> q_;
  std::size_t cell_size_ = 1;
  bool all_even_ = true;
};

// A frequency l in {0..q_1-1} x ... x {0..q_d-1}.
struct FourierIndex {
  std::vector<int> l;

  friend bool operator==(const FourierIndex&, const FourierIndex&) = default;
  friend auto operator<=>(const FourierIndex&, const FourierIndex&) = default;
};

// A lattice site inside the period cell together with its row-major number.
struct SiteIndex {
  std::vector<int> n;
  std::size_t linear = 0;

  friend bool operator==(const SiteIndex&, const SiteIndex&) = default;
};

// A quasimomentum on the torus prod_i [0, 1/q_i).
class Phase {
 public:
  Phase() = default;

  // Validating constructor: every theta_i must already lie in [0, 1/q_i).
  Phase(std::vector<double> theta, const PeriodVector& q);

  // Folds arbitrary reals onto the torus coordinate by coordinate.
  static Phase wrap(std::span<const double> theta, const PeriodVector& q);

  // Zero phase of dimension q.dim().
  static Phase zero(const PeriodVector& q);

  std::size_t dim() const noexcept { return theta_.size(); }
  double operator[](std::size_t i) const { return theta_[i]; }
  const std::vector<double>& values() const noexcept { return theta_; }

  friend bool operator==(const Phase&, const Phase&) = default;

 private:
  std::vector<double> theta_;
};

// Row-major (last axis fastest) enumeration of all Q frequencies.
std::vector<FourierIndex> enumerate_lambda(const PeriodVector& q);

std::size_t encode_site(std::span<const int> n, const PeriodVector& q);
SiteIndex decode_site(std::size_t linear, const PeriodVector& q);

// Splits full-circle phases x_i in [0,1) into x_i = theta_i + l_i/q_i.
std::pair<Phase, FourierIndex> fold_phase(std::span<const double> x, const PeriodVector& q);

// dist(t, (1/q) Z) for a single coordinate.
double circle_distance(double t, int q);

// sqrt(sum_i dist(a_i - b_i, (1/q_i) Z)^2).
double torus_distance(const Phase& a, const Phase& b, const PeriodVector& q);

}  // namespace pbands
