#include "pbands/lattice.hpp"

#include <cmath>
#include <string>

#include "pbands/errors.hpp"

namespace pbands {

PeriodVector::PeriodVector(std::vector<int> q) : q_(std::move(q)) {
  if (q_.size() < 2) {
    throw DomainError("period vector needs d >= 2 entries, got " + std::to_string(q_.size()));
  }
  for (int qi : q_) {
    if (qi < 1) throw DomainError("period entries must be >= 1, got " + std::to_string(qi));
    cell_size_ *= static_cast<std::size_t>(qi);
    all_even_ = all_even_ && (qi % 2 == 0);
  }
}

namespace {

// Folds one coordinate onto [0, 1/q).
double fold_coordinate(double t, int q) {
  const double period = 1.0 / q;
  if (t >= 0.0 && t < period) return t;
  const double r = t * q;
  double f = r - std::floor(r);
  double theta = f / q;
  if (!(theta < period) || theta < 0.0) theta = 0.0;
  return theta;
}

}  // namespace

Phase::Phase(std::vector<double> theta, const PeriodVector& q) : theta_(std::move(theta)) {
  if (theta_.size() != q.dim()) {
    throw DomainError("phase has " + std::to_string(theta_.size()) + " coordinates, period has " +
                      std::to_string(q.dim()));
  }
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    const double t = theta_[i];
    if (!std::isfinite(t) || t < 0.0 || !(t < 1.0 / q[i])) {
      throw DomainError("phase coordinate " + std::to_string(i + 1) + " = " + std::to_string(t) +
                        " outside [0, 1/" + std::to_string(q[i]) + ")");
    }
  }
}

Phase Phase::wrap(std::span<const double> theta, const PeriodVector& q) {
  if (theta.size() != q.dim()) {
    throw DomainError("phase has " + std::to_string(theta.size()) + " coordinates, period has " +
                      std::to_string(q.dim()));
  }
  std::vector<double> folded(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(theta[i])) throw DomainError("non-finite phase coordinate");
    folded[i] = fold_coordinate(theta[i], q[i]);
  }
  Phase p;
  p.theta_ = std::move(folded);
  return p;
}

Phase Phase::zero(const PeriodVector& q) {
  Phase p;
  p.theta_.assign(q.dim(), 0.0);
  return p;
}

std::vector<FourierIndex> enumerate_lambda(const PeriodVector& q) {
  std::vector<FourierIndex> out;
  out.reserve(q.cell_size());
  for (std::size_t k = 0; k < q.cell_size(); ++k) {
    out.push_back(FourierIndex{decode_site(k, q).n});
  }
  return out;
}

std::size_t encode_site(std::span<const int> n, const PeriodVector& q) {
  if (n.size() != q.dim()) throw DomainError("site dimension mismatch");
  std::size_t linear = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 0 || n[i] >= q[i]) throw DomainError("site coordinate out of the period cell");
    linear = linear * static_cast<std::size_t>(q[i]) + static_cast<std::size_t>(n[i]);
  }
  return linear;
}

SiteIndex decode_site(std::size_t linear, const PeriodVector& q) {
  if (linear >= q.cell_size()) throw DomainError("linear site index out of range");
  SiteIndex s;
  s.linear = linear;
  s.n.assign(q.dim(), 0);
  for (std::size_t i = q.dim(); i-- > 0;) {
    const auto qi = static_cast<std::size_t>(q[i]);
    s.n[i] = static_cast<int>(linear % qi);
    linear /= qi;
  }
  return s;
}

std::pair<Phase, FourierIndex> fold_phase(std::span<const double> x, const PeriodVector& q) {
  if (x.size() != q.dim()) throw DomainError("full-circle phase dimension mismatch");
  std::vector<double> theta(x.size());
  FourierIndex l{std::vector<int>(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    if (!std::isfinite(xi) || xi < 0.0 || xi >= 1.0) {
      throw DomainError("full-circle phase coordinate " + std::to_string(i + 1) + " = " +
                        std::to_string(xi) + " outside [0,1)");
    }
    const int qi = q[i];
    int li = static_cast<int>(std::floor(xi * qi));
    if (li > qi - 1) li = qi - 1;
    if (li < 0) li = 0;
    double ti = xi - static_cast<double>(li) / qi;
    // x*q can round across a multiple of 1/q; step the frequency back or forward.
    if (ti < 0.0 && li > 0) {
      --li;
      ti = xi - static_cast<double>(li) / qi;
    } else if (ti >= 1.0 / qi && li < qi - 1) {
      ++li;
      ti = xi - static_cast<double>(li) / qi;
    }
    if (ti < 0.0) ti = 0.0;
    if (!(ti < 1.0 / qi)) ti = std::nextafter(1.0 / qi, 0.0);
    theta[i] = ti;
    l.l[i] = li;
  }
  return {Phase(std::move(theta), q), std::move(l)};
}

double circle_distance(double t, int q) {
  const double r = t * q;
  return std::abs(r - std::nearbyint(r)) / q;
}

double torus_distance(const Phase& a, const Phase& b, const PeriodVector& q) {
  if (a.dim() != q.dim() || b.dim() != q.dim()) {
    throw DomainError("torus_distance: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const double d = circle_distance(a[i] - b[i], q[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace pbands
