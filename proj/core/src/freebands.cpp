#include "pbands/freebands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pbands/errors.hpp"

namespace pbands {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double full_phase(const PeriodVector& q, const Phase& theta, const FourierIndex& l, std::size_t i) {
  return theta[i] + static_cast<double>(l.l[i]) / q[i];
}

void check_dims(const PeriodVector& q, const Phase& theta, const FourierIndex& l) {
  if (theta.dim() != q.dim() || l.l.size() != q.dim()) {
    throw DomainError("free level: dimension mismatch");
  }
}

}  // namespace

double free_level(const PeriodVector& q, const Phase& theta, const FourierIndex& l) {
  check_dims(q, theta, l);
  double e = 0.0;
  for (std::size_t i = 0; i < q.dim(); ++i) e += 2.0 * std::cos(kTwoPi * full_phase(q, theta, l, i));
  return e;
}

std::vector<double> free_gradient(const PeriodVector& q, const Phase& theta, const FourierIndex& l) {
  check_dims(q, theta, l);
  std::vector<double> g(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    g[i] = -2.0 * kTwoPi * std::sin(kTwoPi * full_phase(q, theta, l, i));
  }
  return g;
}

double second_order_coeff(const PeriodVector& q, const Phase& theta, const FourierIndex& l,
                          std::span<const double> beta) {
  check_dims(q, theta, l);
  if (beta.size() != q.dim()) throw DomainError("direction has the wrong dimension");
  double norm2 = 0.0;
  for (double b : beta) norm2 += b * b;
  if (std::abs(norm2 - 1.0) > 1e-9) {
    throw DomainError("direction must be a unit vector, |beta|^2 = " + std::to_string(norm2));
  }
  double c = 0.0;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    c += 2.0 * std::cos(kTwoPi * full_phase(q, theta, l, i)) * beta[i] * beta[i];
  }
  return -kTwoPi * kTwoPi * c;
}

std::vector<double> free_levels_sorted_desc(const PeriodVector& q, const Phase& theta) {
  if (theta.dim() != q.dim()) throw DomainError("free levels: dimension mismatch");
  // Levels are separable: precompute per-axis cosines, then sum over the
  // row-major frequency grid.
  std::vector<std::vector<double>> axis(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    axis[i].resize(static_cast<std::size_t>(q[i]));
    for (int li = 0; li < q[i]; ++li) {
      axis[i][static_cast<std::size_t>(li)] =
          2.0 * std::cos(kTwoPi * (theta[i] + static_cast<double>(li) / q[i]));
    }
  }
  std::vector<double> levels(q.cell_size());
  std::vector<int> idx(q.dim(), 0);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    double e = 0.0;
    for (std::size_t i = 0; i < q.dim(); ++i) e += axis[i][static_cast<std::size_t>(idx[i])];
    levels[k] = e;
    for (std::size_t i = q.dim(); i-- > 0;) {
      if (++idx[i] < q[i]) break;
      idx[i] = 0;
    }
  }
  std::sort(levels.begin(), levels.end(), std::greater<>());
  return levels;
}

std::vector<double> construct_theta_for_energy(std::size_t dim, double energy) {
  if (dim < 2) throw DomainError("construct_theta_for_energy needs d >= 2");
  const double bound = 2.0 * static_cast<double>(dim);
  if (!std::isfinite(energy) || std::abs(energy) >= bound) {
    throw DomainError("energy " + std::to_string(energy) + " outside (-2d, 2d)");
  }
  if (energy < 0.0) {
    // Shifting every coordinate by 1/2 negates all cosines and sines.
    std::vector<double> x = construct_theta_for_energy(dim, -energy);
    for (double& xi : x) xi = xi < 0.5 ? xi + 0.5 : xi - 0.5;
    return x;
  }

  const std::size_t half = dim / 2;
  std::vector<double> x(dim, 0.0);
  double cos_first = 0.0;
  if (dim % 2 == 0) {
    cos_first = energy / (4.0 * static_cast<double>(half));
  } else if (energy >= 2.0) {
    x[dim - 1] = 0.0;
    cos_first = (energy - 2.0) / (4.0 * static_cast<double>(half));
  } else {
    x[dim - 1] = 0.5;
    cos_first = (energy + 2.0) / (4.0 * static_cast<double>(half));
  }
  // acos lands in (0, pi), so the first half sits in (0, 1/2) with positive sine.
  const double first = std::acos(cos_first) / kTwoPi;
  for (std::size_t i = 0; i < half; ++i) {
    x[i] = first;
    x[half + i] = 1.0 - first;
  }
  return x;
}

WitnessResult interior_witness(const PeriodVector& q, double energy, const GridSpec& grid) {
  const double bound = 2.0 * static_cast<double>(q.dim());
  if (!std::isfinite(energy) || std::abs(energy) >= bound) {
    throw DomainError("witness energy " + std::to_string(energy) + " outside (-2d, 2d)");
  }
  const BandTable table = certified_edges(q, Potential::zero(q), grid);

  WitnessResult best;
  best.margin = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < table.band_count(); ++k) {
    const BandEdge& b = table.bands[k];
    const double margin = std::min(b.max_value - energy, energy - b.min_value);
    if (margin > best.margin) {
      best.margin = margin;
      best.band = k + 1;
      best.band_min = b.min_value;
      best.band_max = b.max_value;
      best.theta_below = b.argmin;
      best.theta_above = b.argmax;
    }
  }
  if (best.margin > kWitnessFloor) {
    best.outcome = WitnessOutcome::interior;
  } else if (energy == 0.0 && q.all_even()) {
    best.outcome = WitnessOutcome::touching_at_zero;
  } else {
    best.outcome = WitnessOutcome::not_found;
  }
  return best;
}

WitnessResult interior_witness(const PeriodVector& q, double energy) {
  return interior_witness(q, energy, GridSpec::uniform_default(q.dim()));
}

const char* to_string(WitnessOutcome outcome) noexcept {
  switch (outcome) {
    case WitnessOutcome::interior:
      return "interior";
    case WitnessOutcome::touching_at_zero:
      return "touching_at_zero";
    case WitnessOutcome::not_found:
      return "not_found";
  }
  return "unknown";
}

}  // namespace pbands
