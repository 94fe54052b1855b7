#pragma once

// Band extrema over the phase torus, their certification radius, band
// overlaps and the spectrum as a union of closed intervals.
//
// Certification rests on a Lipschitz bound: every sorted eigenvalue E^k is
// Lipschitz in theta_i with constant L_i (Weyl's inequality applied to the
// twisted bonds), so a uniform grid with spacing h_i misses no extremum by
// more than slack = sum_i L_i h_i / 2. Sampled extrema are attained values;
// sampled max is therefore a lower bound and sampled max + slack an upper
// bound on the true band maximum (symmetrically for the minimum).

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "pbands/floquet.hpp"
#include "pbands/lattice.hpp"

namespace pbands {

inline constexpr std::size_t kDefaultPointBudget = std::size_t{1} << 16;

struct GridSpec {
  std::vector<int> samples;  // m_i >= 2 nodes per coordinate
  int refine_rounds = 10;
  double shrink = 0.5;
  std::size_t point_budget = kDefaultPointBudget;
  unsigned threads = 0;  // 0 = hardware concurrency

  // Largest uniform m with m^d <= budget.
  static GridSpec uniform_default(std::size_t dim, std::size_t budget = kDefaultPointBudget);
  static GridSpec uniform(std::size_t dim, int m);

  std::size_t total_points() const;
  double step(const PeriodVector& q, std::size_t i) const { return 1.0 / (q[i] * samples[i]); }

  // Throws ConfigError if the grid is malformed or over budget.
  void validate(const PeriodVector& q) const;
};

struct BandEdge {
  double min_value = 0.0;
  double max_value = 0.0;
  Phase argmin;
  Phase argmax;
};

struct BandTable {
  PeriodVector q;
  std::vector<int> grid;
  std::vector<BandEdge> bands;  // bands[k-1] is band k, largest first
  double certified_slack = 0.0;
  bool refined = false;

  std::size_t band_count() const noexcept { return bands.size(); }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Gap {
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
};

struct SpectrumReport {
  std::vector<Interval> intervals;
  std::vector<double> overlaps;
  std::vector<Gap> gaps;
  std::vector<int> grid;
  double slack = 0.0;
  double merge_tol = 0.0;
  bool certified = false;
};

// Eigenvalues at every grid node, row-major over the grid (last axis
// fastest). values[node * Q + (k-1)] = E^k at that node.
struct GridSamples {
  PeriodVector q;
  std::vector<int> grid;
  std::size_t band_count = 0;
  std::vector<double> values;

  std::size_t node_count() const noexcept { return band_count ? values.size() / band_count : 0; }
  Phase node_phase(std::size_t node) const;
  double at(std::size_t node, std::size_t k) const { return values[node * band_count + k]; }
};

// Evaluates the sorted fiber spectrum of one potential. Uses the closed-form
// levels when the potential vanishes identically.
class BandEvaluator {
 public:
  BandEvaluator(const PeriodVector& q, const Potential& v);

  const PeriodVector& period() const noexcept { return q_; }
  bool free() const noexcept { return free_; }

  std::vector<double> operator()(const Phase& theta) const;

 private:
  PeriodVector q_;
  FiberBuilder builder_;
  bool free_;
};

GridSamples sample_grid(const PeriodVector& q, const Potential& v, const GridSpec& grid);

// Running per-band min/max over the grid. Ties resolve to the
// lexicographically smallest node.
BandTable sample_bands(const PeriodVector& q, const Potential& v, const GridSpec& grid);
BandTable reduce_samples(const GridSamples& samples);

// Per-coordinate eigenvalue Lipschitz constant: 4 pi q_i in general, 4 pi
// for the free operator.
double lipschitz_constant(const PeriodVector& q, std::size_t direction, bool free_operator = false);

double grid_slack(const PeriodVector& q, const GridSpec& grid, bool free_operator);

// sample_bands, then coordinate-descent refinement from each extremum with
// shrinking steps. The slack stays that of the grid.
BandTable certified_edges(const PeriodVector& q, const Potential& v, const GridSpec& grid);

// The refinement step of certified_edges applied to an existing table.
BandTable refine_extrema(BandTable table, const Potential& v, const GridSpec& grid);

// delta_k = max F^{k+1} - min F^k for k = 1..Q-1.
std::vector<double> overlaps(const BandTable& b);

// merge_tol defaults to 2 * slack; smaller values are rejected.
SpectrumReport assemble_spectrum(const BandTable& b, std::optional<double> merge_tol = std::nullopt);

// Overlap guaranteed after adding a potential of sup norm v_norm.
double overlap_after_potential(double delta, double v_norm);

struct CqEstimate {
  double c_q = 0.0;
  bool touching_at_zero = false;
  bool inconclusive = false;
  std::vector<std::size_t> excluded_pairs;  // 1-based k of excluded (k, k+1)
  std::vector<double> free_overlaps;
  double min_overlap = 0.0;
  double slack = 0.0;
  std::vector<int> grid;
};

CqEstimate estimate_cq(const PeriodVector& q, const GridSpec& grid);

}  // namespace pbands
