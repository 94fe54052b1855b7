#include "pbands/bandedges.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "pbands/errors.hpp"
#include "pbands/freebands.hpp"

namespace pbands {

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, n) on contiguous chunks. Each index writes only its
// own output slot, so results do not depend on the schedule. The first
// exception in chunk order is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(n, (w + 1) * chunk);
        for (std::size_t i = w * chunk; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Phase grid_node(const PeriodVector& q, const std::vector<int>& m, std::size_t node) {
  std::vector<double> theta(q.dim());
  for (std::size_t i = q.dim(); i-- > 0;) {
    const auto mi = static_cast<std::size_t>(m[i]);
    const auto j = static_cast<double>(node % mi);
    node /= mi;
    theta[i] = j / (static_cast<double>(q[i]) * m[i]);
  }
  return Phase(std::move(theta), q);
}

}  // namespace

GridSpec GridSpec::uniform_default(std::size_t dim, std::size_t budget) {
  int m = 2;
  while (true) {
    double total = 1.0;
    for (std::size_t i = 0; i < dim; ++i) total *= (m + 1);
    if (total > static_cast<double>(budget)) break;
    ++m;
  }
  GridSpec g = uniform(dim, m);
  g.point_budget = budget;
  return g;
}

GridSpec GridSpec::uniform(std::size_t dim, int m) {
  GridSpec g;
  g.samples.assign(dim, m);
  return g;
}

std::size_t GridSpec::total_points() const {
  std::size_t total = 1;
  for (int m : samples) total *= static_cast<std::size_t>(std::max(m, 0));
  return total;
}

void GridSpec::validate(const PeriodVector& q) const {
  if (samples.size() != q.dim()) {
    throw ConfigError("grid has " + std::to_string(samples.size()) + " entries, period has " +
                      std::to_string(q.dim()));
  }
  double total = 1.0;
  for (int m : samples) {
    if (m < 2) throw ConfigError("grid sample counts must be >= 2, got " + std::to_string(m));
    total *= m;
  }
  if (total > static_cast<double>(point_budget)) {
    throw ConfigError("grid has " + std::to_string(static_cast<long long>(total)) +
                      " points, budget is " + std::to_string(point_budget));
  }
  if (refine_rounds < 0) throw ConfigError("refinement rounds must be >= 0");
  if (!(shrink > 0.0 && shrink < 1.0)) throw ConfigError("refinement shrink factor must lie in (0,1)");
}

Phase GridSamples::node_phase(std::size_t node) const { return grid_node(q, grid, node); }

BandEvaluator::BandEvaluator(const PeriodVector& q, const Potential& v)
    : q_(q), builder_(v), free_(v.sup_norm() == 0.0) {
  if (!(v.period() == q)) throw DomainError("potential period differs from q");
}

std::vector<double> BandEvaluator::operator()(const Phase& theta) const {
  if (free_) return free_levels_sorted_desc(q_, theta);
  return builder_.eigenvalues(theta);
}

GridSamples sample_grid(const PeriodVector& q, const Potential& v, const GridSpec& grid) {
  grid.validate(q);
  if (!(v.period() == q)) throw DomainError("potential period differs from q");

  GridSamples out{q, grid.samples, q.cell_size(), {}};
  const std::size_t nodes = grid.total_points();
  out.values.resize(nodes * out.band_count);

  const BandEvaluator evaluate(q, v);
  parallel_for(nodes, grid.threads, [&](std::size_t node) {
    const std::vector<double> ev = evaluate(grid_node(q, grid.samples, node));
    std::copy(ev.begin(), ev.end(), out.values.begin() + static_cast<std::ptrdiff_t>(node * out.band_count));
  });
  return out;
}

BandTable reduce_samples(const GridSamples& samples) {
  BandTable table{samples.q, samples.grid, {}, 0.0, false};
  const std::size_t bands = samples.band_count;
  table.bands.resize(bands);
  std::vector<std::size_t> argmin(bands, 0), argmax(bands, 0);
  for (std::size_t k = 0; k < bands; ++k) {
    table.bands[k].min_value = std::numeric_limits<double>::infinity();
    table.bands[k].max_value = -std::numeric_limits<double>::infinity();
  }
  // Row-major node order is lexicographic in theta; strict comparisons keep
  // the first (smallest) node on ties.
  for (std::size_t node = 0; node < samples.node_count(); ++node) {
    for (std::size_t k = 0; k < bands; ++k) {
      const double e = samples.at(node, k);
      BandEdge& b = table.bands[k];
      if (e < b.min_value) {
        b.min_value = e;
        argmin[k] = node;
      }
      if (e > b.max_value) {
        b.max_value = e;
        argmax[k] = node;
      }
    }
  }
  for (std::size_t k = 0; k < bands; ++k) {
    table.bands[k].argmin = samples.node_phase(argmin[k]);
    table.bands[k].argmax = samples.node_phase(argmax[k]);
  }
  return table;
}

BandTable sample_bands(const PeriodVector& q, const Potential& v, const GridSpec& grid) {
  BandTable table = reduce_samples(sample_grid(q, v, grid));
  table.certified_slack = grid_slack(q, grid, v.sup_norm() == 0.0);
  return table;
}

double lipschitz_constant(const PeriodVector& q, std::size_t direction, bool free_operator) {
  if (direction >= q.dim()) throw DomainError("lipschitz_constant: direction out of range");
  const double four_pi = 4.0 * std::numbers::pi;
  return free_operator ? four_pi : four_pi * q[direction];
}

double grid_slack(const PeriodVector& q, const GridSpec& grid, bool free_operator) {
  double slack = 0.0;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    slack += lipschitz_constant(q, i, free_operator) * grid.step(q, i) / 2.0;
  }
  return slack;
}

BandTable certified_edges(const PeriodVector& q, const Potential& v, const GridSpec& grid) {
  return refine_extrema(sample_bands(q, v, grid), v, grid);
}

BandTable refine_extrema(BandTable table, const Potential& v, const GridSpec& grid) {
  const PeriodVector& q = table.q;
  if (grid.refine_rounds == 0) return table;

  const BandEvaluator evaluate(q, v);
  // Coordinate descent with step halving from each sampled extremum. Only
  // strict improvements are accepted, so refined extrema dominate sampled ones.
  const auto refine = [&](std::size_t k, Phase start, double value, bool maximize) {
    std::vector<double> step(q.dim());
    for (std::size_t i = 0; i < q.dim(); ++i) step[i] = grid.step(q, i);
    Phase best = std::move(start);
    for (int round = 0; round < grid.refine_rounds; ++round) {
      for (std::size_t i = 0; i < q.dim(); ++i) {
        for (const double sign : {1.0, -1.0}) {
          std::vector<double> cand = best.values();
          cand[i] += sign * step[i];
          const Phase p = Phase::wrap(cand, q);
          const double e = evaluate(p)[k];
          if (maximize ? e > value : e < value) {
            value = e;
            best = p;
          }
        }
      }
      for (double& s : step) s *= grid.shrink;
    }
    return std::pair{best, value};
  };

  parallel_for(table.band_count(), grid.threads, [&](std::size_t k) {
    BandEdge& b = table.bands[k];
    auto [pmax, vmax] = refine(k, b.argmax, b.max_value, true);
    auto [pmin, vmin] = refine(k, b.argmin, b.min_value, false);
    b.argmax = std::move(pmax);
    b.max_value = vmax;
    b.argmin = std::move(pmin);
    b.min_value = vmin;
  });
  table.refined = true;
  return table;
}

std::vector<double> overlaps(const BandTable& b) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < b.band_count(); ++k) {
    out.push_back(b.bands[k + 1].max_value - b.bands[k].min_value);
  }
  return out;
}

SpectrumReport assemble_spectrum(const BandTable& b, std::optional<double> merge_tol) {
  const double floor = 2.0 * b.certified_slack;
  const double tol = merge_tol.value_or(floor);
  if (!(tol >= floor)) {
    throw ConfigError("merge tolerance " + std::to_string(tol) + " is below 2 * slack = " +
                      std::to_string(floor));
  }

  std::vector<Interval> bands;
  bands.reserve(b.band_count());
  for (const BandEdge& e : b.bands) bands.push_back(Interval{e.min_value, e.max_value});
  std::sort(bands.begin(), bands.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi); });

  SpectrumReport report;
  for (const Interval& iv : bands) {
    if (!report.intervals.empty() && iv.lo <= report.intervals.back().hi + tol) {
      report.intervals.back().hi = std::max(report.intervals.back().hi, iv.hi);
    } else {
      report.intervals.push_back(iv);
    }
  }
  report.certified = true;
  for (std::size_t i = 0; i + 1 < report.intervals.size(); ++i) {
    const double lo = report.intervals[i].hi;
    const double hi = report.intervals[i + 1].lo;
    report.gaps.push_back(Gap{lo, hi, hi - lo});
    report.certified = report.certified && (hi - lo) > floor;
  }
  report.overlaps = overlaps(b);
  report.grid = b.grid;
  report.slack = b.certified_slack;
  report.merge_tol = tol;
  return report;
}

double overlap_after_potential(double delta, double v_norm) {
  if (v_norm < 0.0) throw DomainError("potential norm must be >= 0");
  return delta - 2.0 * v_norm;
}

CqEstimate estimate_cq(const PeriodVector& q, const GridSpec& grid) {
  const BandTable table = certified_edges(q, Potential::zero(q), grid);
  CqEstimate out;
  out.free_overlaps = overlaps(table);
  out.slack = table.certified_slack;
  out.grid = grid.samples;
  out.touching_at_zero = q.all_even();

  double min_overlap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < out.free_overlaps.size(); ++k) {
    if (out.touching_at_zero) {
      // A pair meeting at zero: band k bottoms out and band k+1 tops out there.
      const bool straddles = std::abs(table.bands[k].min_value) <= out.slack &&
                             std::abs(table.bands[k + 1].max_value) <= out.slack;
      if (straddles) {
        out.excluded_pairs.push_back(k + 1);
        continue;
      }
    }
    min_overlap = std::min(min_overlap, out.free_overlaps[k]);
  }
  out.min_overlap = min_overlap;
  if (std::isinf(min_overlap)) {
    // A single band (or only excluded pairs): no overlap constrains V.
    out.c_q = std::numeric_limits<double>::infinity();
    return out;
  }
  out.c_q = std::max(0.0, (min_overlap - 2.0 * out.slack) / 2.0);
  out.inconclusive = out.c_q <= 0.0;
  return out;
}

}  // namespace pbands
