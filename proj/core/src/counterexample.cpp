#include "pbands/counterexample.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pbands/errors.hpp"

namespace pbands {

namespace {

void require_even(const PeriodVector& q, const char* what) {
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (q[i] % 2 != 0) {
      throw DomainError(std::string(what) + " needs every period even (q_" + std::to_string(i + 1) +
                        " = " + std::to_string(q[i]) + "); with an odd period the spectrum of a small "
                        "potential has no gap");
    }
  }
}

int parity_sign(const std::vector<int>& n) {
  int s = 0;
  for (int x : n) s += x;
  return s % 2 == 0 ? 1 : -1;
}

}  // namespace

void CounterexampleSpec::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be positive");
  if (delta > delta_max && !allow_large_delta) {
    throw DomainError("delta = " + std::to_string(delta) + " exceeds delta_max = " +
                      std::to_string(delta_max) + " (pass the override to force it)");
  }
}

Potential build_vq(const CounterexampleSpec& spec) {
  spec.validate();
  require_even(spec.q, "V_q");
  const double d = static_cast<double>(spec.q.dim());
  std::vector<double> values(spec.q.cell_size());
  for (std::size_t s = 0; s < values.size(); ++s) {
    values[s] = s == 0 ? (1.0 - spec.delta * spec.delta / d) * spec.delta
                       : spec.delta * parity_sign(decode_site(s, spec.q).n);
  }
  return Potential(spec.q, std::move(values));
}

Potential build_dimer(const PeriodVector& q, double delta) {
  require_even(q, "the dimer potential");
  if (!std::isfinite(delta)) throw DomainError("delta must be finite");
  std::vector<double> values(q.cell_size());
  for (std::size_t s = 0; s < values.size(); ++s) values[s] = delta * parity_sign(decode_site(s, q).n);
  return Potential(q, std::move(values));
}

NeighborSumCheck neighbor_sum_check(const Potential& v, double delta) {
  const PeriodVector& q = v.period();
  const double d = static_cast<double>(q.dim());
  const double corner = -delta * delta * delta / d;
  NeighborSumCheck out;
  for (std::size_t s = 0; s < q.cell_size(); ++s) {
    const SiteIndex site = decode_site(s, q);
    for (std::size_t i = 0; i < q.dim(); ++i) {
      std::vector<int> nb = site.n;
      nb[i] = (nb[i] + 1) % q[i];
      const double sum = v.at(s) + v.at(encode_site(nb, q));
      // n = 0 or n = -b_i (mod q): exactly one endpoint of the bond is the origin.
      const bool touches_origin = s == 0 || encode_site(nb, q) == 0;
      const double expected = touches_origin ? corner : 0.0;
      if (sum != 0.0) out.pure_dimer = false;
      if (std::abs(sum - expected) > 1e-15) {
        out.ok = false;
        out.failures.push_back(NeighborSite{site, i, sum, expected});
      }
    }
  }
  return out;
}

GapCheck verify_gap_at_zero(const Potential& v, double delta, const GridSpec& grid) {
  const GridSamples samples = sample_grid(v.period(), v, grid);
  GapCheck out;
  out.margin = std::numeric_limits<double>::infinity();
  for (double e : samples.values) out.margin = std::min(out.margin, std::abs(e));
  out.slack = grid_slack(v.period(), grid, v.sup_norm() == 0.0);
  out.certified_margin = out.margin - out.slack;
  out.required = delta / 2.0;
  out.passes = out.margin > out.required;
  out.certified = out.certified_margin > out.required;
  out.inconclusive = out.slack >= out.margin - out.required;
  return out;
}

GapCheck verify_gap_at_zero(const CounterexampleSpec& spec, const GridSpec& grid) {
  return verify_gap_at_zero(build_vq(spec), spec.delta, grid);
}

std::array<Interval, 2> dimer_oracle_spectrum(std::size_t dim, double delta) {
  if (dim < 1) throw DomainError("dimension must be >= 1");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  const double d = static_cast<double>(dim);
  const double outer = std::sqrt(4.0 * d * d + delta * delta);
  return {Interval{-outer, -delta}, Interval{delta, outer}};
}

}  // namespace pbands
