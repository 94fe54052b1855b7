#pragma once

// Potentials that open a gap at energy zero when every period is even: the
// alternating dimer delta (-1)^{|n|} and its minimal-period-q modification
// that lowers the value at n = 0 (mod q) to (1 - delta^2/d) delta.

#include <array>
#include <cstddef>
#include <vector>

#include "pbands/bandedges.hpp"
#include "pbands/floquet.hpp"
#include "pbands/lattice.hpp"

namespace pbands {

inline constexpr double kDefaultDeltaMax = 0.25;

struct CounterexampleSpec {
  PeriodVector q;
  double delta = 0.1;
  double delta_max = kDefaultDeltaMax;
  bool allow_large_delta = false;

  // Throws DomainError unless 0 < delta <= delta_max (or the override is set).
  void validate() const;
};

// Throws DomainError if some q_i is odd: the gap at zero needs all periods even.
Potential build_vq(const CounterexampleSpec& spec);
Potential build_dimer(const PeriodVector& q, double delta);

struct NeighborSite {
  SiteIndex site;
  std::size_t direction = 0;  // 0-based
  double sum = 0.0;
  double expected = 0.0;
};

struct NeighborSumCheck {
  bool ok = true;          // V(n) + V(n + b_i) matches the V_q pattern everywhere
  bool pure_dimer = true;  // every neighbor sum vanishes exactly
  std::vector<NeighborSite> failures;
};

// Checks V(n) + V(n + b_i) = -delta^3/d at n = -b_i or 0 (mod q) and 0
// elsewhere, to 1e-15.
NeighborSumCheck neighbor_sum_check(const Potential& v, double delta);

struct GapCheck {
  double margin = 0.0;            // min over grid nodes and bands of |E^k(theta)|
  double certified_margin = 0.0;  // margin - slack
  double slack = 0.0;
  double required = 0.0;          // delta / 2
  bool passes = false;            // margin > delta / 2
  bool certified = false;         // certified_margin > delta / 2
  bool inconclusive = false;      // slack >= margin - delta / 2
};

GapCheck verify_gap_at_zero(const CounterexampleSpec& spec, const GridSpec& grid);
GapCheck verify_gap_at_zero(const Potential& v, double delta, const GridSpec& grid);

// [-sqrt(4d^2 + delta^2), -delta] and [delta, sqrt(4d^2 + delta^2)]: the dimer
// anticommutes with the hopping part, so (H_0 + delta P)^2 = H_0^2 + delta^2.
std::array<Interval, 2> dimer_oracle_spectrum(std::size_t dim, double delta);

}  // namespace pbands
