#pragma once

// Perturb-and-count at a coincident free level.
//
// At a phase theta~ several frequencies l^(1..r) can share one free level e.
// Moving theta along t * beta, each member moves to first order with
// t * beta . grad e_l and, when that vanishes, to second order with
// (t^2/2) * second_order_coeff. This module groups the members, classifies
// their gradients against beta, predicts how many move up or down and checks
// the prediction against direct evaluation at small t.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbands/lattice.hpp"

namespace pbands {

inline constexpr double kGroupTolerance = 1e-9;
inline constexpr double kZeroTolerance = 1e-10;

struct DegeneracyGroup {
  PeriodVector q;
  Phase theta;
  double level = 0.0;
  std::vector<FourierIndex> members;  // all l whose level matches, row-major order
  // Number of free levels strictly above the group at theta; the group
  // occupies sorted positions rank_above+1 .. rank_above+r (largest first).
  std::size_t rank_above = 0;

  std::size_t size() const noexcept { return members.size(); }
};

enum class MemberClass {
  zero_gradient,      // grad e = 0
  along,              // beta . grad e > 0
  against,            // beta . grad e < 0
  orthogonal,         // grad e != 0, beta . grad e = 0
};

struct DirectionClassification {
  std::vector<double> beta;
  std::size_t j0 = 0;
  std::size_t j_beta = 0;
  std::size_t j_beta_0 = 0;
  std::size_t j_minus = 0;
  std::vector<MemberClass> per_member;
  double zero_tol = kZeroTolerance;
};

struct MoveCount {
  std::size_t up = 0;
  std::size_t down = 0;

  friend bool operator==(const MoveCount&, const MoveCount&) = default;
};

struct CountResult {
  MoveCount moves;
  bool conclusive = true;
  std::optional<FourierIndex> ambiguous;  // first member inside the |t|^3 guard
  std::vector<double> values;             // level of each member at theta~ + t beta
};

DegeneracyGroup coincident_group(const PeriodVector& q, const Phase& theta, const FourierIndex& target,
                                 double tol = kGroupTolerance);

DirectionClassification classify(const DegeneracyGroup& g, std::span<const double> beta,
                                  double zero_tol = kZeroTolerance);

// Evaluates every member at theta~ + t beta. Requires 0 < |t| <= 1e-2.
CountResult count_moves(const DegeneracyGroup& g, std::span<const double> beta, double t);

// Requires classification computed for the same group and beta. Throws
// DomainError when a member has vanishing first and second order terms.
MoveCount predict_moves(const DegeneracyGroup& g, std::span<const double> beta, int sign_of_t,
                        const DirectionClassification& classification);

// sum_i 2 |beta_i^2 - 1/d| < level / (2d): the nearness condition a
// perturbed direction must satisfy to inherit the second-order sign of the
// diagonal direction. Returns the left-hand side and the verdict.
struct BetaCondition {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
BetaCondition check_beta_near_diagonal(std::span<const double> beta, double level);

// Normalizes a direction; throws DomainError for the zero vector.
std::vector<double> normalized(std::span<const double> v);

const char* to_string(MemberClass c) noexcept;

}  // namespace pbands
