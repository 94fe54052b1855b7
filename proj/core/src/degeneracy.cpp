#include "pbands/degeneracy.hpp"

#include <algorithm>
#include <cmath>

#include "pbands/errors.hpp"
#include "pbands/freebands.hpp"

namespace pbands {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_unit(std::span<const double> beta, std::size_t dim) {
  if (beta.size() != dim) throw DomainError("direction has the wrong dimension");
  if (std::abs(dot(beta, beta) - 1.0) > 1e-9) throw DomainError("direction must be a unit vector");
}

}  // namespace

DegeneracyGroup coincident_group(const PeriodVector& q, const Phase& theta, const FourierIndex& target,
                                 double tol) {
  if (!(tol > 0.0)) throw DomainError("grouping tolerance must be positive");
  DegeneracyGroup g{q, theta, free_level(q, theta, target), {}, 0};
  for (const FourierIndex& l : enumerate_lambda(q)) {
    const double e = free_level(q, theta, l);
    if (std::abs(e - g.level) <= tol) {
      g.members.push_back(l);
    } else if (e > g.level) {
      ++g.rank_above;
    }
  }
  return g;
}

DirectionClassification classify(const DegeneracyGroup& g, std::span<const double> beta, double zero_tol) {
  require_unit(beta, g.q.dim());
  if (!(zero_tol > 0.0)) throw DomainError("zero tolerance must be positive");
  DirectionClassification c;
  c.beta.assign(beta.begin(), beta.end());
  c.zero_tol = zero_tol;
  for (const FourierIndex& l : g.members) {
    const std::vector<double> grad = free_gradient(g.q, g.theta, l);
    const double norm = std::sqrt(dot(grad, grad));
    const double along = dot(beta, grad);
    MemberClass mc;
    if (norm <= zero_tol) {
      mc = MemberClass::zero_gradient;
      ++c.j0;
    } else if (along > zero_tol) {
      mc = MemberClass::along;
      ++c.j_beta;
    } else if (along < -zero_tol) {
      mc = MemberClass::against;
      ++c.j_minus;
    } else {
      mc = MemberClass::orthogonal;
      ++c.j_beta_0;
    }
    c.per_member.push_back(mc);
  }
  return c;
}

CountResult count_moves(const DegeneracyGroup& g, std::span<const double> beta, double t) {
  require_unit(beta, g.q.dim());
  if (!(std::abs(t) > 0.0 && std::abs(t) <= 1e-2)) {
    throw DomainError("perturbation size must satisfy 0 < |t| <= 1e-2");
  }
  const double guard = std::abs(t) * std::abs(t) * std::abs(t);
  CountResult out;
  for (const FourierIndex& l : g.members) {
    // Follow the branch through its full-circle phase, then fold back onto
    // the torus; wrapping the phase alone would relabel the frequency.
    std::vector<double> x(g.q.dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double xi = g.theta[i] + t * beta[i] + static_cast<double>(l.l[i]) / g.q[i];
      x[i] = xi - std::floor(xi);
      if (x[i] >= 1.0) x[i] = 0.0;
    }
    const auto [theta, folded] = fold_phase(x, g.q);
    const double e = free_level(g.q, theta, folded);
    out.values.push_back(e);
    if (e > g.level + guard) {
      ++out.moves.up;
    } else if (e < g.level - guard) {
      ++out.moves.down;
    } else if (out.conclusive) {
      out.conclusive = false;
      out.ambiguous = l;
    }
  }
  return out;
}

MoveCount predict_moves(const DegeneracyGroup& g, std::span<const double> beta, int sign_of_t,
                        const DirectionClassification& classification) {
  require_unit(beta, g.q.dim());
  if (sign_of_t == 0) throw DomainError("sign of t must be nonzero");
  if (classification.per_member.size() != g.size() ||
      !std::equal(beta.begin(), beta.end(), classification.beta.begin(), classification.beta.end())) {
    throw DomainError("classification was computed for a different group or direction");
  }
  MoveCount m;
  for (std::size_t j = 0; j < g.size(); ++j) {
    switch (classification.per_member[j]) {
      case MemberClass::along:
        (sign_of_t > 0 ? m.up : m.down) += 1;
        break;
      case MemberClass::against:
        (sign_of_t > 0 ? m.down : m.up) += 1;
        break;
      case MemberClass::zero_gradient:
      case MemberClass::orthogonal: {
        const double c = second_order_coeff(g.q, g.theta, g.members[j], beta);
        if (std::abs(c) <= classification.zero_tol) {
          throw DomainError("member vanishes to second order along beta; higher orders are not modeled");
        }
        (c > 0.0 ? m.up : m.down) += 1;
        break;
      }
    }
  }
  return m;
}

BetaCondition check_beta_near_diagonal(std::span<const double> beta, double level) {
  if (beta.empty()) throw DomainError("empty direction");
  const double d = static_cast<double>(beta.size());
  BetaCondition c;
  for (double b : beta) c.lhs += 2.0 * std::abs(b * b - 1.0 / d);
  c.rhs = level / (2.0 * d);
  c.holds = c.lhs < c.rhs;
  return c;
}

std::vector<double> normalized(std::span<const double> v) {
  const double n = std::sqrt(dot(v, v));
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero or non-finite vector");
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= n;
  return out;
}

const char* to_string(MemberClass c) noexcept {
  switch (c) {
    case MemberClass::zero_gradient:
      return "zero_gradient";
    case MemberClass::along:
      return "along";
    case MemberClass::against:
      return "against";
    case MemberClass::orthogonal:
      return "orthogonal";
  }
  return "unknown";
}

}  // namespace pbands
