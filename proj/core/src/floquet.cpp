#include "pbands/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "pbands/errors.hpp"
#include "pbands/json_format.hpp"

namespace pbands {

Potential::Potential(PeriodVector q, std::vector<double> values)
    : q_(std::move(q)), values_(std::move(values)) {
  if (values_.size() != q_.cell_size()) {
    throw DomainError("potential has " + std::to_string(values_.size()) +
                      " values, expected Q = " + std::to_string(q_.cell_size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("potential contains a non-finite value");
    sup_norm_ = std::max(sup_norm_, std::abs(v));
  }
}

Potential Potential::zero(const PeriodVector& q) {
  return Potential(q, std::vector<double>(q.cell_size(), 0.0));
}

Potential Potential::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("potential file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("q") || !doc.contains("values")) {
    throw ConfigError("potential file must be an object with keys \"q\" and \"values\"");
  }
  const auto& jq = doc.at("q");
  const auto& jv = doc.at("values");
  if (!jq.is_array() || !jv.is_array()) {
    throw ConfigError("potential file: \"q\" and \"values\" must be arrays");
  }
  std::vector<int> q;
  for (const auto& e : jq) {
    if (!e.is_number_integer()) throw ConfigError("potential file: \"q\" entries must be integers");
    q.push_back(e.get<int>());
  }
  PeriodVector period = [&] {
    try {
      return PeriodVector(q);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("potential file: ") + e.what());
    }
  }();
  if (jv.size() != period.cell_size()) {
    throw ConfigError("potential file: \"values\" has " + std::to_string(jv.size()) +
                      " entries, expected Q = " + std::to_string(period.cell_size()));
  }
  std::vector<double> values;
  values.reserve(jv.size());
  for (const auto& e : jv) {
    if (!e.is_number()) throw ConfigError("potential file: \"values\" entries must be numbers");
    values.push_back(e.get<double>());
  }
  try {
    return Potential(std::move(period), std::move(values));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("potential file: ") + e.what());
  }
}

std::string Potential::to_json() const {
  nlohmann::json doc;
  doc["q"] = q_.entries();
  doc["values"] = values_;
  return canonical_json(doc);
}

FiberBuilder::FiberBuilder(const Potential& v) : v_(v) {
  const PeriodVector& q = v_.period();
  bonds_.reserve(q.cell_size() * q.dim());
  for (std::size_t s = 0; s < q.cell_size(); ++s) {
    const SiteIndex site = decode_site(s, q);
    for (std::size_t i = 0; i < q.dim(); ++i) {
      std::vector<int> nb = site.n;
      const bool wraps = nb[i] + 1 >= q[i];
      nb[i] = wraps ? 0 : nb[i] + 1;
      bonds_.push_back(Bond{static_cast<Eigen::Index>(s),
                            static_cast<Eigen::Index>(encode_site(nb, q)), i, wraps});
    }
  }
}

FiberMatrix FiberBuilder::build(const Phase& theta) const {
  const PeriodVector& q = v_.period();
  if (theta.dim() != q.dim()) throw DomainError("assemble: phase dimension differs from q");

  std::vector<std::complex<double>> twist(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    twist[i] = std::polar(1.0, 2.0 * std::numbers::pi * q[i] * theta[i]);
  }

  const auto size = static_cast<Eigen::Index>(q.cell_size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
  for (Eigen::Index n = 0; n < size; ++n) h(n, n) = v_.at(static_cast<std::size_t>(n));
  for (const Bond& b : bonds_) {
    // (H u)(n) picks up c u(m); the reverse bond carries conj(c). With q_i = 1
    // or 2 several bonds land on the same entry and accumulate.
    const std::complex<double> c = b.wraps ? twist[b.direction] : std::complex<double>{1.0, 0.0};
    h(b.from, b.to) += c;
    h(b.to, b.from) += std::conj(c);
  }
  return FiberMatrix{q, theta, std::move(h)};
}

std::vector<double> FiberBuilder::eigenvalues(const Phase& theta) const {
  return eigenvalues_sorted_desc(build(theta)).values;
}

FiberMatrix assemble(const PeriodVector& q, const Potential& v, const Phase& theta) {
  if (!(v.period() == q)) throw DomainError("assemble: potential period differs from q");
  return FiberBuilder(v).build(theta);
}

EigenList eigenvalues_sorted_desc(const FiberMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ComputationError("Hermitian eigensolver did not converge", m.theta.values());
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  std::sort(values.begin(), values.end(), std::greater<>());
  return EigenList{m.theta, std::move(values)};
}

std::vector<double> fiber_eigenvalues(const PeriodVector& q, const Potential& v, const Phase& theta) {
  return eigenvalues_sorted_desc(assemble(q, v, theta)).values;
}

PeriodVector minimal_period(const Potential& v) {
  const PeriodVector& q = v.period();
  std::vector<int> p(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    for (int cand = 1; cand <= q[i]; ++cand) {
      if (q[i] % cand != 0) continue;
      bool periodic = true;
      for (std::size_t s = 0; s < q.cell_size() && periodic; ++s) {
        SiteIndex site = decode_site(s, q);
        site.n[i] = (site.n[i] + cand) % q[i];
        periodic = v.at(s) == v.at(encode_site(site.n, q));
      }
      if (periodic) {
        p[i] = cand;
        break;
      }
    }
  }
  return PeriodVector(std::move(p));
}

}  // namespace pbands
