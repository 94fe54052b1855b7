#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pbands/errors.hpp"
#include "pbands/lattice.hpp"
#include "support/oracles.hpp"

using namespace pbands;

TEST_CASE("period vector invariants") {
  const PeriodVector q{2, 3};
  CHECK(q.dim() == 2);
  CHECK(q.cell_size() == 6);
  CHECK_FALSE(q.all_even());
  CHECK(PeriodVector{2, 4, 6}.all_even());
  CHECK(PeriodVector{1, 1}.cell_size() == 1);
  CHECK_THROWS_AS(PeriodVector(std::vector<int>{3}), DomainError);
  CHECK_THROWS_AS(PeriodVector({2, 0}), DomainError);
  CHECK_THROWS_AS(PeriodVector({2, -1}), DomainError);
}

TEST_CASE("enumerate_lambda is row-major with the last axis fastest") {
  const auto l22 = enumerate_lambda(PeriodVector{2, 2});
  REQUIRE(l22.size() == 4);
  CHECK(l22[0].l == std::vector<int>{0, 0});
  CHECK(l22[1].l == std::vector<int>{0, 1});
  CHECK(l22[2].l == std::vector<int>{1, 0});
  CHECK(l22[3].l == std::vector<int>{1, 1});

  const auto l13 = enumerate_lambda(PeriodVector{1, 3});
  REQUIRE(l13.size() == 3);
  CHECK(l13[2].l == std::vector<int>{0, 2});

  const auto l23 = enumerate_lambda(PeriodVector{2, 3});
  REQUIRE(l23.size() == 6);
  CHECK(l23.front().l == std::vector<int>{0, 0});
  CHECK(l23.back().l == std::vector<int>{1, 2});
}

TEST_CASE("site encode/decode round-trips for every site") {
  for (const auto& qv : {std::vector<int>{2, 3}, {7, 5, 4}, {10, 10, 10, 10}, {1, 9}, {100, 100}}) {
    const PeriodVector q(qv);
    for (std::size_t s = 0; s < q.cell_size(); ++s) {
      const SiteIndex site = decode_site(s, q);
      REQUIRE(site.linear == s);
      for (std::size_t i = 0; i < q.dim(); ++i) {
        REQUIRE(site.n[i] >= 0);
        REQUIRE(site.n[i] < q[i]);
      }
      REQUIRE(encode_site(site.n, q) == s);
    }
  }
  CHECK_THROWS_AS(decode_site(6, PeriodVector{2, 3}), DomainError);
  CHECK_THROWS_AS(encode_site(std::vector<int>{2, 0}, PeriodVector{2, 3}), DomainError);
}

TEST_CASE("phase construction validates and wrap folds") {
  const PeriodVector q{2, 3};
  CHECK_NOTHROW(Phase({0.49, 0.3}, q));
  CHECK_THROWS_AS(Phase({0.5, 0.0}, q), DomainError);
  CHECK_THROWS_AS(Phase({-0.1, 0.0}, q), DomainError);
  CHECK_THROWS_AS(Phase({0.1}, q), DomainError);

  const std::vector<double> raw{0.75, -0.1};
  const Phase w = Phase::wrap(raw, q);
  CHECK(w[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(1.0 / 3.0 - 0.1).epsilon(1e-14));
}

TEST_CASE("fold_phase examples") {
  {
    // 5/6 = 1/6 + 2/3 in a period-3 coordinate.
    const std::vector<double> x{5.0 / 6.0, 0.0};
    const auto [theta, l] = fold_phase(x, PeriodVector{3, 2});
    CHECK(theta[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(l.l == std::vector<int>{2, 0});
    CHECK(theta[1] == 0.0);
  }
  {
    const std::vector<double> x{0.0, 0.0};
    const auto [theta, l] = fold_phase(x, PeriodVector{4, 5});
    CHECK(theta.values() == std::vector<double>{0.0, 0.0});
    CHECK(l.l == std::vector<int>{0, 0});
  }
  {
    const std::vector<double> x{0.49, 0.75};
    const PeriodVector q{2, 2};
    const auto [theta, l] = fold_phase(x, q);
    CHECK(l.l == std::vector<int>{0, 1});
    CHECK(theta[0] == 0.49);
    CHECK(theta[1] == doctest::Approx(0.25).epsilon(1e-15));
    for (std::size_t i = 0; i < 2; ++i) CHECK(theta[i] + double(l.l[i]) / q[i] == doctest::Approx(x[i]));
  }
  CHECK_THROWS_AS(fold_phase(std::vector<double>{1.0, 0.0}, PeriodVector{2, 2}), DomainError);
  CHECK_THROWS_AS(fold_phase(std::vector<double>{-0.01, 0.0}, PeriodVector{2, 2}), DomainError);
}

TEST_CASE("fold_phase reconstruction error stays within 4 ulps") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int trial = 0; trial < 10000; ++trial) {
    const PeriodVector q(oracle::random_period(rng, 200));
    std::vector<double> x(q.dim());
    for (double& xi : x) xi = u(rng);
    const auto [theta, l] = fold_phase(x, q);
    for (std::size_t i = 0; i < q.dim(); ++i) {
      REQUIRE(theta[i] >= 0.0);
      REQUIRE(theta[i] < 1.0 / q[i]);
      REQUIRE(l.l[i] >= 0);
      REQUIRE(l.l[i] < q[i]);
      REQUIRE(std::abs(theta[i] + double(l.l[i]) / q[i] - x[i]) <= 4.0 * eps);
    }
  }
}

TEST_CASE("torus_distance examples") {
  const PeriodVector q23{2, 3};
  const Phase a = Phase::zero(q23);
  CHECK(torus_distance(a, a, q23) == 0.0);
  CHECK(torus_distance(a, Phase({0.49, 0.0}, q23), q23) == doctest::Approx(0.01).epsilon(1e-12));

  const PeriodVector q22{2, 2};
  const double d = torus_distance(Phase({0.1, 0.1}, q22), Phase({0.2, 0.3}, q22), q22);
  const double brute = std::hypot(oracle::circle_distance_brute(0.1, 0.2, 2), oracle::circle_distance_brute(0.1, 0.3, 2));
  CHECK(brute == doctest::Approx(std::sqrt(0.05)).epsilon(1e-12));
  CHECK(d == doctest::Approx(brute).epsilon(1e-12));

  CHECK_THROWS_AS(torus_distance(Phase::zero(q22), Phase::zero(PeriodVector{2, 2, 2}), q22), DomainError);
}

TEST_CASE("torus_distance is a metric on random triples") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::vector<int> qv = oracle::random_period(rng, 200);
    const PeriodVector q(qv);
    const Phase a(oracle::random_phase(rng, qv), q);
    const Phase b(oracle::random_phase(rng, qv), q);
    const Phase c(oracle::random_phase(rng, qv), q);
    const double ab = torus_distance(a, b, q);
    REQUIRE(ab == doctest::Approx(torus_distance(b, a, q)).epsilon(1e-12));
    REQUIRE(ab <= torus_distance(a, c, q) + torus_distance(c, b, q) + 1e-12);
    REQUIRE(ab >= 0.0);
    double brute = 0.0;
    for (std::size_t i = 0; i < q.dim(); ++i) {
      const double di = oracle::circle_distance_brute(a[i], b[i], q[i]);
      brute += di * di;
    }
    REQUIRE(std::abs(ab - std::sqrt(brute)) <= 1e-12);
  }
}
