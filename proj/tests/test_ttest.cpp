#include <doctest.h>

#include <cmath>
#include <random>

#include "bonfstab/errors.hpp"
#include "bonfstab/ttest.hpp"
#include "oracles.hpp"

using namespace bonfstab;

TEST_CASE("pooled_t_statistic examples") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{3, 4, 5, 6};
  const double t = pooled_t_statistic(x, y);
  CHECK(t == doctest::Approx(-2.1908902300206645).epsilon(1e-14));
  CHECK(pooled_t_statistic(y, x) == -t);

  const std::vector<double> same{1, 2, 3};
  CHECK(pooled_t_statistic(same, same) == 0.0);

  const std::vector<double> flat{2, 2, 2};
  CHECK_THROWS_AS(pooled_t_statistic(flat, flat), DegenerateVariance);
  CHECK_THROWS_AS(pooled_t_statistic(std::vector<double>{1.0}, y), InvalidInput);
}

TEST_CASE("t_pvalue closed forms and errors") {
  CHECK(t_pvalue(0.0, 1.0) == 1.0);
  CHECK(t_pvalue(0.0, 84.0) == 1.0);
  CHECK(t_pvalue(1.0, 1.0) == 0.5);
  CHECK(t_pvalue(-1.0, 1.0) == 0.5);
  // df = 2: p = 1 - |t| / sqrt(2 + t^2).
  CHECK(t_pvalue(1.5, 2.0) == doctest::Approx(1.0 - 1.5 / std::sqrt(4.25)).epsilon(1e-14));
  CHECK_THROWS_AS(t_pvalue(1.0, 0.5), InvalidParameter);
  CHECK_THROWS_AS(t_pvalue(INFINITY, 5.0), InvalidParameter);
}

TEST_CASE("t_pvalue matches frozen high-precision values") {
  // Frozen from an independent 40-digit integration of the density tail.
  CHECK(std::fabs(t_pvalue(2.0, 84.0) - 0.048731417698616007) < 1e-15);
  CHECK(std::fabs(t_pvalue(-2.1908902300206645, 6.0) - 0.070987654320987654) < 1e-15);
  CHECK(std::fabs(t_pvalue(8.0, 200.0) - 9.8792009093306392e-14) < 1e-24);
  CHECK(std::fabs(t_pvalue(8.0, 1.0) - 0.079166848321131084) < 1e-15);
}

TEST_CASE("t_pvalue agrees with the quadrature oracle") {
  for (const double df : {1.0, 2.0, 6.0, 84.0, 200.0}) {
    for (double t = -8.0; t <= 8.0; t += 0.5) {
      const double expected = oracle::t_pvalue_quadrature(t, df);
      INFO("t = " << t << ", df = " << df);
      CHECK(std::fabs(t_pvalue(t, df) - expected) <= 1e-10);
    }
  }
}

TEST_CASE("t_pvalue is strictly decreasing in |t|") {
  for (const double df : {1.0, 3.0, 84.0}) {
    double prev = 1.0;
    for (double t = 0.01; t < 10.0; t += 0.01) {
      const double p = t_pvalue(t, df);
      REQUIRE(p < prev);
      REQUIRE(p >= 0.0);
      prev = p;
    }
  }
}

TEST_CASE("incomplete beta symmetry") {
  for (const double x : {0.01, 0.2, 0.5, 0.73, 0.99}) {
    const double lhs = regularized_incomplete_beta(3.5, 0.5, x, 1.0 - x);
    const double rhs = 1.0 - regularized_incomplete_beta(0.5, 3.5, 1.0 - x, x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0, 1.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0, 0.0) == 1.0);
  // I_x(1, 1) = x.
  CHECK(regularized_incomplete_beta(1.0, 1.0, 0.3, 0.7) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("pvalues_for_dataset") {
  TwoGroupDataset d;
  d.m = 1;
  d.n_a = 4;
  d.n_b = 4;
  d.group_a = {1, 2, 3, 4};
  d.group_b = {3, 4, 5, 6};
  const auto p = pvalues_for_dataset(d);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == t_pvalue(-2.1908902300206645, 6.0));

  SUBCASE("equal means give p = 1") {
    TwoGroupDataset e;
    e.m = 3;
    e.n_a = 3;
    e.n_b = 3;
    e.group_a = {1, 2, 3, 5, 7, 9, -1, 0, 1};
    e.group_b = e.group_a;
    const auto p_equal = pvalues_for_dataset(e);
    for (const double v : p_equal.values()) CHECK(v == 1.0);
  }

  SUBCASE("degenerate gene reports its index") {
    TwoGroupDataset e;
    e.m = 3;
    e.n_a = 2;
    e.n_b = 2;
    e.group_a = {1, 2, 4, 4, 0, 1};
    e.group_b = {1, 3, 4, 4, 2, 2};
    try {
      (void)pvalues_for_dataset(e);
      FAIL("expected DegenerateVariance");
    } catch (const DegenerateVariance& err) {
      CHECK(err.gene() == 1);
    }
  }

  SUBCASE("shape errors") {
    TwoGroupDataset e;
    e.m = 2;
    e.n_a = 2;
    e.n_b = 2;
    e.group_a = {1, 2, 3};
    e.group_b = {1, 2, 3, 4};
    CHECK_THROWS_AS(pvalues_for_dataset(e), InvalidInput);
    e.group_a = {1, 2, 3, NAN};
    CHECK_THROWS_AS(pvalues_for_dataset(e), InvalidInput);
  }
}

TEST_CASE("p-values are location and scale invariant") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  TwoGroupDataset d;
  d.m = 50;
  d.n_a = 6;
  d.n_b = 9;
  for (std::size_t k = 0; k < d.m * d.n_a; ++k) d.group_a.push_back(z(rng) + 0.5);
  for (std::size_t k = 0; k < d.m * d.n_b; ++k) d.group_b.push_back(z(rng));
  const auto base = pvalues_for_dataset(d);

  TwoGroupDataset shifted = d;
  TwoGroupDataset scaled = d;
  for (auto& v : shifted.group_a) v += 17.25;
  for (auto& v : shifted.group_b) v += 17.25;
  for (auto& v : scaled.group_a) v *= 3.7;
  for (auto& v : scaled.group_b) v *= 3.7;
  const auto ps = pvalues_for_dataset(shifted);
  const auto pc = pvalues_for_dataset(scaled);
  for (std::size_t i = 0; i < d.m; ++i) {
    CHECK(ps[i] == doctest::Approx(base[i]).epsilon(1e-9));
    CHECK(pc[i] == doctest::Approx(base[i]).epsilon(1e-9));
  }
}
