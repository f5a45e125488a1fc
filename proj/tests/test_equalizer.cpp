#include <doctest.h>

#include <random>

#include "bonfstab/equalizer.hpp"
#include "bonfstab/errors.hpp"

using namespace bonfstab;

namespace {

ThresholdGrid small_grid(std::size_t n) {
  ThresholdGrid g;
  g.a = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    g.gammas.push_back(static_cast<double>(i + 1));
    g.betas.push_back(static_cast<double>(i + 1) / (2.0 + static_cast<double>(i + 1)));
  }
  return g;
}

ErrorCurve curve(Procedure p, Metric metric, std::vector<double> values) {
  ErrorCurve c;
  c.procedure = p;
  c.metric = metric;
  for (const double v : values) {
    RateEstimates e;
    (metric == Metric::fdr ? e.fdr_hat : e.pfer_hat) = v;
    c.points.push_back(e);
  }
  return c;
}

}  // namespace

TEST_CASE("build_grid layout") {
  const auto g = build_grid(125.0);
  REQUIRE(g.size() == 280);
  CHECK(g.gammas[0] == 0.01);
  CHECK(g.gammas[99] == 1.0);
  CHECK(g.gammas[100] == 1.1);
  CHECK(g.gammas[189] == 10.0);
  CHECK(g.gammas[190] == 11.0);
  CHECK(g.gammas[279] == 100.0);
  CHECK(g.gammas[41] == 0.42);  // integer-scaled, not accumulated
  CHECK(g.gammas[152] == 6.3);
  CHECK(g.betas[0] == doctest::Approx(7.99936e-5).epsilon(1e-5));
  CHECK(g.betas[0] == 0.01 / 125.01);
  CHECK(g.betas[279] == doctest::Approx(0.444444).epsilon(1e-6));
  CHECK(125.0 / (125.0 + 125.0) == 0.5);
  for (std::size_t i = 1; i < g.size(); ++i) {
    CHECK(g.gammas[i] > g.gammas[i - 1]);
    CHECK(g.betas[i] > g.betas[i - 1]);
    CHECK(g.betas[i] < 1.0);
  }
  CHECK(build_grid(125.0).gammas == g.gammas);
  CHECK_THROWS_AS(build_grid(0.0), InvalidParameter);
  CHECK_THROWS_AS(build_grid(-3.0), InvalidParameter);
}

TEST_CASE("match_by_fdr") {
  const auto g = small_grid(3);
  SUBCASE("identical curves give the identity pairing") {
    const auto t = match_by_fdr(curve(Procedure::bonferroni, Metric::fdr, {0.01, 0.02, 0.03}),
                                curve(Procedure::benjamini_hochberg, Metric::fdr, {0.01, 0.02, 0.03}), g);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(t.pairs[j].bonf_index == j);
      CHECK(t.pairs[j].bh_index == j);
      CHECK(t.pairs[j].gamma == g.gammas[j]);
      CHECK(t.pairs[j].beta == g.betas[j]);
    }
  }
  SUBCASE("nearest point wins") {
    const auto t = match_by_fdr(curve(Procedure::bonferroni, Metric::fdr, {0.010, 0.020, 0.030}),
                                curve(Procedure::benjamini_hochberg, Metric::fdr, {0.021, 0.5, 0.0}), g);
    CHECK(t.pairs[0].bonf_index == 1);
    CHECK(t.pairs[0].bonf_rate == 0.020);
    CHECK(t.pairs[0].bh_rate == 0.021);
    CHECK(t.pairs[1].bonf_index == 2);
    CHECK(t.pairs[2].bonf_index == 0);
  }
  SUBCASE("equidistant tie breaks to the smallest index") {
    CHECK(nearest_index(std::vector<double>{0.010, 0.030}, 0.020) == 0);
    CHECK(nearest_index(std::vector<double>{0.5, 0.5, 0.5}, 0.1) == 0);
  }
  SUBCASE("wrong metric or length") {
    CHECK_THROWS_AS(match_by_fdr(curve(Procedure::bonferroni, Metric::pfer, {1, 2, 3}),
                                 curve(Procedure::benjamini_hochberg, Metric::pfer, {1, 2, 3}), g),
                    InvalidInput);
    CHECK_THROWS_AS(match_by_fdr(curve(Procedure::bonferroni, Metric::fdr, {1, 2}),
                                 curve(Procedure::benjamini_hochberg, Metric::fdr, {1, 2}), g),
                    InvalidInput);
  }
}

TEST_CASE("match_by_pfer") {
  const auto g = small_grid(3);
  const auto t = match_by_pfer(curve(Procedure::bonferroni, Metric::pfer, {1.4, 2.0, 0.0}),
                               curve(Procedure::benjamini_hochberg, Metric::pfer, {0.5, 1.5, 2.5}), g);
  CHECK(t.metric == Metric::pfer);
  CHECK(t.pairs[0].bh_index == 1);
  CHECK(t.pairs[0].bonf_index == 0);
  CHECK(t.pairs[0].beta == g.betas[1]);
  CHECK(t.pairs[1].bh_index == 1);  // 2.0 is equidistant from 1.5 and 2.5
  CHECK(t.pairs[2].bh_index == 0);

  const auto same = match_by_pfer(curve(Procedure::bonferroni, Metric::pfer, {0.5, 1.5, 2.5}),
                                  curve(Procedure::benjamini_hochberg, Metric::pfer, {0.5, 1.5, 2.5}), g);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same.pairs[i].bh_index == i);
  CHECK_THROWS_AS(match_by_pfer(curve(Procedure::bonferroni, Metric::fdr, {1, 2, 3}),
                                curve(Procedure::benjamini_hochberg, Metric::fdr, {1, 2, 3}), g),
                  InvalidInput);
}

TEST_CASE("matched indices are nondecreasing for monotone curves") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> step(0.0, 0.01);
  const auto g = build_grid(125.0);
  std::vector<double> bonf(280), bh(280);
  double a = 0, b = 0;
  for (std::size_t i = 0; i < 280; ++i) {
    bonf[i] = (a += step(rng));
    bh[i] = (b += step(rng));
  }
  const auto t = match_by_fdr(curve(Procedure::bonferroni, Metric::fdr, bonf),
                              curve(Procedure::benjamini_hochberg, Metric::fdr, bh), g);
  for (std::size_t j = 1; j < 280; ++j) CHECK(t.pairs[j].bonf_index >= t.pairs[j - 1].bonf_index);
}

TEST_CASE("RankedReplicate agrees with the direct procedures") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> lattice(0, 30);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + rng() % 80;
    const std::size_t m_alt = rng() % (m + 1);
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = (trial % 2 == 0) ? unif(rng) * unif(rng) : lattice(rng) / 300.0;
    }
    const PValueVector p(v);
    const auto truth = GroundTruth::leading_alternatives(m, m_alt);
    const RankedReplicate ranked(p, truth);
    for (const double beta : {0.001, 0.05, 0.2, 0.6}) {
      CHECK(ranked.outcome(Procedure::benjamini_hochberg, beta) == classify(bh_reject(p, {beta}), truth));
    }
    for (const double gamma : {0.01, 0.5, 1.0, static_cast<double>(m)}) {
      CHECK(ranked.outcome(Procedure::bonferroni, gamma) == classify(bonferroni_reject(p, {gamma}), truth));
    }
    // Gamma above m behaves like gamma = m: everything is rejected.
    CHECK(ranked.bonferroni_count(100.0 * static_cast<double>(m)) == m);
  }
}

TEST_CASE("estimate_error_curve") {
  const auto grid = build_grid(125.0);

  SUBCASE("nothing rejected at the smallest threshold") {
    const auto truth = GroundTruth::leading_alternatives(10, 2);
    const std::vector<PValueVector> training{PValueVector(std::vector<double>(10, 0.9)),
                                             PValueVector(std::vector<double>(10, 0.5))};
    const auto c = estimate_error_curve(Procedure::bonferroni, grid, training, truth, Metric::fdr);
    CHECK(c.value(0) == 0.0);
    const auto h = estimate_error_curve(Procedure::benjamini_hochberg, grid, training, truth, Metric::pfer);
    CHECK(h.value(0) == 0.0);
  }

  SUBCASE("rejecting everything gives FDR m0/m") {
    // m = 100 so that gamma = 100 (last grid point) equals m.
    const auto truth = GroundTruth::leading_alternatives(100, 30);
    std::vector<double> v(100);
    for (std::size_t i = 0; i < 100; ++i) v[i] = static_cast<double>(i + 1) / 100.0;
    const std::vector<PValueVector> training{PValueVector(v)};
    const auto c = estimate_error_curve(Procedure::bonferroni, grid, training, truth, Metric::fdr);
    CHECK(c.value(279) == doctest::Approx(0.7));
    CHECK(c.points[279].pfer_hat == 70.0);
    CHECK(c.points[279].fwer_hat == 1.0);
  }

  SUBCASE("errors") {
    const auto truth = GroundTruth::leading_alternatives(10, 2);
    CHECK_THROWS_AS(estimate_error_curve(Procedure::bonferroni, grid, std::vector<PValueVector>{}, truth, Metric::fdr),
                    InvalidInput);
    const std::vector<PValueVector> wrong{PValueVector(std::vector<double>(9, 0.5))};
    CHECK_THROWS_AS(estimate_error_curve(Procedure::bonferroni, grid, wrong, truth, Metric::fdr), InvalidInput);
  }
}
