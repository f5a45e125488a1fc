#include <doctest.h>

#include <algorithm>
#include <random>

#include "bonfstab/errors.hpp"
#include "bonfstab/metrics.hpp"
#include "oracles.hpp"

using namespace bonfstab;

namespace {

std::vector<ReplicateOutcome> with_s(std::initializer_list<std::uint32_t> s) {
  std::vector<ReplicateOutcome> out;
  for (const auto v : s) out.push_back(ReplicateOutcome::from_counts(0, v));
  return out;
}

}  // namespace

TEST_CASE("summarize examples") {
  const auto flat = summarize(with_s({10, 10, 10}));
  CHECK(flat.mean_S == 10.0);
  CHECK(flat.median_S == 10.0);
  CHECK(flat.sd_S == 0.0);

  const auto four = summarize(with_s({1, 2, 3, 4}));
  CHECK(four.mean_S == 2.5);
  CHECK(four.median_S == 2.5);
  CHECK(four.sd_S == doctest::Approx(1.29099).epsilon(1e-5));
  CHECK(four.se_mean_S == doctest::Approx(1.29099 / 2.0).epsilon(1e-5));

  const auto r = summarize(std::vector<ReplicateOutcome>{ReplicateOutcome::from_counts(0, 0),
                                                         ReplicateOutcome::from_counts(60, 40)});
  CHECK(r.mean_R == 50.0);
  CHECK(r.sd_R == doctest::Approx(70.7107).epsilon(1e-5));
  CHECK(r.mean_R >= r.mean_S);

  CHECK_THROWS_AS(summarize(std::vector<ReplicateOutcome>{}), InvalidInput);
}

TEST_CASE("summarize is permutation invariant") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ReplicateOutcome> outs(1 + rng() % 40);
    for (auto& o : outs) o = ReplicateOutcome::from_counts(rng() % 20, rng() % 20);
    const auto base = summarize(outs);
    std::shuffle(outs.begin(), outs.end(), rng);
    const auto shuffled = summarize(outs);
    CHECK(shuffled.median_S == base.median_S);
    CHECK(shuffled.median_R == base.median_R);
    CHECK(shuffled.mean_R == doctest::Approx(base.mean_R).epsilon(1e-14));
    CHECK(shuffled.sd_S == doctest::Approx(base.sd_S).epsilon(1e-12));
  }
}

TEST_CASE("compare_outcomes examples") {
  const std::vector<std::uint32_t> a{3, 5, 9, 9};
  const auto same = compare_outcomes(a, a);
  CHECK(same.identical_count == 4);
  CHECK(same.bonf_wins == 0);
  CHECK(same.bh_wins == 0);
  REQUIRE(same.pearson_r.has_value());
  CHECK(*same.pearson_r == doctest::Approx(1.0));
  CHECK(same.scatter == std::vector<ScatterPoint>{{3, 3, 1}, {5, 5, 1}, {9, 9, 2}});

  const std::vector<std::uint32_t> x{10, 12};
  const std::vector<std::uint32_t> y{12, 10};
  const auto swap = compare_outcomes(x, y);
  CHECK(swap.identical_count == 0);
  CHECK(swap.bonf_wins == 1);
  CHECK(swap.bh_wins == 1);
  CHECK(*swap.pearson_r == doctest::Approx(-1.0));

  const std::vector<std::uint32_t> constant{4, 4, 4};
  const std::vector<std::uint32_t> varying{1, 4, 7};
  const auto flagged = compare_outcomes(constant, varying);
  CHECK_FALSE(flagged.pearson_r.has_value());
  CHECK(flagged.identical_count == 1);
  CHECK(flagged.bonf_wins == 1);
  CHECK(flagged.bh_wins == 1);

  CHECK_THROWS_AS(compare_outcomes(x, constant), InvalidInput);
  CHECK_THROWS_AS(compare_outcomes(std::vector<std::uint32_t>{}, std::vector<std::uint32_t>{}), InvalidInput);
}

TEST_CASE("compare_outcomes symmetry and tallies") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    std::vector<std::uint32_t> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<std::uint32_t>(rng() % 6);
      b[i] = static_cast<std::uint32_t>(rng() % 6);
    }
    const auto ab = compare_outcomes(a, b);
    const auto ba = compare_outcomes(b, a);
    CHECK(ab.identical_count + ab.bonf_wins + ab.bh_wins == n);
    CHECK(ab.bonf_wins == ba.bh_wins);
    CHECK(ab.bh_wins == ba.bonf_wins);
    CHECK(ab.identical_count == ba.identical_count);
    CHECK(ab.pearson_r.has_value() == ba.pearson_r.has_value());
    if (ab.pearson_r) {
      CHECK(*ab.pearson_r == doctest::Approx(*ba.pearson_r).epsilon(1e-14));
      CHECK(*ab.pearson_r >= -1.0);
      CHECK(*ab.pearson_r <= 1.0);
    }
    std::size_t total = 0;
    for (const auto& p : ab.scatter) total += p.multiplicity;
    CHECK(total == n);
  }
}

TEST_CASE("two-pass Pearson matches a long-double oracle") {
  std::mt19937_64 rng(500);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> xi(500), yi(500);
    std::vector<double> xd(500), yd(500);
    const std::int64_t offset = static_cast<std::int64_t>(rng() % 1000);
    for (std::size_t i = 0; i < 500; ++i) {
      xi[i] = offset + static_cast<std::int64_t>(rng() % 200);
      yi[i] = xi[i] / 2 + static_cast<std::int64_t>(rng() % 150);
      xd[i] = static_cast<double>(xi[i]);
      yd[i] = static_cast<double>(yi[i]);
    }
    const auto r = pearson_correlation(xd, yd);
    REQUIRE(r.has_value());
    CHECK(std::fabs(*r - static_cast<double>(oracle::naive_pearson(xi, yi))) <= 1e-10);
  }
}

TEST_CASE("median and sd helpers") {
  CHECK(median({5.0}) == 5.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK(median({7.0, 1.0, 3.0}) == 3.0);
  CHECK_THROWS_AS(median({}), InvalidInput);
  CHECK(sample_sd(std::vector<double>{3.0}) == 0.0);
}

TEST_CASE("sd_minimum_location") {
  auto with_sd = [](std::initializer_list<double> sds) {
    std::vector<StabilitySummary> out;
    for (const double s : sds) {
      StabilitySummary x;
      x.sd_R = s;
      out.push_back(x);
    }
    return out;
  };
  CHECK(sd_minimum_location(with_sd({5, 3, 4})) == 1);
  CHECK(sd_minimum_location(with_sd({2, 2, 2})) == 0);
  CHECK(sd_minimum_location(with_sd({4, 1, 1})) == 1);
  CHECK_THROWS_AS(sd_minimum_location(std::vector<StabilitySummary>{}), InvalidInput);
}
