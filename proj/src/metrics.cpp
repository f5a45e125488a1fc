#include "bonfstab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "bonfstab/errors.hpp"

namespace bonfstab {

double sample_mean(std::span<const double> v) {
  if (v.empty()) throw InvalidInput("mean of an empty sequence");
  double sum = 0.0;
  for (const double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double mean = sample_mean(v);
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) {
  if (v.empty()) throw InvalidInput("median of an empty sequence");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::optional<double> pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw InvalidInput("correlation needs two nonempty sequences of equal length");
  }
  const double mx = sample_mean(x);
  const double my = sample_mean(y);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

StabilitySummary summarize(std::span<const ReplicateOutcome> outcomes) {
  if (outcomes.empty()) throw InvalidInput("cannot summarize an empty set of outcomes");
  const std::size_t n = outcomes.size();
  std::vector<double> s(n);
  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = outcomes[k].S;
    r[k] = outcomes[k].R;
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  StabilitySummary out;
  out.replicates = n;
  out.mean_S = sample_mean(s);
  out.median_S = median(s);
  out.sd_S = sample_sd(s);
  out.se_mean_S = out.sd_S / root_n;
  out.mean_R = sample_mean(r);
  out.median_R = median(r);
  out.sd_R = sample_sd(r);
  out.se_mean_R = out.sd_R / root_n;
  return out;
}

ComparisonStats compare_outcomes(std::span<const std::uint32_t> r_bonf, std::span<const std::uint32_t> r_bh) {
  if (r_bonf.size() != r_bh.size() || r_bonf.empty()) {
    throw InvalidInput("comparison needs two nonempty count sequences of equal length");
  }
  ComparisonStats out;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> counts;
  for (std::size_t k = 0; k < r_bonf.size(); ++k) {
    if (r_bonf[k] == r_bh[k]) {
      ++out.identical_count;
    } else if (r_bonf[k] > r_bh[k]) {
      ++out.bonf_wins;
    } else {
      ++out.bh_wins;
    }
    ++counts[{r_bonf[k], r_bh[k]}];
  }
  for (const auto& [point, multiplicity] : counts) {
    out.scatter.push_back({point.first, point.second, multiplicity});
  }
  const std::vector<double> x(r_bonf.begin(), r_bonf.end());
  const std::vector<double> y(r_bh.begin(), r_bh.end());
  out.pearson_r = pearson_correlation(x, y);
  return out;
}

std::size_t sd_minimum_location(std::span<const StabilitySummary> summaries) {
  if (summaries.empty()) throw InvalidInput("no summaries to search");
  std::size_t best = 0;
  for (std::size_t i = 1; i < summaries.size(); ++i) {
    if (summaries[i].sd_R < summaries[best].sd_R) best = i;
  }
  return best;
}

}  // namespace bonfstab
