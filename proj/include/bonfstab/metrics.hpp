#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bonfstab/error_rates.hpp"

namespace bonfstab {

/// Spread of true (S) and total (R) discoveries at one threshold.
struct StabilitySummary {
  std::size_t replicates = 0;
  double mean_S = 0.0;
  double median_S = 0.0;
  double sd_S = 0.0;
  double se_mean_S = 0.0;
  double mean_R = 0.0;
  double median_R = 0.0;
  double sd_R = 0.0;
  double se_mean_R = 0.0;
};

struct ScatterPoint {
  std::uint32_t r_bonf = 0;
  std::uint32_t r_bh = 0;
  std::size_t multiplicity = 0;

  friend bool operator==(const ScatterPoint&, const ScatterPoint&) = default;
};

struct ComparisonStats {
  std::optional<double> pearson_r;  // empty when either sequence is constant
  std::size_t identical_count = 0;
  std::size_t bonf_wins = 0;
  std::size_t bh_wins = 0;
  std::vector<ScatterPoint> scatter;  // sorted by (r_bonf, r_bh)
};

double sample_mean(std::span<const double> v);
/// n-1 denominator; 0 for fewer than two values.
double sample_sd(std::span<const double> v);
/// Midpoint of the two central order statistics for even sizes.
double median(std::vector<double> v);

/// Two-pass Pearson correlation; empty when either input has zero variance.
std::optional<double> pearson_correlation(std::span<const double> x, std::span<const double> y);

StabilitySummary summarize(std::span<const ReplicateOutcome> outcomes);

ComparisonStats compare_outcomes(std::span<const std::uint32_t> r_bonf, std::span<const std::uint32_t> r_bh);

/// Grid index with the smallest sd_R; the first wins ties.
std::size_t sd_minimum_location(std::span<const StabilitySummary> summaries);

}  // namespace bonfstab
