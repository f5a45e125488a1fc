#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bonfstab/procedures.hpp"

namespace bonfstab {

/// Which hypotheses are false nulls.
class GroundTruth {
 public:
  GroundTruth(std::size_t m, std::vector<std::size_t> alternative_indices);

  /// Alternatives occupy [0, m_alt).
  static GroundTruth leading_alternatives(std::size_t m, std::size_t m_alt);
  static GroundTruth complete_null(std::size_t m);

  std::size_t m() const noexcept { return is_alternative_.size(); }
  std::size_t m_alt() const noexcept { return m_alt_; }
  std::size_t m0() const noexcept { return m() - m_alt_; }
  bool is_alternative(std::size_t i) const { return is_alternative_.at(i) != 0; }

 private:
  std::vector<std::uint8_t> is_alternative_;
  std::size_t m_alt_ = 0;
};

/// Counts for one replicate: V false discoveries, S true discoveries, R = V + S, eta = V / R (0 when R = 0).
struct ReplicateOutcome {
  std::uint32_t V = 0;
  std::uint32_t S = 0;
  std::uint32_t R = 0;
  double eta = 0.0;

  static ReplicateOutcome from_counts(std::uint32_t false_discoveries, std::uint32_t true_discoveries);

  friend bool operator==(const ReplicateOutcome&, const ReplicateOutcome&) = default;
};

struct RateEstimates {
  double fdr_hat = 0.0;
  double pfer_hat = 0.0;
  double fwer_hat = 0.0;
  double pcer_hat = 0.0;
  double se_fdr = 0.0;
  double se_pfer = 0.0;
  std::size_t replicates = 0;
};

ReplicateOutcome classify(const RejectionSet& rejections, const GroundTruth& truth);

/// Sample means over replicates; standard errors use the n-1 variance and are 0 for a single replicate.
RateEstimates aggregate_rates(std::span<const ReplicateOutcome> outcomes, std::size_t m);

/// Sample mean and standard error of the mean (n-1 variance; zero SE when n == 1).
struct MeanAndError {
  double mean = 0.0;
  double se = 0.0;
};
MeanAndError mean_and_se(std::span<const double> values);

}  // namespace bonfstab
