#include "bonfstab/error_rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bonfstab/errors.hpp"

namespace bonfstab {

GroundTruth::GroundTruth(std::size_t m, std::vector<std::size_t> alternative_indices)
    : is_alternative_(m, 0) {
  for (const std::size_t i : alternative_indices) {
    if (i >= m) {
      std::ostringstream msg;
      msg << "alternative index " << i << " is out of range for m = " << m;
      throw InvalidInput(msg.str());
    }
    if (is_alternative_[i] == 0) {
      is_alternative_[i] = 1;
      ++m_alt_;
    }
  }
}

GroundTruth GroundTruth::leading_alternatives(std::size_t m, std::size_t m_alt) {
  if (m_alt > m) {
    throw InvalidInput("number of alternatives exceeds m");
  }
  std::vector<std::size_t> alt(m_alt);
  for (std::size_t i = 0; i < m_alt; ++i) {
    alt[i] = i;
  }
  return GroundTruth(m, std::move(alt));
}

GroundTruth GroundTruth::complete_null(std::size_t m) { return GroundTruth(m, {}); }

ReplicateOutcome ReplicateOutcome::from_counts(std::uint32_t false_discoveries,
                                               std::uint32_t true_discoveries) {
  ReplicateOutcome out;
  out.V = false_discoveries;
  out.S = true_discoveries;
  out.R = false_discoveries + true_discoveries;
  out.eta = out.R > 0 ? static_cast<double>(out.V) / static_cast<double>(out.R) : 0.0;
  return out;
}

ReplicateOutcome classify(const RejectionSet& rejections, const GroundTruth& truth) {
  if (rejections.m != truth.m()) {
    std::ostringstream msg;
    msg << "rejection set refers to m = " << rejections.m << " but ground truth has m = " << truth.m();
    throw InvalidInput(msg.str());
  }
  std::uint32_t v = 0;
  std::uint32_t s = 0;
  for (const std::size_t i : rejections.indices) {
    if (truth.is_alternative(i)) {
      ++s;
    } else {
      ++v;
    }
  }
  return ReplicateOutcome::from_counts(v, s);
}

MeanAndError mean_and_se(std::span<const double> values) {
  MeanAndError out;
  const std::size_t n = values.size();
  if (n == 0) {
    return out;
  }
  double sum = 0.0;
  for (const double v : values) {
    sum += v;
  }
  out.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (const double v : values) {
      ss += (v - out.mean) * (v - out.mean);
    }
    const double var = ss / static_cast<double>(n - 1);
    out.se = std::sqrt(var / static_cast<double>(n));
  }
  return out;
}

RateEstimates aggregate_rates(std::span<const ReplicateOutcome> outcomes, std::size_t m) {
  if (outcomes.empty()) {
    throw InvalidInput("cannot aggregate an empty set of replicate outcomes");
  }
  if (m == 0) {
    throw InvalidInput("m must be positive");
  }
  const std::size_t n = outcomes.size();
  std::vector<double> eta(n);
  std::vector<double> v(n);
  std::size_t any_false = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (outcomes[r].V > m) {
      throw InvalidInput("replicate outcome has more false discoveries than hypotheses");
    }
    eta[r] = outcomes[r].eta;
    v[r] = static_cast<double>(outcomes[r].V);
    if (outcomes[r].V >= 1) {
      ++any_false;
    }
  }

  const MeanAndError fdr = mean_and_se(eta);
  const MeanAndError pfer = mean_and_se(v);

  RateEstimates out;
  out.fdr_hat = fdr.mean;
  out.se_fdr = fdr.se;
  out.pfer_hat = pfer.mean;
  out.se_pfer = pfer.se;
  out.fwer_hat = static_cast<double>(any_false) / static_cast<double>(n);
  out.pcer_hat = out.pfer_hat / static_cast<double>(m);
  out.replicates = n;
  return out;
}

}  // namespace bonfstab
