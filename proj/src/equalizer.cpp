#include "bonfstab/equalizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bonfstab/errors.hpp"

namespace bonfstab {

std::string_view to_string(Procedure p) {
  return p == Procedure::bonferroni ? "bonferroni" : "bh";
}

std::string_view to_string(Metric m) { return m == Metric::fdr ? "fdr" : "pfer"; }

Metric parse_metric(std::string_view text) {
  if (text == "fdr" || text == "FDR") return Metric::fdr;
  if (text == "pfer" || text == "PFER") return Metric::pfer;
  throw InvalidParameter("unknown metric '" + std::string(text) + "', expected fdr or pfer");
}

Procedure parse_procedure(std::string_view text) {
  if (text == "bonferroni") return Procedure::bonferroni;
  if (text == "bh") return Procedure::benjamini_hochberg;
  throw InvalidParameter("unknown procedure '" + std::string(text) + "'");
}

ThresholdGrid build_grid(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    std::ostringstream msg;
    msg << "grid divisor a must be positive, got " << a;
    throw InvalidParameter(msg.str());
  }
  ThresholdGrid grid;
  grid.a = a;
  grid.gammas.reserve(kGridSize);
  for (int k = 1; k <= 100; ++k) grid.gammas.push_back(k / 100.0);
  for (int k = 11; k <= 100; ++k) grid.gammas.push_back(k / 10.0);
  for (int k = 11; k <= 100; ++k) grid.gammas.push_back(static_cast<double>(k));

  grid.betas.reserve(kGridSize);
  for (const double g : grid.gammas) grid.betas.push_back(g / (a + g));
  return grid;
}

RankedReplicate::RankedReplicate(const PValueVector& p, const GroundTruth& truth) {
  if (p.size() != truth.m()) {
    throw InvalidInput("p-value vector length does not match ground truth");
  }
  const auto order = stable_rank_order(p.values());
  sorted_.resize(order.size());
  alt_prefix_.resize(order.size() + 1);
  alt_prefix_[0] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted_[k] = p[order[k]];
    alt_prefix_[k + 1] = alt_prefix_[k] + (truth.is_alternative(order[k]) ? 1U : 0U);
  }
}

std::size_t RankedReplicate::bonferroni_count(double gamma) const {
  const double cutoff = bonferroni_cutoff(std::min(gamma, static_cast<double>(m())), m());
  return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), cutoff) -
                                  sorted_.begin());
}

std::size_t RankedReplicate::bh_count(double beta) const {
  for (std::size_t k = m(); k >= 1; --k) {
    if (sorted_[k - 1] <= bh_critical_value(k, beta, m())) {
      return k;
    }
  }
  return 0;
}

ReplicateOutcome RankedReplicate::outcome_of_prefix(std::size_t k) const {
  const std::uint32_t s = alt_prefix_.at(k);
  return ReplicateOutcome::from_counts(static_cast<std::uint32_t>(k) - s, s);
}

ReplicateOutcome RankedReplicate::outcome(Procedure p, double threshold) const {
  return outcome_of_prefix(p == Procedure::bonferroni ? bonferroni_count(threshold)
                                                      : bh_count(threshold));
}

double ErrorCurve::value(std::size_t index) const {
  const RateEstimates& r = points.at(index);
  return metric == Metric::fdr ? r.fdr_hat : r.pfer_hat;
}

double ErrorCurve::standard_error(std::size_t index) const {
  const RateEstimates& r = points.at(index);
  return metric == Metric::fdr ? r.se_fdr : r.se_pfer;
}

ErrorCurve estimate_error_curve(Procedure procedure, const ThresholdGrid& grid,
                                std::span<const RankedReplicate> training, Metric metric) {
  if (training.empty()) {
    throw InvalidInput("training set is empty");
  }
  const std::size_t m = training.front().m();
  for (const auto& r : training) {
    if (r.m() != m) throw InvalidInput("training replicates have different lengths");
  }

  ErrorCurve curve;
  curve.procedure = procedure;
  curve.metric = metric;
  curve.points.reserve(grid.size());
  std::vector<ReplicateOutcome> outcomes(training.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double threshold = grid.threshold(procedure, g);
    for (std::size_t r = 0; r < training.size(); ++r) {
      outcomes[r] = training[r].outcome(procedure, threshold);
    }
    curve.points.push_back(aggregate_rates(outcomes, m));
  }
  return curve;
}

ErrorCurve estimate_error_curve(Procedure procedure, const ThresholdGrid& grid,
                                std::span<const PValueVector> training, const GroundTruth& truth,
                                Metric metric) {
  std::vector<RankedReplicate> ranked;
  ranked.reserve(training.size());
  for (const auto& p : training) ranked.emplace_back(p, truth);
  return estimate_error_curve(procedure, grid, ranked, metric);
}

std::size_t nearest_index(std::span<const double> candidates, double target) {
  if (candidates.empty()) throw InvalidInput("no candidates to match against");
  // Distances that differ only by rounding count as ties.
  auto tie_slack = [&](double a, double b) {
    return 64.0 * std::numeric_limits<double>::epsilon() * std::max({std::fabs(target), std::fabs(a), std::fabs(b)});
  };
  std::size_t best = 0;
  double best_distance = std::fabs(target - candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d = std::fabs(target - candidates[i]);
    if (d < best_distance - tie_slack(candidates[i], candidates[best])) {
      best = i;
      best_distance = d;
    }
  }
  return best;
}

namespace {

void check_curves(const ErrorCurve& bonf_curve, const ErrorCurve& bh_curve, const ThresholdGrid& grid,
                  Metric metric) {
  if (bonf_curve.metric != metric || bh_curve.metric != metric) {
    throw InvalidInput("error curves were not estimated for metric " + std::string(to_string(metric)));
  }
  if (bonf_curve.procedure != Procedure::bonferroni ||
      bh_curve.procedure != Procedure::benjamini_hochberg) {
    throw InvalidInput("curves passed in the wrong procedure order");
  }
  if (bonf_curve.points.size() != grid.size() || bh_curve.points.size() != grid.size()) {
    throw InvalidInput("error curve length does not match the grid");
  }
}

std::vector<double> curve_values(const ErrorCurve& curve) {
  std::vector<double> v(curve.points.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = curve.value(i);
  return v;
}

}  // namespace

EqualizationTable match_by_fdr(const ErrorCurve& bonf_curve, const ErrorCurve& bh_curve,
                               const ThresholdGrid& grid) {
  check_curves(bonf_curve, bh_curve, grid, Metric::fdr);
  const auto bonf_values = curve_values(bonf_curve);
  EqualizationTable table;
  table.metric = Metric::fdr;
  table.pairs.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const std::size_t i = nearest_index(bonf_values, bh_curve.value(j));
    table.pairs.push_back({j, i, j, grid.gammas[i], grid.betas[j], bonf_values[i], bh_curve.value(j)});
  }
  return table;
}

EqualizationTable match_by_pfer(const ErrorCurve& bonf_curve, const ErrorCurve& bh_curve,
                                const ThresholdGrid& grid) {
  check_curves(bonf_curve, bh_curve, grid, Metric::pfer);
  const auto bh_values = curve_values(bh_curve);
  EqualizationTable table;
  table.metric = Metric::pfer;
  table.pairs.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t j = nearest_index(bh_values, bonf_curve.value(i));
    table.pairs.push_back({i, i, j, grid.gammas[i], grid.betas[j], bonf_curve.value(i), bh_values[j]});
  }
  return table;
}

EqualizationTable equalize(Metric metric, const ErrorCurve& bonf_curve, const ErrorCurve& bh_curve,
                           const ThresholdGrid& grid) {
  return metric == Metric::fdr ? match_by_fdr(bonf_curve, bh_curve, grid)
                               : match_by_pfer(bonf_curve, bh_curve, grid);
}

}  // namespace bonfstab
