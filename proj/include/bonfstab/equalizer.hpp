#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bonfstab/error_rates.hpp"
#include "bonfstab/procedures.hpp"

namespace bonfstab {

enum class Procedure { bonferroni, benjamini_hochberg };
enum class Metric { fdr, pfer };

std::string_view to_string(Procedure p);
std::string_view to_string(Metric m);
Metric parse_metric(std::string_view text);
Procedure parse_procedure(std::string_view text);

/// Gamma grid 0.01(0.01)1, 1.1(0.1)10, 11(1)100 with the matching beta_j = gamma_j / (a + gamma_j).
struct ThresholdGrid {
  std::vector<double> gammas;
  std::vector<double> betas;
  double a = 0.0;

  std::size_t size() const noexcept { return gammas.size(); }
  double threshold(Procedure p, std::size_t index) const {
    return p == Procedure::bonferroni ? gammas.at(index) : betas.at(index);
  }
};

inline constexpr std::size_t kGridSize = 280;

ThresholdGrid build_grid(double a);

/// One replicate's p-values ranked once, so that the outcome of either procedure at any
/// threshold costs a scan of the ranked prefix instead of a fresh sort.
class RankedReplicate {
 public:
  RankedReplicate(const PValueVector& p, const GroundTruth& truth);

  std::size_t m() const noexcept { return sorted_.size(); }

  /// Number of rejections of Bonf^gamma. Gamma above m behaves as gamma = m.
  std::size_t bonferroni_count(double gamma) const;
  /// k* of BH^beta.
  std::size_t bh_count(double beta) const;

  /// Outcome when the `k` smallest p-values are rejected.
  ReplicateOutcome outcome_of_prefix(std::size_t k) const;
  ReplicateOutcome outcome(Procedure p, double threshold) const;

 private:
  std::vector<double> sorted_;
  std::vector<std::uint32_t> alt_prefix_;  // alternatives among the first k ranked hypotheses
};

/// Estimated error rates of one procedure along the grid.
struct ErrorCurve {
  Procedure procedure = Procedure::bonferroni;
  Metric metric = Metric::fdr;
  std::vector<RateEstimates> points;

  double value(std::size_t index) const;
  double standard_error(std::size_t index) const;
};

ErrorCurve estimate_error_curve(Procedure procedure, const ThresholdGrid& grid,
                                std::span<const RankedReplicate> training, Metric metric);

ErrorCurve estimate_error_curve(Procedure procedure, const ThresholdGrid& grid,
                                std::span<const PValueVector> training, const GroundTruth& truth,
                                Metric metric);

/// One row of the correspondence table. `index` is j (FDR: BH grid point matched to a
/// Bonferroni point) or i (PFER: Bonferroni grid point matched to a BH point).
struct MatchedPair {
  std::size_t index = 0;
  std::size_t bonf_index = 0;
  std::size_t bh_index = 0;
  double gamma = 0.0;
  double beta = 0.0;
  double bonf_rate = 0.0;
  double bh_rate = 0.0;
};

struct EqualizationTable {
  Metric metric = Metric::fdr;
  std::vector<MatchedPair> pairs;
};

/// gamma*_j = argmin_i |FDR_BH(beta_j) - FDR_Bonf(gamma_i)|, ties to the smallest i.
EqualizationTable match_by_fdr(const ErrorCurve& bonf_curve, const ErrorCurve& bh_curve,
                               const ThresholdGrid& grid);

/// beta*_i = argmin_j |PFER_Bonf(gamma_i) - PFER_BH(beta_j)|, ties to the smallest j.
EqualizationTable match_by_pfer(const ErrorCurve& bonf_curve, const ErrorCurve& bh_curve,
                                const ThresholdGrid& grid);

EqualizationTable equalize(Metric metric, const ErrorCurve& bonf_curve, const ErrorCurve& bh_curve,
                           const ThresholdGrid& grid);

/// Index of the value in `candidates` closest to `target`; the first wins ties.
std::size_t nearest_index(std::span<const double> candidates, double target);

}  // namespace bonfstab
