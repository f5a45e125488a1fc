#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bonfstab {

/// Observed p-values of one family of m hypotheses. Values are checked to lie in [0, 1].
class PValueVector {
 public:
  explicit PValueVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Indices of rejected hypotheses, kept sorted ascending.
struct RejectionSet {
  std::vector<std::size_t> indices;
  std::size_t m = 0;

  std::size_t size() const noexcept { return indices.size(); }
  bool contains(std::size_t i) const;
};

/// Nominal PFER bound of the extended Bonferroni rule; legal range is (0, m].
struct BonferroniParam {
  double gamma;
};

/// Nominal FDR level of the Benjamini-Hochberg step-up rule; legal range is (0, 1).
struct BHParam {
  double beta;
};

void validate(const BonferroniParam& param, std::size_t m);
void validate(const BHParam& param);

/// Per-hypothesis cutoff gamma / m. Shared by every code path that applies Bonf^gamma.
inline double bonferroni_cutoff(double gamma, std::size_t m) noexcept {
  return gamma / static_cast<double>(m);
}

/// Step-up critical value k * beta / m for the k-th smallest p-value (k is 1-based).
inline double bh_critical_value(std::size_t k, double beta, std::size_t m) noexcept {
  return static_cast<double>(k) * beta / static_cast<double>(m);
}

/// Rejects exactly {i : p_i <= gamma / m}.
RejectionSet bonferroni_reject(const PValueVector& p, BonferroniParam param);

/// Classical step-up: k* = max{k : p_(k) <= k beta / m}; rejects the k* smallest
/// p-values, with ties ordered by original index.
RejectionSet bh_reject(const PValueVector& p, BHParam param);

/// Quadratic-time reference for bh_reject that never sorts: order statistics and
/// positions are obtained by counting, and every k from m down to 1 is tested.
RejectionSet bh_reject_oracle(const PValueVector& p, BHParam param);

/// Position of each hypothesis in the (p-value, index) order.
std::vector<std::size_t> stable_rank_order(std::span<const double> p);

}  // namespace bonfstab
