#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bonfstab/procedures.hpp"

namespace bonfstab {

/// Two groups of log-expression values. Row i of each matrix holds gene i; storage is row-major.
struct TwoGroupDataset {
  std::size_t m = 0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::vector<double> group_a;  // m x n_a
  std::vector<double> group_b;  // m x n_b

  std::span<const double> row_a(std::size_t gene) const {
    return std::span<const double>(group_a).subspan(gene * n_a, n_a);
  }
  std::span<const double> row_b(std::size_t gene) const {
    return std::span<const double>(group_b).subspan(gene * n_b, n_b);
  }

  /// Throws InvalidInput on wrong shapes, n < 2 or non-finite entries.
  void validate() const;
};

/// Equal-variance two-sample Student t statistic, (mean(x) - mean(y)) / sqrt(s_p^2 (1/n_x + 1/n_y)).
/// Throws DegenerateVariance (gene index 0) when the pooled variance is zero.
double pooled_t_statistic(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value 2 P(T_df >= |t|), via I_{df/(df+t^2)}(df/2, 1/2).
double t_pvalue(double t, double df);

/// Regularized incomplete beta I_x(a, b). `y` must equal 1 - x; passing it separately
/// avoids cancellation when x is close to 1.
double regularized_incomplete_beta(double a, double b, double x, double y);

/// Gene-wise pooled t-test p-values with df = n_a + n_b - 2.
PValueVector pvalues_for_dataset(const TwoGroupDataset& d);

}  // namespace bonfstab
