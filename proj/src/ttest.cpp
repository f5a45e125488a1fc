#include "bonfstab/ttest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bonfstab/errors.hpp"

namespace bonfstab {

namespace {

constexpr double kCfTolerance = 1e-14;
constexpr int kCfMaxIterations = 10000;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int k = 1; k <= kCfMaxIterations; ++k) {
    const double kk = static_cast<double>(k);
    const double m2 = 2.0 * kk;

    double aa = kk * (b - kk) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + kk) * (qab + kk) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kCfTolerance) {
      return h;
    }
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

double variance_sum_of_squares(std::span<const double> v, double& mean) {
  double sum = 0.0;
  for (const double x : v) sum += x;
  mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return ss;
}

// NaN when the pooled variance is zero.
double t_statistic_or_nan(std::span<const double> x, std::span<const double> y) {
  double mx = 0.0;
  double my = 0.0;
  const double ssx = variance_sum_of_squares(x, mx);
  const double ssy = variance_sum_of_squares(y, my);
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  const double pooled = (ssx + ssy) / (nx + ny - 2.0);
  if (!(pooled > 0.0)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return (mx - my) / std::sqrt(pooled * (1.0 / nx + 1.0 / ny));
}

}  // namespace

void TwoGroupDataset::validate() const {
  if (m == 0) throw InvalidInput("dataset has no genes");
  if (n_a < 2 || n_b < 2) throw InvalidInput("each group needs at least two samples");
  if (group_a.size() != m * n_a || group_b.size() != m * n_b) {
    throw InvalidInput("dataset matrix sizes do not match m x n");
  }
  for (const double v : group_a) {
    if (!std::isfinite(v)) throw InvalidInput("dataset contains a non-finite value in group A");
  }
  for (const double v : group_b) {
    if (!std::isfinite(v)) throw InvalidInput("dataset contains a non-finite value in group B");
  }
}

double regularized_incomplete_beta(double a, double b, double x, double y) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidParameter("incomplete beta needs a > 0 and b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidParameter("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (y == 0.0) return 1.0;

  const double log_front =
      a * std::log(x) + b * std::log(y) - (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, y) / b;
}

double t_pvalue(double t, double df) {
  if (!(df >= 1.0)) {
    std::ostringstream msg;
    msg << "degrees of freedom must be >= 1, got " << df;
    throw InvalidParameter(msg.str());
  }
  if (!std::isfinite(t)) throw InvalidParameter("t statistic must be finite");
  const double at = std::fabs(t);
  if (at == 0.0) return 1.0;
  if (df == 1.0) {
    // Cauchy: 2 P(T >= |t|) = (2 / pi) atan(1 / |t|).
    return 2.0 * std::atan(1.0 / at) / std::numbers::pi;
  }
  const double t2 = at * at;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  const double p = regularized_incomplete_beta(0.5 * df, 0.5, x, y);
  return std::min(1.0, std::max(0.0, p));
}

double pooled_t_statistic(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) {
    throw InvalidInput("each sample needs at least two observations");
  }
  const double t = t_statistic_or_nan(x, y);
  if (std::isnan(t)) {
    throw DegenerateVariance(0, "pooled variance is zero");
  }
  return t;
}

PValueVector pvalues_for_dataset(const TwoGroupDataset& d) {
  d.validate();
  const double df = static_cast<double>(d.n_a + d.n_b - 2);
  std::vector<double> p(d.m);
  for (std::size_t i = 0; i < d.m; ++i) {
    const double t = t_statistic_or_nan(d.row_a(i), d.row_b(i));
    if (std::isnan(t)) {
      std::ostringstream msg;
      msg << "pooled variance is zero for gene " << i;
      throw DegenerateVariance(i, msg.str());
    }
    p[i] = t_pvalue(t, df);
  }
  return PValueVector(std::move(p));
}

}  // namespace bonfstab
