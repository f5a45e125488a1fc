#include "bonfstab/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bonfstab/errors.hpp"

namespace bonfstab {

PValueVector::PValueVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw InvalidInput("p-value vector is empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg << "p-value at index " << i << " is " << v << ", outside [0, 1]";
      throw InvalidInput(msg.str());
    }
  }
}

bool RejectionSet::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

void validate(const BonferroniParam& param, std::size_t m) {
  if (!(param.gamma > 0.0 && param.gamma <= static_cast<double>(m))) {
    std::ostringstream msg;
    msg << "Bonferroni gamma must lie in (0, " << m << "], got " << param.gamma;
    throw InvalidParameter(msg.str());
  }
}

void validate(const BHParam& param) {
  if (!(param.beta > 0.0 && param.beta < 1.0)) {
    std::ostringstream msg;
    msg << "BH beta must lie in (0, 1), got " << param.beta;
    throw InvalidParameter(msg.str());
  }
}

std::vector<std::size_t> stable_rank_order(std::span<const double> p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t lhs, std::size_t rhs) { return p[lhs] < p[rhs]; });
  return order;
}

RejectionSet bonferroni_reject(const PValueVector& p, BonferroniParam param) {
  const std::size_t m = p.size();
  validate(param, m);
  const double cutoff = bonferroni_cutoff(param.gamma, m);

  RejectionSet out{{}, m};
  for (std::size_t i = 0; i < m; ++i) {
    if (p[i] <= cutoff) {
      out.indices.push_back(i);
    }
  }
  return out;
}

RejectionSet bh_reject(const PValueVector& p, BHParam param) {
  validate(param);
  const std::size_t m = p.size();
  const auto order = stable_rank_order(p.values());

  std::size_t k_star = 0;
  for (std::size_t k = m; k >= 1; --k) {
    if (p[order[k - 1]] <= bh_critical_value(k, param.beta, m)) {
      k_star = k;
      break;
    }
  }

  RejectionSet out{{order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k_star)}, m};
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

RejectionSet bh_reject_oracle(const PValueVector& p, BHParam param) {
  validate(param);
  const std::size_t m = p.size();

  // position[i]: 1-based rank of hypothesis i under the (p-value, index) order.
  std::vector<std::size_t> position(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t before = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (p[j] < p[i] || (p[j] == p[i] && j < i)) {
        ++before;
      }
    }
    position[i] = before + 1;
  }

  std::size_t k_star = 0;
  for (std::size_t k = m; k >= 1 && k_star == 0; --k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (position[i] == k) {
        if (p[i] <= bh_critical_value(k, param.beta, m)) {
          k_star = k;
        }
        break;
      }
    }
  }

  RejectionSet out{{}, m};
  for (std::size_t i = 0; i < m; ++i) {
    if (position[i] <= k_star) {
      out.indices.push_back(i);
    }
  }
  return out;
}

}  // namespace bonfstab
