#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include "bonfstab/error_rates.hpp"
#include "bonfstab/ttest.hpp"

namespace bonfstab {

/// Two-group gene-expression model on the log scale. Genes [0, m_alt) are shifted by
/// `delta` in group A; every gene pair shares correlation `rho` through one common
/// normal factor per array.
struct SimulationConfig {
  std::size_t m = 1255;
  std::size_t m_alt = 125;
  std::size_t n = 43;
  double delta = 1.0;
  double rho = 0.0;
  std::size_t replicates = 500;
  std::uint64_t master_seed = 0;

  /// Throws InvalidParameter listing the first violated invariant.
  void validate() const;
};

enum class Group : std::uint64_t { a = 0, b = 1 };

/// Key of the stream that feeds one group of one replicate.
std::uint64_t replicate_stream_key(std::uint64_t master_seed, std::size_t replicate_index, Group group);

/// Replicate `replicate_index` of the model. A pure function of (config, replicate_index).
TwoGroupDataset generate_replicate(const SimulationConfig& config, std::size_t replicate_index);

GroundTruth ground_truth(const SimulationConfig& config);

/// Text dump: a `#`-prefixed config echo, then one row per gene holding the n values of
/// group A followed by the n values of group B, tab separated.
void write_dataset(std::ostream& out, const TwoGroupDataset& data, const SimulationConfig& config,
                   std::size_t replicate_index);

}  // namespace bonfstab
