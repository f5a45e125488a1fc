#include "bonfstab/simulator.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "bonfstab/errors.hpp"
#include "bonfstab/random.hpp"
#include "bonfstab/tsv.hpp"

namespace bonfstab {

void SimulationConfig::validate() const {
  std::ostringstream msg;
  if (m == 0) {
    msg << "m must be positive";
  } else if (m_alt == 0 || m_alt > m) {
    msg << "m_alt must lie in (0, m], got " << m_alt;
  } else if (n < 2) {
    msg << "n must be at least 2, got " << n;
  } else if (!std::isfinite(delta)) {
    msg << "delta must be finite";
  } else if (!(rho >= 0.0 && rho < 1.0)) {
    msg << "rho must lie in [0, 1), got " << rho;
  } else if (replicates == 0) {
    msg << "replicates must be at least 1";
  } else {
    return;
  }
  throw InvalidParameter(msg.str());
}

std::uint64_t replicate_stream_key(std::uint64_t master_seed, std::size_t replicate_index, Group group) {
  return derive_stream_key({master_seed, static_cast<std::uint64_t>(replicate_index),
                            static_cast<std::uint64_t>(group)});
}

namespace {

// Draws the n shared factors first, then the m x n idiosyncratic terms gene by gene.
void fill_group(std::vector<double>& out, const SimulationConfig& config, std::size_t replicate_index,
                Group group, double shift) {
  NormalStream normal(replicate_stream_key(config.master_seed, replicate_index, group));
  const std::size_t n = config.n;
  const double shared_weight = std::sqrt(config.rho);
  const double own_weight = std::sqrt(1.0 - config.rho);

  std::vector<double> shared(n);
  for (auto& w : shared) {
    w = shared_weight * normal();
  }
  out.resize(config.m * n);
  for (std::size_t gene = 0; gene < config.m; ++gene) {
    const double mean = gene < config.m_alt ? shift : 0.0;
    double* row = out.data() + gene * n;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = mean + shared[j] + own_weight * normal();
    }
  }
}

}  // namespace

TwoGroupDataset generate_replicate(const SimulationConfig& config, std::size_t replicate_index) {
  config.validate();
  if (replicate_index >= config.replicates) {
    std::ostringstream msg;
    msg << "replicate index " << replicate_index << " is out of range for " << config.replicates
        << " replicates";
    throw InvalidInput(msg.str());
  }
  TwoGroupDataset d;
  d.m = config.m;
  d.n_a = config.n;
  d.n_b = config.n;
  fill_group(d.group_a, config, replicate_index, Group::a, config.delta);
  fill_group(d.group_b, config, replicate_index, Group::b, 0.0);
  return d;
}

GroundTruth ground_truth(const SimulationConfig& config) {
  return GroundTruth::leading_alternatives(config.m, config.m_alt);
}

void write_dataset(std::ostream& out, const TwoGroupDataset& data, const SimulationConfig& config,
                   std::size_t replicate_index) {
  out << "# m=" << config.m << " m_alt=" << config.m_alt << " n=" << config.n
      << " delta=" << format_number(config.delta) << " rho=" << format_number(config.rho)
      << " master_seed=" << config.master_seed << " replicate=" << replicate_index << '\n';
  out << "# columns: gene, group A arrays 1..n, group B arrays 1..n\n";
  for (std::size_t gene = 0; gene < data.m; ++gene) {
    out << gene;
    for (const double v : data.row_a(gene)) out << '\t' << format_number(v);
    for (const double v : data.row_b(gene)) out << '\t' << format_number(v);
    out << '\n';
  }
}

}  // namespace bonfstab
