#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bonfstab/equalizer.hpp"
#include "bonfstab/simulator.hpp"

namespace bonfstab {

/// Chooses which matched pairs get scatter data in the report.
struct ScatterSelector {
  enum class Kind { grid_index, thresholds, nearest_fdr };

  Kind kind = Kind::nearest_fdr;
  std::size_t index = 0;  // grid_index
  double gamma = 0.0;     // thresholds
  double beta = 0.0;      // thresholds
  double fdr = 0.04;      // nearest_fdr

  /// Stable textual form, e.g. "index:150", "gamma:2,beta:0.0157", "fdr:0.04".
  std::string describe() const;
};

struct PipelineConfig {
  SimulationConfig simulation;  // master_seed is replaced by the training/control seed per set
  Metric equalize_metric = Metric::fdr;
  double a = 125.0;
  std::uint64_t training_seed = 1;
  std::uint64_t control_seed = 2;
  std::filesystem::path output_dir = "bonfstab-out";
  std::vector<ScatterSelector> scatter{ScatterSelector{}};
  std::size_t scatter_min_multiplicity = 10;
  std::size_t workers = 1;
  bool evaluate_on_training = false;
  std::size_t dump_replicates = 0;

  SimulationConfig training_simulation() const;
  SimulationConfig evaluation_simulation() const;
};

/// Applies defaults and checks every field, throwing one ValidationError that lists all
/// violations by field path (e.g. "simulation.rho").
PipelineConfig validate_config(const nlohmann::json& raw);

/// Reads and validates a JSON config file. Parse errors surface as ValidationError.
PipelineConfig load_config(const std::filesystem::path& path);

/// Flat `key=value` lines covering every setting that can change results. Worker count and
/// output location are left out, so runs differing only in those have identical manifests.
std::string render_manifest(const PipelineConfig& config);

std::string_view library_version();

}  // namespace bonfstab
