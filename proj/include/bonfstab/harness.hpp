#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

#include "bonfstab/config.hpp"
#include "bonfstab/equalizer.hpp"
#include "bonfstab/metrics.hpp"

namespace bonfstab {

enum class Stage { grid, train, equalize, evaluate, report, run };

Stage parse_stage(std::string_view text);

namespace files {
inline constexpr std::string_view grid = "grid.tsv";
inline constexpr std::string_view curve_bonferroni = "curve_bonferroni.tsv";
inline constexpr std::string_view curve_bh = "curve_bh.tsv";
inline constexpr std::string_view equalization = "equalization.tsv";
inline constexpr std::string_view summary = "summary.tsv";
inline constexpr std::string_view outcomes = "outcomes.tsv";
inline constexpr std::string_view comparison = "comparison.tsv";
inline constexpr std::string_view scatter = "scatter.tsv";
inline constexpr std::string_view sd_minimum = "sd_minimum.tsv";
inline constexpr std::string_view manifest = "manifest.txt";
}  // namespace files

/// Simulates every replicate of `sim`, runs the t-tests and ranks the p-values.
/// Replicates are spread over `workers` threads; the result does not depend on that count.
std::vector<RankedReplicate> simulate_ranked_set(const SimulationConfig& sim, std::size_t workers);

struct TrainingResult {
  ErrorCurve bonferroni;
  ErrorCurve bh;
};

TrainingResult train(const ThresholdGrid& grid, std::span<const RankedReplicate> training, Metric metric);

/// Both procedures applied at every matched pair of the table.
struct Evaluation {
  EqualizationTable table;
  std::size_t m = 0;
  // outcomes[pair][replicate]
  std::vector<std::vector<ReplicateOutcome>> bonferroni;
  std::vector<std::vector<ReplicateOutcome>> bh;

  std::size_t replicates() const { return bonferroni.empty() ? 0 : bonferroni.front().size(); }
};

Evaluation evaluate(const EqualizationTable& table, std::span<const RankedReplicate> set, std::size_t workers);

struct PairStatistics {
  StabilitySummary bonferroni;
  StabilitySummary bh;
  RateEstimates bonferroni_rates;
  RateEstimates bh_rates;
};

std::vector<PairStatistics> pair_statistics(const Evaluation& evaluation);

/// Pair whose control FDR estimate, averaged over the two procedures, is closest to `fdr`.
std::size_t pair_nearest_fdr(std::span<const PairStatistics> stats, double fdr);

std::size_t resolve_selector(const ScatterSelector& selector, const EqualizationTable& table,
                             std::span<const PairStatistics> stats);

struct Report {
  std::vector<PairStatistics> stats;
  std::vector<ComparisonStats> comparisons;  // one per pair
  std::vector<std::size_t> scatter_pairs;    // one per selector
  std::size_t sd_min_bonferroni = 0;
  std::size_t sd_min_bh = 0;
};

Report build_report(const PipelineConfig& config, const Evaluation& evaluation);

// File formats. Every writer produces the whole file in one go.
void write_grid(const std::filesystem::path& path, const ThresholdGrid& grid);
ThresholdGrid read_grid(const std::filesystem::path& path);
void write_curve(const std::filesystem::path& path, const ThresholdGrid& grid, const ErrorCurve& curve);
ErrorCurve read_curve(const std::filesystem::path& path, Procedure procedure, Metric metric);
void write_equalization(const std::filesystem::path& path, const EqualizationTable& table);
EqualizationTable read_equalization(const std::filesystem::path& path);
void write_evaluation(const std::filesystem::path& dir, const Evaluation& evaluation);
Evaluation read_evaluation(const std::filesystem::path& dir);
void write_report(const std::filesystem::path& dir, const PipelineConfig& config,
                  const Evaluation& evaluation, const Report& report);

/// Runs a single stage, reading earlier stages' files from the output directory as needed.
void run_stage(Stage stage, const PipelineConfig& config);

/// Every stage in order plus the run manifest.
void run_pipeline(const PipelineConfig& config);

}  // namespace bonfstab
