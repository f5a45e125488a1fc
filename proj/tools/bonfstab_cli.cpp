// Command-line driver for the equalized Bonferroni / Benjamini-Hochberg simulation study.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bonfstab/config.hpp"
#include "bonfstab/errors.hpp"
#include "bonfstab/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Equalized Bonferroni vs Benjamini-Hochberg stability simulation"};
  app.set_version_flag("--version", std::string(bonfstab::library_version()));

  std::string stage_arg;
  std::string stage_flag;
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> workers;
  std::optional<std::string> metric;
  bool on_training = false;

  app.add_option("command", stage_arg, "grid | train | equalize | evaluate | report | run (default run)");
  app.add_option("--stage", stage_flag, "Same as the positional stage");
  app.add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
  app.add_option("--workers", workers, "Worker threads (overrides workers)")->check(CLI::PositiveNumber);
  app.add_option("--metric", metric, "Equalizing metric (overrides equalize_metric)")
      ->check(CLI::IsMember({"fdr", "pfer"}));
  app.add_flag("--on-training", on_training, "Evaluate on the training set instead of the control set");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!stage_arg.empty() && !stage_flag.empty() && stage_arg != stage_flag) {
      std::cerr << "error: conflicting stages '" << stage_arg << "' and '" << stage_flag << "'\n";
      return 2;
    }
    const std::string stage_name = !stage_flag.empty() ? stage_flag : (!stage_arg.empty() ? stage_arg : "run");
    const bonfstab::Stage stage = bonfstab::parse_stage(stage_name);

    bonfstab::PipelineConfig config = bonfstab::load_config(config_path);
    if (out_dir) config.output_dir = *out_dir;
    if (workers) config.workers = *workers;
    if (metric) config.equalize_metric = bonfstab::parse_metric(*metric);
    if (on_training) config.evaluate_on_training = true;

    bonfstab::run_stage(stage, config);
  } catch (const bonfstab::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bonfstab::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
