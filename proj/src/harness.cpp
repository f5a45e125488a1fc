#include "bonfstab/harness.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include "bonfstab/errors.hpp"
#include "bonfstab/parallel.hpp"
#include "bonfstab/simulator.hpp"
#include "bonfstab/tsv.hpp"
#include "bonfstab/ttest.hpp"

namespace bonfstab {

namespace fs = std::filesystem;

Stage parse_stage(std::string_view text) {
  if (text == "grid") return Stage::grid;
  if (text == "train") return Stage::train;
  if (text == "equalize") return Stage::equalize;
  if (text == "evaluate") return Stage::evaluate;
  if (text == "report") return Stage::report;
  if (text == "run") return Stage::run;
  throw InvalidParameter("unknown stage '" + std::string(text) +
                         "', expected grid, train, equalize, evaluate, report or run");
}

std::vector<RankedReplicate> simulate_ranked_set(const SimulationConfig& sim, std::size_t workers) {
  sim.validate();
  const GroundTruth truth = ground_truth(sim);
  std::vector<std::optional<RankedReplicate>> slots(sim.replicates);
  parallel_for(sim.replicates, workers, [&](std::size_t r) {
    const TwoGroupDataset data = generate_replicate(sim, r);
    slots[r].emplace(pvalues_for_dataset(data), truth);
  });
  std::vector<RankedReplicate> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

TrainingResult train(const ThresholdGrid& grid, std::span<const RankedReplicate> training, Metric metric) {
  return {estimate_error_curve(Procedure::bonferroni, grid, training, metric),
          estimate_error_curve(Procedure::benjamini_hochberg, grid, training, metric)};
}

Evaluation evaluate(const EqualizationTable& table, std::span<const RankedReplicate> set, std::size_t workers) {
  if (set.empty()) throw InvalidInput("evaluation set is empty");
  Evaluation ev;
  ev.table = table;
  ev.m = set.front().m();
  const std::size_t pairs = table.pairs.size();
  ev.bonferroni.assign(pairs, std::vector<ReplicateOutcome>(set.size()));
  ev.bh.assign(pairs, std::vector<ReplicateOutcome>(set.size()));
  parallel_for(set.size(), workers, [&](std::size_t r) {
    for (std::size_t k = 0; k < pairs; ++k) {
      ev.bonferroni[k][r] = set[r].outcome(Procedure::bonferroni, table.pairs[k].gamma);
      ev.bh[k][r] = set[r].outcome(Procedure::benjamini_hochberg, table.pairs[k].beta);
    }
  });
  return ev;
}

std::vector<PairStatistics> pair_statistics(const Evaluation& ev) {
  std::vector<PairStatistics> out;
  out.reserve(ev.table.pairs.size());
  for (std::size_t k = 0; k < ev.table.pairs.size(); ++k) {
    out.push_back({summarize(ev.bonferroni[k]), summarize(ev.bh[k]), aggregate_rates(ev.bonferroni[k], ev.m),
                   aggregate_rates(ev.bh[k], ev.m)});
  }
  return out;
}

std::size_t pair_nearest_fdr(std::span<const PairStatistics> stats, double fdr) {
  std::vector<double> achieved(stats.size());
  for (std::size_t k = 0; k < stats.size(); ++k) {
    achieved[k] = 0.5 * (stats[k].bonferroni_rates.fdr_hat + stats[k].bh_rates.fdr_hat);
  }
  return nearest_index(achieved, fdr);
}

std::size_t resolve_selector(const ScatterSelector& selector, const EqualizationTable& table,
                             std::span<const PairStatistics> stats) {
  switch (selector.kind) {
    case ScatterSelector::Kind::grid_index:
      if (selector.index >= table.pairs.size()) {
        throw InvalidParameter("scatter index " + std::to_string(selector.index) + " is beyond the table");
      }
      return selector.index;
    case ScatterSelector::Kind::thresholds: {
      std::size_t best = 0;
      double best_distance = INFINITY;
      for (std::size_t k = 0; k < table.pairs.size(); ++k) {
        const double d = std::fabs(std::log(table.pairs[k].gamma / selector.gamma)) +
                         std::fabs(std::log(table.pairs[k].beta / selector.beta));
        if (d < best_distance) {
          best = k;
          best_distance = d;
        }
      }
      return best;
    }
    case ScatterSelector::Kind::nearest_fdr:
      break;
  }
  return pair_nearest_fdr(stats, selector.fdr);
}

Report build_report(const PipelineConfig& config, const Evaluation& ev) {
  Report rep;
  rep.stats = pair_statistics(ev);
  rep.comparisons.reserve(ev.table.pairs.size());
  std::vector<std::uint32_t> r_bonf(ev.replicates());
  std::vector<std::uint32_t> r_bh(ev.replicates());
  for (std::size_t k = 0; k < ev.table.pairs.size(); ++k) {
    for (std::size_t r = 0; r < ev.replicates(); ++r) {
      r_bonf[r] = ev.bonferroni[k][r].R;
      r_bh[r] = ev.bh[k][r].R;
    }
    rep.comparisons.push_back(compare_outcomes(r_bonf, r_bh));
  }
  for (const auto& sel : config.scatter) {
    rep.scatter_pairs.push_back(resolve_selector(sel, ev.table, rep.stats));
  }
  std::vector<StabilitySummary> bonf(rep.stats.size());
  std::vector<StabilitySummary> bh(rep.stats.size());
  for (std::size_t k = 0; k < rep.stats.size(); ++k) {
    bonf[k] = rep.stats[k].bonferroni;
    bh[k] = rep.stats[k].bh;
  }
  rep.sd_min_bonferroni = sd_minimum_location(bonf);
  rep.sd_min_bh = sd_minimum_location(bh);
  return rep;
}

// --- file formats -----------------------------------------------------------

void write_grid(const fs::path& path, const ThresholdGrid& grid) {
  TableWriter w({"index", "gamma", "beta", "a"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    w.cell(i).cell(grid.gammas[i]).cell(grid.betas[i]).cell(grid.a).end_row();
  }
  write_text_file(path, w.str());
}

ThresholdGrid read_grid(const fs::path& path) {
  const Table t = read_table(path);
  if (t.rows.empty()) throw InvalidInput(path.string() + ": grid has no rows");
  ThresholdGrid grid;
  grid.a = t.number(0, "a");
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.count(r, "index") != r) throw InvalidInput(path.string() + ": grid rows out of order");
    grid.gammas.push_back(t.number(r, "gamma"));
    grid.betas.push_back(t.number(r, "beta"));
  }
  return grid;
}

void write_curve(const fs::path& path, const ThresholdGrid& grid, const ErrorCurve& curve) {
  TableWriter w({"index", "procedure", "threshold", "replicates", "fdr_hat", "se_fdr", "pfer_hat", "se_pfer",
                 "fwer_hat", "pcer_hat"});
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const RateEstimates& e = curve.points[i];
    w.cell(i)
        .cell(to_string(curve.procedure))
        .cell(grid.threshold(curve.procedure, i))
        .cell(e.replicates)
        .cell(e.fdr_hat)
        .cell(e.se_fdr)
        .cell(e.pfer_hat)
        .cell(e.se_pfer)
        .cell(e.fwer_hat)
        .cell(e.pcer_hat)
        .end_row();
  }
  write_text_file(path, w.str());
}

ErrorCurve read_curve(const fs::path& path, Procedure procedure, Metric metric) {
  const Table t = read_table(path);
  ErrorCurve curve;
  curve.procedure = procedure;
  curve.metric = metric;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (parse_procedure(t.text(r, "procedure")) != procedure) {
      throw InvalidInput(path.string() + ": curve belongs to another procedure");
    }
    RateEstimates e;
    e.replicates = t.count(r, "replicates");
    e.fdr_hat = t.number(r, "fdr_hat");
    e.se_fdr = t.number(r, "se_fdr");
    e.pfer_hat = t.number(r, "pfer_hat");
    e.se_pfer = t.number(r, "se_pfer");
    e.fwer_hat = t.number(r, "fwer_hat");
    e.pcer_hat = t.number(r, "pcer_hat");
    curve.points.push_back(e);
  }
  return curve;
}

void write_equalization(const fs::path& path, const EqualizationTable& table) {
  if (table.metric == Metric::fdr) {
    TableWriter w({"j", "beta_j", "gamma_star_j", "fdr_hat_bh", "fdr_hat_bonf", "bh_index", "bonf_index"});
    for (const auto& p : table.pairs) {
      w.cell(p.index).cell(p.beta).cell(p.gamma).cell(p.bh_rate).cell(p.bonf_rate).cell(p.bh_index).cell(p.bonf_index);
      w.end_row();
    }
    write_text_file(path, w.str());
  } else {
    TableWriter w({"i", "gamma_i", "beta_star_i", "pfer_hat_bonf", "pfer_hat_bh", "bonf_index", "bh_index"});
    for (const auto& p : table.pairs) {
      w.cell(p.index).cell(p.gamma).cell(p.beta).cell(p.bonf_rate).cell(p.bh_rate).cell(p.bonf_index).cell(p.bh_index);
      w.end_row();
    }
    write_text_file(path, w.str());
  }
}

EqualizationTable read_equalization(const fs::path& path) {
  const Table t = read_table(path);
  EqualizationTable table;
  if (t.header.empty()) throw InvalidInput(path.string() + ": empty header");
  table.metric = t.header.front() == "j" ? Metric::fdr : Metric::pfer;
  const bool fdr = table.metric == Metric::fdr;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    MatchedPair p;
    p.index = t.count(r, fdr ? "j" : "i");
    p.gamma = t.number(r, fdr ? "gamma_star_j" : "gamma_i");
    p.beta = t.number(r, fdr ? "beta_j" : "beta_star_i");
    p.bonf_rate = t.number(r, fdr ? "fdr_hat_bonf" : "pfer_hat_bonf");
    p.bh_rate = t.number(r, fdr ? "fdr_hat_bh" : "pfer_hat_bh");
    p.bonf_index = t.count(r, "bonf_index");
    p.bh_index = t.count(r, "bh_index");
    table.pairs.push_back(p);
  }
  return table;
}

namespace {

void summary_cells(TableWriter& w, const StabilitySummary& s, const RateEstimates& e) {
  w.cell(s.replicates)
      .cell(s.mean_S)
      .cell(s.median_S)
      .cell(s.sd_S)
      .cell(s.se_mean_S)
      .cell(s.mean_R)
      .cell(s.median_R)
      .cell(s.sd_R)
      .cell(s.se_mean_R)
      .cell(e.fdr_hat)
      .cell(e.se_fdr)
      .cell(e.pfer_hat)
      .cell(e.se_pfer)
      .cell(e.fwer_hat)
      .cell(e.pcer_hat);
}

}  // namespace

void write_evaluation(const fs::path& dir, const Evaluation& ev) {
  const auto stats = pair_statistics(ev);
  TableWriter summary({"pair", "procedure", "threshold", "replicates", "mean_S", "median_S", "sd_S",
                       "se_mean_S", "mean_R", "median_R", "sd_R", "se_mean_R", "fdr_hat", "se_fdr",
                       "pfer_hat", "se_pfer", "fwer_hat", "pcer_hat", "m"});
  for (std::size_t k = 0; k < stats.size(); ++k) {
    summary.cell(k).cell(to_string(Procedure::bonferroni)).cell(ev.table.pairs[k].gamma);
    summary_cells(summary, stats[k].bonferroni, stats[k].bonferroni_rates);
    summary.cell(ev.m).end_row();
    summary.cell(k).cell(to_string(Procedure::benjamini_hochberg)).cell(ev.table.pairs[k].beta);
    summary_cells(summary, stats[k].bh, stats[k].bh_rates);
    summary.cell(ev.m).end_row();
  }
  write_text_file(dir / files::summary, summary.str());

  TableWriter outcomes({"pair", "replicate", "s_bonf", "r_bonf", "s_bh", "r_bh"});
  for (std::size_t k = 0; k < ev.bonferroni.size(); ++k) {
    for (std::size_t r = 0; r < ev.replicates(); ++r) {
      outcomes.cell(k)
          .cell(r)
          .cell(std::size_t{ev.bonferroni[k][r].S})
          .cell(std::size_t{ev.bonferroni[k][r].R})
          .cell(std::size_t{ev.bh[k][r].S})
          .cell(std::size_t{ev.bh[k][r].R});
      outcomes.end_row();
    }
  }
  write_text_file(dir / files::outcomes, outcomes.str());
}

Evaluation read_evaluation(const fs::path& dir) {
  Evaluation ev;
  ev.table = read_equalization(dir / files::equalization);
  const Table summary = read_table(dir / files::summary);
  if (summary.rows.empty()) throw InvalidInput((dir / files::summary).string() + ": no rows");
  ev.m = summary.count(0, "m");

  const fs::path outcomes_path = dir / files::outcomes;
  const Table t = read_table(outcomes_path);
  const std::size_t pairs = ev.table.pairs.size();
  if (pairs == 0 || t.rows.size() % pairs != 0) {
    throw InvalidInput(outcomes_path.string() + ": row count does not match the equalization table");
  }
  const std::size_t reps = t.rows.size() / pairs;
  ev.bonferroni.assign(pairs, std::vector<ReplicateOutcome>(reps));
  ev.bh.assign(pairs, std::vector<ReplicateOutcome>(reps));
  auto outcome = [&](std::size_t row, std::string_view s_col, std::string_view r_col) {
    const std::size_t s = t.count(row, s_col);
    const std::size_t r = t.count(row, r_col);
    if (s > r) throw InvalidInput(outcomes_path.string() + ": S exceeds R");
    return ReplicateOutcome::from_counts(static_cast<std::uint32_t>(r - s), static_cast<std::uint32_t>(s));
  };
  for (std::size_t row = 0; row < t.rows.size(); ++row) {
    const std::size_t k = t.count(row, "pair");
    const std::size_t r = t.count(row, "replicate");
    if (k >= pairs || r >= reps) throw InvalidInput(outcomes_path.string() + ": index out of range");
    ev.bonferroni[k][r] = outcome(row, "s_bonf", "r_bonf");
    ev.bh[k][r] = outcome(row, "s_bh", "r_bh");
  }
  return ev;
}

void write_report(const fs::path& dir, const PipelineConfig& config, const Evaluation& ev, const Report& rep) {
  TableWriter comparison({"pair", "gamma", "beta", "fdr_hat_bonf", "fdr_hat_bh", "pfer_hat_bonf",
                          "pfer_hat_bh", "pearson_r", "identical", "bonf_wins", "bh_wins", "replicates"});
  for (std::size_t k = 0; k < rep.comparisons.size(); ++k) {
    const auto& c = rep.comparisons[k];
    comparison.cell(k)
        .cell(ev.table.pairs[k].gamma)
        .cell(ev.table.pairs[k].beta)
        .cell(rep.stats[k].bonferroni_rates.fdr_hat)
        .cell(rep.stats[k].bh_rates.fdr_hat)
        .cell(rep.stats[k].bonferroni_rates.pfer_hat)
        .cell(rep.stats[k].bh_rates.pfer_hat)
        .cell(c.pearson_r ? *c.pearson_r : std::nan(""))
        .cell(c.identical_count)
        .cell(c.bonf_wins)
        .cell(c.bh_wins)
        .cell(ev.replicates());
    comparison.end_row();
  }
  write_text_file(dir / files::comparison, comparison.str());

  TableWriter scatter({"selector", "pair", "r_bonf", "r_bh", "multiplicity", "marked"});
  for (std::size_t s = 0; s < rep.scatter_pairs.size(); ++s) {
    const std::size_t k = rep.scatter_pairs[s];
    for (const auto& point : rep.comparisons[k].scatter) {
      scatter.cell(config.scatter[s].describe())
          .cell(k)
          .cell(std::size_t{point.r_bonf})
          .cell(std::size_t{point.r_bh})
          .cell(point.multiplicity)
          .cell(std::size_t{point.multiplicity >= config.scatter_min_multiplicity ? 1U : 0U});
      scatter.end_row();
    }
  }
  write_text_file(dir / files::scatter, scatter.str());

  TableWriter sdmin({"procedure", "pair", "threshold", "mean_R", "sd_R"});
  const std::size_t kb = rep.sd_min_bonferroni;
  const std::size_t kh = rep.sd_min_bh;
  sdmin.cell(to_string(Procedure::bonferroni))
      .cell(kb)
      .cell(ev.table.pairs[kb].gamma)
      .cell(rep.stats[kb].bonferroni.mean_R)
      .cell(rep.stats[kb].bonferroni.sd_R);
  sdmin.end_row();
  sdmin.cell(to_string(Procedure::benjamini_hochberg))
      .cell(kh)
      .cell(ev.table.pairs[kh].beta)
      .cell(rep.stats[kh].bh.mean_R)
      .cell(rep.stats[kh].bh.sd_R);
  sdmin.end_row();
  write_text_file(dir / files::sd_minimum, sdmin.str());
}

// --- stages -----------------------------------------------------------------

namespace {

void ensure_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  }
}

void dump_datasets(const PipelineConfig& config) {
  if (config.dump_replicates == 0) return;
  const fs::path dir = config.output_dir / "datasets";
  ensure_output_dir(dir);
  const SimulationConfig sim = config.training_simulation();
  for (std::size_t r = 0; r < config.dump_replicates; ++r) {
    std::ostringstream out;
    write_dataset(out, generate_replicate(sim, r), sim, r);
    write_text_file(dir / ("training_" + std::to_string(r) + ".tsv"), out.str());
  }
}

void do_train(const PipelineConfig& config, const ThresholdGrid& grid) {
  const auto training = simulate_ranked_set(config.training_simulation(), config.workers);
  const TrainingResult curves = train(grid, training, config.equalize_metric);
  write_curve(config.output_dir / files::curve_bonferroni, grid, curves.bonferroni);
  write_curve(config.output_dir / files::curve_bh, grid, curves.bh);
  dump_datasets(config);
}

EqualizationTable do_equalize(const PipelineConfig& config) {
  const fs::path& dir = config.output_dir;
  const ThresholdGrid grid = read_grid(dir / files::grid);
  const ErrorCurve bonf = read_curve(dir / files::curve_bonferroni, Procedure::bonferroni, config.equalize_metric);
  const ErrorCurve bh = read_curve(dir / files::curve_bh, Procedure::benjamini_hochberg, config.equalize_metric);
  EqualizationTable table = equalize(config.equalize_metric, bonf, bh, grid);
  write_equalization(dir / files::equalization, table);
  return table;
}

void do_evaluate(const PipelineConfig& config) {
  const EqualizationTable table = read_equalization(config.output_dir / files::equalization);
  const auto set = simulate_ranked_set(config.evaluation_simulation(), config.workers);
  write_evaluation(config.output_dir, evaluate(table, set, config.workers));
}

void do_report(const PipelineConfig& config) {
  const Evaluation ev = read_evaluation(config.output_dir);
  write_report(config.output_dir, config, ev, build_report(config, ev));
}

}  // namespace

void run_stage(Stage stage, const PipelineConfig& config) {
  if (stage == Stage::run) {
    run_pipeline(config);
    return;
  }
  ensure_output_dir(config.output_dir);
  const ThresholdGrid grid = build_grid(config.a);
  switch (stage) {
    case Stage::grid:
      write_grid(config.output_dir / files::grid, grid);
      break;
    case Stage::train:
      do_train(config, grid);
      break;
    case Stage::equalize:
      do_equalize(config);
      break;
    case Stage::evaluate:
      do_evaluate(config);
      break;
    case Stage::report:
      do_report(config);
      break;
    case Stage::run:
      break;
  }
}

void run_pipeline(const PipelineConfig& config) {
  for (const Stage s : {Stage::grid, Stage::train, Stage::equalize, Stage::evaluate, Stage::report}) {
    run_stage(s, config);
  }
  write_text_file(config.output_dir / files::manifest, render_manifest(config));
}

}  // namespace bonfstab
