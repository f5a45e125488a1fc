#include "bonfstab/config.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "bonfstab/errors.hpp"
#include "bonfstab/tsv.hpp"

namespace bonfstab {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "invalid configuration:";
  for (const auto& issue : issues) {
    out += "\n  ";
    out += issue;
  }
  return out;
}

// Collects problems while reading fields so that every one is reported together.
class FieldReader {
 public:
  explicit FieldReader(std::vector<std::string>& issues) : issues_(issues) {}

  void fail(const std::string& path, const std::string& what) { issues_.push_back(path + ": " + what); }

  void reject_unknown(const nlohmann::json& obj, const std::string& prefix,
                      const std::set<std::string>& known) {
    for (const auto& [key, value] : obj.items()) {
      if (known.count(key) == 0) fail(prefix + key, "unknown field");
    }
  }

  bool read_count(const nlohmann::json& obj, const std::string& key, const std::string& path,
                  std::size_t& out) {
    if (!obj.contains(key)) return false;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(path, "must be a non-negative integer");
      return false;
    }
    if (v.is_number_unsigned()) {
      out = v.get<std::size_t>();
      return true;
    }
    const auto s = v.get<std::int64_t>();
    if (s < 0) {
      fail(path, "must be a non-negative integer, got " + std::to_string(s));
      return false;
    }
    out = static_cast<std::size_t>(s);
    return true;
  }

  bool read_seed(const nlohmann::json& obj, const std::string& key, const std::string& path,
                 std::uint64_t& out) {
    std::size_t v = 0;
    if (!read_count(obj, key, path, v)) return false;
    out = static_cast<std::uint64_t>(v);
    return true;
  }

  bool read_real(const nlohmann::json& obj, const std::string& key, const std::string& path, double& out) {
    if (!obj.contains(key)) return false;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      fail(path, "must be a number");
      return false;
    }
    out = v.get<double>();
    if (!std::isfinite(out)) {
      fail(path, "must be finite");
      return false;
    }
    return true;
  }

  bool read_bool(const nlohmann::json& obj, const std::string& key, const std::string& path, bool& out) {
    if (!obj.contains(key)) return false;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) {
      fail(path, "must be true or false");
      return false;
    }
    out = v.get<bool>();
    return true;
  }

  bool read_string(const nlohmann::json& obj, const std::string& key, const std::string& path,
                   std::string& out) {
    if (!obj.contains(key)) return false;
    const auto& v = obj.at(key);
    if (!v.is_string()) {
      fail(path, "must be a string");
      return false;
    }
    out = v.get<std::string>();
    return true;
  }

 private:
  std::vector<std::string>& issues_;
};

std::string number_text(double v) { return format_number(v); }

void read_scatter(FieldReader& reader, const nlohmann::json& list, std::vector<ScatterSelector>& out) {
  if (!list.is_array()) {
    reader.fail("scatter", "must be a list of selectors");
    return;
  }
  out.clear();
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string path = "scatter[" + std::to_string(k) + "]";
    const auto& item = list[k];
    if (!item.is_object()) {
      reader.fail(path, "must be an object with 'index', 'fdr' or 'gamma'+'beta'");
      continue;
    }
    reader.reject_unknown(item, path + ".", {"index", "fdr", "gamma", "beta"});
    ScatterSelector sel;
    const bool has_index = item.contains("index");
    const bool has_fdr = item.contains("fdr");
    const bool has_pair = item.contains("gamma") || item.contains("beta");
    if (int(has_index) + int(has_fdr) + int(has_pair) != 1) {
      reader.fail(path, "must give exactly one of 'index', 'fdr' or 'gamma'+'beta'");
      continue;
    }
    if (has_index) {
      sel.kind = ScatterSelector::Kind::grid_index;
      if (reader.read_count(item, "index", path + ".index", sel.index) && sel.index >= kGridSize) {
        reader.fail(path + ".index", "must be below " + std::to_string(kGridSize));
      }
    } else if (has_fdr) {
      sel.kind = ScatterSelector::Kind::nearest_fdr;
      if (reader.read_real(item, "fdr", path + ".fdr", sel.fdr) && !(sel.fdr >= 0.0 && sel.fdr <= 1.0)) {
        reader.fail(path + ".fdr", "must lie in [0, 1]");
      }
    } else {
      sel.kind = ScatterSelector::Kind::thresholds;
      if (!item.contains("gamma") || !item.contains("beta")) {
        reader.fail(path, "'gamma' and 'beta' must be given together");
        continue;
      }
      if (reader.read_real(item, "gamma", path + ".gamma", sel.gamma) && !(sel.gamma > 0.0)) {
        reader.fail(path + ".gamma", "must be positive");
      }
      if (reader.read_real(item, "beta", path + ".beta", sel.beta) && !(sel.beta > 0.0 && sel.beta < 1.0)) {
        reader.fail(path + ".beta", "must lie in (0, 1)");
      }
    }
    out.push_back(sel);
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::string ScatterSelector::describe() const {
  switch (kind) {
    case Kind::grid_index:
      return "index:" + std::to_string(index);
    case Kind::thresholds:
      return "gamma:" + number_text(gamma) + ",beta:" + number_text(beta);
    case Kind::nearest_fdr:
      break;
  }
  return "fdr:" + number_text(fdr);
}

SimulationConfig PipelineConfig::training_simulation() const {
  SimulationConfig s = simulation;
  s.master_seed = training_seed;
  return s;
}

SimulationConfig PipelineConfig::evaluation_simulation() const {
  SimulationConfig s = simulation;
  s.master_seed = evaluate_on_training ? training_seed : control_seed;
  return s;
}

PipelineConfig validate_config(const nlohmann::json& raw) {
  std::vector<std::string> issues;
  FieldReader reader(issues);
  PipelineConfig cfg;

  if (!raw.is_object()) {
    throw ValidationError({"<root>: configuration must be a JSON object"});
  }
  reader.reject_unknown(raw, "",
                        {"simulation", "equalize_metric", "a", "training_seed", "control_seed",
                         "output_dir", "scatter", "scatter_min_multiplicity", "workers",
                         "evaluate_on_training", "dump_replicates"});

  SimulationConfig& sim = cfg.simulation;
  bool rho_given = false;
  if (raw.contains("simulation") && !raw.at("simulation").is_object()) {
    reader.fail("simulation", "must be an object");
  } else {
    const nlohmann::json empty = nlohmann::json::object();
    const auto& s = raw.contains("simulation") ? raw.at("simulation") : empty;
    reader.reject_unknown(s, "simulation.", {"m", "m_alt", "n", "delta", "rho", "replicates"});
    reader.read_count(s, "m", "simulation.m", sim.m);
    reader.read_count(s, "m_alt", "simulation.m_alt", sim.m_alt);
    reader.read_count(s, "n", "simulation.n", sim.n);
    reader.read_real(s, "delta", "simulation.delta", sim.delta);
    reader.read_count(s, "replicates", "simulation.replicates", sim.replicates);
    if (s.contains("rho")) {
      rho_given = true;
      if (reader.read_real(s, "rho", "simulation.rho", sim.rho) && !(sim.rho >= 0.0 && sim.rho < 1.0)) {
        reader.fail("simulation.rho", "must lie in [0, 1), got " + number_text(sim.rho));
      }
    }
  }
  if (!rho_given) {
    reader.fail("simulation.rho", "required; 0 for independent genes, e.g. 0.4 for equicorrelated genes");
  }
  if (sim.m == 0) reader.fail("simulation.m", "must be at least 1");
  if (sim.m_alt == 0 || sim.m_alt > sim.m) {
    reader.fail("simulation.m_alt", "must lie in [1, m] (m = " + std::to_string(sim.m) + "), got " +
                                        std::to_string(sim.m_alt));
  }
  if (sim.n < 2) reader.fail("simulation.n", "must be at least 2, got " + std::to_string(sim.n));
  if (sim.replicates == 0) reader.fail("simulation.replicates", "must be at least 1");

  std::string metric;
  if (reader.read_string(raw, "equalize_metric", "equalize_metric", metric)) {
    if (metric == "fdr" || metric == "FDR") {
      cfg.equalize_metric = Metric::fdr;
    } else if (metric == "pfer" || metric == "PFER") {
      cfg.equalize_metric = Metric::pfer;
    } else {
      reader.fail("equalize_metric", "must be 'fdr' or 'pfer', got '" + metric + "'");
    }
  }

  cfg.a = static_cast<double>(sim.m_alt);
  if (reader.read_real(raw, "a", "a", cfg.a) && !(cfg.a > 0.0)) {
    reader.fail("a", "must be positive, got " + number_text(cfg.a));
  }

  reader.read_seed(raw, "training_seed", "training_seed", cfg.training_seed);
  reader.read_seed(raw, "control_seed", "control_seed", cfg.control_seed);
  if (cfg.training_seed == cfg.control_seed) {
    reader.fail("control_seed", "must differ from training_seed (both are " +
                                    std::to_string(cfg.training_seed) + ")");
  }

  std::string out_dir;
  if (reader.read_string(raw, "output_dir", "output_dir", out_dir)) {
    if (out_dir.empty()) {
      reader.fail("output_dir", "must not be empty");
    } else {
      cfg.output_dir = out_dir;
    }
  }

  if (raw.contains("scatter")) read_scatter(reader, raw.at("scatter"), cfg.scatter);
  reader.read_count(raw, "scatter_min_multiplicity", "scatter_min_multiplicity", cfg.scatter_min_multiplicity);
  if (reader.read_count(raw, "workers", "workers", cfg.workers) && cfg.workers == 0) {
    reader.fail("workers", "must be at least 1");
  }
  reader.read_bool(raw, "evaluate_on_training", "evaluate_on_training", cfg.evaluate_on_training);
  if (reader.read_count(raw, "dump_replicates", "dump_replicates", cfg.dump_replicates) &&
      cfg.dump_replicates > sim.replicates) {
    reader.fail("dump_replicates", "must not exceed simulation.replicates");
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError({path.string() + ": not valid JSON: " + e.what()});
  }
  return validate_config(raw);
}

std::string_view library_version() {
#ifdef BONFSTAB_VERSION
  return BONFSTAB_VERSION;
#else
  return "unknown";
#endif
}

std::string render_manifest(const PipelineConfig& cfg) {
  std::ostringstream out;
  out << "format=bonfstab-manifest/1\n";
  out << "version=" << library_version() << '\n';
  out << "simulation.m=" << cfg.simulation.m << '\n';
  out << "simulation.m_alt=" << cfg.simulation.m_alt << '\n';
  out << "simulation.n=" << cfg.simulation.n << '\n';
  out << "simulation.delta=" << number_text(cfg.simulation.delta) << '\n';
  out << "simulation.rho=" << number_text(cfg.simulation.rho) << '\n';
  out << "simulation.replicates=" << cfg.simulation.replicates << '\n';
  out << "equalize_metric=" << to_string(cfg.equalize_metric) << '\n';
  out << "a=" << number_text(cfg.a) << '\n';
  out << "grid.size=" << kGridSize << '\n';
  out << "seed.training=" << cfg.training_seed << '\n';
  out << "seed.control=" << cfg.control_seed << '\n';
  out << "evaluation_set=" << (cfg.evaluate_on_training ? "training" : "control") << '\n';
  for (std::size_t k = 0; k < cfg.scatter.size(); ++k) {
    out << "scatter." << k << '=' << cfg.scatter[k].describe() << '\n';
  }
  out << "scatter_min_multiplicity=" << cfg.scatter_min_multiplicity << '\n';
  out << "dump_replicates=" << cfg.dump_replicates << '\n';
  out << "rng=xoshiro256** keyed by splitmix64(seed,replicate,group); Box-Muller normals\n";
  out << "test=pooled two-sample t, two-sided, df=2n-2\n";
  return out.str();
}

}  // namespace bonfstab
