#include "unseen/dataio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace unseen {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Sample ingestion

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

SampleCounts read_counts_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  SampleCounts::Map counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    if (lineno == 1 && line == "species,count") continue;  // optional header
    const auto comma = line.find_last_of(',');
    if (comma == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected 'species,count'");
    }
    std::string species = line.substr(0, comma);
    const std::string count_text = line.substr(comma + 1);
    if (species.empty()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": empty species label");
    }
    std::int64_t value = 0;
    const auto* first = count_text.data();
    const auto* last = count_text.data() + count_text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": count '" + count_text +
                       "' is not an integer");
    }
    if (value <= 0) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": counts must be positive, got " + count_text);
    }
    const auto [it, inserted] = counts.emplace(std::move(species), static_cast<std::uint64_t>(value));
    if (!inserted) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": duplicate species '" +
                       it->first + "'");
    }
  }
  if (counts.empty()) {
    throw ParseError(path.string() + ": no rows; a sample of size zero is not valid");
  }
  return SampleCounts::from_counts(std::move(counts));
}

SampleCounts read_tokens(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  SampleCounts::Map counts;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    ++counts[line];
  }
  if (counts.empty()) {
    throw ParseError(path.string() + ": no tokens; a sample of size zero is not valid");
  }
  return SampleCounts::from_counts(std::move(counts));
}

// ---------------------------------------------------------------------------
// JSON documents

namespace {

ordered_json spec_to_json(const DistributionSpec& spec) {
  ordered_json j;
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZipfSpec>) {
          j["variant"] = "zipf";
          j["s"] = s.s;
        } else if constexpr (std::is_same_v<T, DoubleZipfSpec>) {
          j["variant"] = "double-zipf";
          j["alpha"] = s.alpha;
          j["beta"] = s.beta;
          j["J"] = s.J;
        } else {
          j["variant"] = "crp";
          j["alpha"] = s.alpha;
        }
      },
      spec);
  return j;
}

DistributionSpec spec_from_json(const ordered_json& j, std::vector<std::string>& errors) {
  const std::string variant = j.value("variant", "");
  if (variant == "zipf") {
    if (!j.contains("s")) errors.push_back("distribution: zipf requires 's'");
    return ZipfSpec{j.value("s", 0.0)};
  }
  if (variant == "double-zipf") {
    for (const char* key : {"alpha", "beta", "J"}) {
      if (!j.contains(key)) errors.push_back(std::string("distribution: double-zipf requires '") + key + "'");
    }
    return DoubleZipfSpec{j.value("alpha", 0.0), j.value("beta", 0.0), j.value("J", std::uint64_t{0})};
  }
  if (variant == "crp") {
    if (!j.contains("alpha")) errors.push_back("distribution: crp requires 'alpha'");
    return CrpSpec{j.value("alpha", 0.0)};
  }
  errors.push_back("distribution: unknown variant '" + variant + "'");
  return ZipfSpec{2.0};
}

ordered_json config_to_json(const ExperimentConfig& config) {
  ordered_json j;
  j["distribution"] = spec_to_json(config.spec);
  j["n"] = config.n;
  j["lambda"] = config.lambda;
  j["replicates"] = config.replicates;
  j["seed"] = config.seed;
  j["estimators"] = config.estimators;
  j["threshold_c"] = config.threshold_c;
  return j;
}

ExperimentConfig config_from_json(const ordered_json& j, std::vector<std::string>& errors) {
  ExperimentConfig config;
  if (j.contains("distribution")) {
    config.spec = spec_from_json(j["distribution"], errors);
  } else {
    errors.push_back("experiment: missing 'distribution'");
  }
  if (j.contains("n")) config.n = j["n"].get<std::uint64_t>();
  else errors.push_back("experiment: missing 'n'");
  config.lambda = j.value("lambda", 1.0);
  if (j.contains("replicates")) config.replicates = j["replicates"].get<std::uint32_t>();
  else errors.push_back("experiment: missing 'replicates'");
  config.seed = j.value("seed", std::uint64_t{1});
  if (j.contains("estimators")) {
    config.estimators = j["estimators"].get<std::vector<std::string>>();
    for (const auto& id : config.estimators) {
      if (!is_known_estimator(id)) errors.push_back("experiment: unknown estimator '" + id + "'");
    }
  }
  config.threshold_c = j.value("threshold_c", 1.0);
  if (config.n == 0) errors.push_back("experiment: n must be positive");
  if (config.replicates == 0) errors.push_back("experiment: replicates must be positive");
  if (!(config.lambda > 0.0)) errors.push_back("experiment: lambda must be positive");
  return config;
}

void require_finite(double v, const char* what) {
  if (std::isnan(v)) {
    throw std::invalid_argument(std::string("report contains NaN in ") + what +
                                "; refusing to serialize");
  }
}

ordered_json risk_to_json(const RiskReport& r) {
  ordered_json j;
  if (r.alpha_risk) {
    require_finite(*r.alpha_risk, "alpha_risk");
    j["alpha_risk"] = *r.alpha_risk;
    j["alpha_risk_se"] = *r.alpha_risk_se;
  }
  if (!r.unseen_risk.empty()) {
    ordered_json risks;
    ordered_json ses;
    for (const auto& [id, v] : r.unseen_risk) {
      require_finite(v, "unseen_risk");
      risks[id] = v;
      ses[id] = r.unseen_risk_se.at(id);
    }
    j["unseen_risk"] = risks;
    j["unseen_risk_se"] = ses;
    require_finite(r.mean_unseen, "mean_unseen");
    j["mean_unseen"] = r.mean_unseen;
    j["mean_unseen_se"] = r.mean_unseen_se;
  }
  j["replicates_used"] = r.replicates_used;
  j["seed"] = r.seed;
  j["true_alpha"] = r.true_alpha;
  return j;
}

RiskReport risk_from_json(const ordered_json& j) {
  RiskReport r;
  if (j.contains("alpha_risk")) {
    r.alpha_risk = j["alpha_risk"].get<double>();
    r.alpha_risk_se = j["alpha_risk_se"].get<double>();
  }
  if (j.contains("unseen_risk")) {
    for (const auto& [id, v] : j["unseen_risk"].items()) r.unseen_risk[id] = v.get<double>();
    for (const auto& [id, v] : j["unseen_risk_se"].items()) r.unseen_risk_se[id] = v.get<double>();
    r.mean_unseen = j["mean_unseen"].get<double>();
    r.mean_unseen_se = j["mean_unseen_se"].get<double>();
  }
  r.replicates_used = j["replicates_used"].get<std::uint32_t>();
  r.seed = j["seed"].get<std::uint64_t>();
  r.true_alpha = j["true_alpha"].get<double>();
  return r;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

ordered_json parse_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace

bool operator==(const ReportDocument& a, const ReportDocument& b) {
  return a.schema == b.schema && a.kind == b.kind &&
         report_to_json(a) == report_to_json(b);
}

std::string report_to_json(const ReportDocument& doc) {
  ordered_json j;
  j["schema"] = doc.schema;
  j["kind"] = doc.kind;
  j["config"] = config_to_json(doc.config);
  j["labels"] = doc.labels;
  ordered_json results = ordered_json::array();
  for (const auto& r : doc.results) results.push_back(risk_to_json(r));
  j["results"] = results;
  j["rng"] = doc.rng_algorithm;
  j["replicate_seeds"] = doc.replicate_seeds;
  j["wall_ms"] = doc.wall_ms;
  return j.dump(2) + "\n";
}

void write_report(const ReportDocument& doc, const std::filesystem::path& path) {
  write_text(report_to_json(doc), path);
}

ReportDocument read_report(const std::filesystem::path& path) {
  const ordered_json j = parse_file(path);
  ReportDocument doc;
  doc.schema = j.value("schema", "");
  doc.kind = j.value("kind", "");
  std::vector<std::string> errors;
  doc.config = config_from_json(j.at("config"), errors);
  if (!errors.empty()) {
    std::string msg = path.string() + ": invalid config echo:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ParseError(msg);
  }
  doc.labels = j.value("labels", std::vector<std::string>{});
  for (const auto& r : j.at("results")) doc.results.push_back(risk_from_json(r));
  doc.rng_algorithm = j.value("rng", "");
  doc.replicate_seeds = j.value("replicate_seeds", std::vector<std::uint64_t>{});
  doc.wall_ms = j.value("wall_ms", std::uint64_t{0});
  return doc;
}

std::string split_report_to_json(const SplitEvalReport& report) {
  ordered_json j;
  j["schema"] = "v1";
  j["kind"] = "split-eval";
  j["lambda"] = report.lambda;
  j["n_used"] = report.n_used;
  j["splits_requested"] = report.splits_requested;
  j["splits_excluded"] = report.splits_excluded;
  j["seed"] = report.seed;
  ordered_json mse;
  for (const auto& [id, v] : report.mse) {
    require_finite(v, "mse");
    mse[id] = v;
  }
  j["mse"] = mse;
  ordered_json errors;
  for (const auto& [id, errs] : report.per_split_errors) {
    for (double e : errs) require_finite(e, "per_split_errors");
    errors[id] = errs;
  }
  j["per_split_errors"] = errors;
  return j.dump(2) + "\n";
}

void write_split_report(const SplitEvalReport& report, const std::filesystem::path& path) {
  write_text(split_report_to_json(report), path);
}

SplitEvalReport read_split_report(const std::filesystem::path& path) {
  const ordered_json j = parse_file(path);
  SplitEvalReport report;
  report.lambda = j.at("lambda").get<double>();
  report.n_used = j.at("n_used").get<std::uint64_t>();
  report.splits_requested = j.at("splits_requested").get<std::uint32_t>();
  report.splits_excluded = j.at("splits_excluded").get<std::uint32_t>();
  report.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [id, v] : j.at("mse").items()) report.mse[id] = v.get<double>();
  for (const auto& [id, v] : j.at("per_split_errors").items()) {
    report.per_split_errors[id] = v.get<std::vector<double>>();
  }
  return report;
}

ConfigDocument read_experiment_config(const std::filesystem::path& path) {
  const ordered_json j = parse_file(path);
  std::vector<std::string> errors;
  if (j.value("schema", "") != "v1") errors.push_back("schema: expected \"v1\"");
  ConfigDocument doc;
  if (!j.contains("experiment")) {
    errors.push_back("missing 'experiment' section");
  } else {
    const auto& e = j["experiment"];
    doc.kind = e.value("kind", "");
    if (doc.kind != "alpha-risk" && doc.kind != "unseen-risk") {
      errors.push_back("experiment: kind must be \"alpha-risk\" or \"unseen-risk\"");
    }
    doc.config = config_from_json(e, errors);
  }
  if (!errors.empty()) {
    std::string msg = path.string() + ": invalid experiment config:";
    for (const auto& err : errors) msg += "\n  - " + err;
    throw ParseError(msg);
  }
  return doc;
}

void write_experiment_config(const ConfigDocument& doc, const std::filesystem::path& path) {
  ordered_json j;
  j["schema"] = "v1";
  ordered_json e = config_to_json(doc.config);
  ordered_json exp;
  exp["kind"] = doc.kind;
  for (auto& [k, v] : e.items()) exp[k] = v;
  j["experiment"] = exp;
  write_text(j.dump(2) + "\n", path);
}

}  // namespace unseen
