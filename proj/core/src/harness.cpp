#include "unseen/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "unseen/estimators.hpp"
#include "unseen/rng.hpp"
#include "unseen/samplers.hpp"
#include "unseen/tail_index.hpp"

namespace unseen {

const std::vector<std::string>& all_estimator_ids() {
  static const std::vector<std::string> ids = {"plugin",       "gt",
                                               "sgt-poisson",  "sgt-binomial",
                                               "sgt-binomial-et", "null"};
  return ids;
}

bool is_known_estimator(const std::string& id) {
  const auto& ids = all_estimator_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool operator==(const RiskReport& a, const RiskReport& b) {
  return a.alpha_risk == b.alpha_risk && a.alpha_risk_se == b.alpha_risk_se &&
         a.unseen_risk == b.unseen_risk && a.unseen_risk_se == b.unseen_risk_se &&
         a.mean_unseen == b.mean_unseen && a.mean_unseen_se == b.mean_unseen_se &&
         a.replicates_used == b.replicates_used && a.seed == b.seed &&
         a.true_alpha == b.true_alpha;
}

namespace {

void validate(const ExperimentConfig& config) {
  if (config.replicates == 0) {
    throw std::invalid_argument("ExperimentConfig: replicates must be at least 1");
  }
  if (config.n == 0) throw std::invalid_argument("ExperimentConfig: n must be at least 1");
  for (const auto& id : config.estimators) {
    if (!is_known_estimator(id)) {
      throw std::invalid_argument("ExperimentConfig: unknown estimator '" + id + "'");
    }
  }
}

// Static partition of [0, count) over worker threads; each index writes its
// own slot, so the result is identical for any thread count.
template <typename Body>
void parallel_replicates(std::uint32_t count, unsigned threads, Body&& body) {
  unsigned t = threads == 0 ? std::thread::hardware_concurrency() : threads;
  t = std::max(1u, std::min(t, count));
  if (t == 1) {
    for (std::uint32_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned w = 0; w < t; ++w) {
    const std::uint32_t lo = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(count) * w / t);
    const std::uint32_t hi = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(count) * (w + 1) / t);
    pool.emplace_back([lo, hi, &body] {
      for (std::uint32_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

Fingerprint fingerprint_of_tally(const std::unordered_map<std::uint64_t, std::uint64_t>& tally,
                                 std::uint64_t n) {
  std::uint64_t largest = 0;
  for (const auto& [id, count] : tally) largest = std::max(largest, count);
  std::vector<std::uint64_t> m(largest, 0);
  for (const auto& [id, count] : tally) ++m[count - 1];
  return Fingerprint(std::move(m), n);
}

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double se_of_mean(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return std::sqrt(var / static_cast<double>(xs.size()));
}

void sort_by_index(std::vector<ReplicateRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const ReplicateRecord& a, const ReplicateRecord& b) { return a.index < b.index; });
}

}  // namespace

RiskReport reduce_alpha_records(const ExperimentConfig& config,
                                std::vector<ReplicateRecord> records) {
  sort_by_index(records);
  std::vector<double> sq;
  sq.reserve(records.size());
  for (const auto& r : records) sq.push_back(r.alpha_sq_err);
  RiskReport report;
  report.alpha_risk = mean_of(sq);
  report.alpha_risk_se = se_of_mean(sq, *report.alpha_risk);
  report.replicates_used = static_cast<std::uint32_t>(records.size());
  report.seed = config.seed;
  report.true_alpha = true_tail_index(config.spec);
  return report;
}

RiskReport reduce_unseen_records(const ExperimentConfig& config,
                                 std::vector<ReplicateRecord> records) {
  sort_by_index(records);
  RiskReport report;
  std::vector<double> u;
  u.reserve(records.size());
  for (const auto& r : records) u.push_back(r.u_true);
  report.mean_unseen = mean_of(u);
  report.mean_unseen_se = se_of_mean(u, report.mean_unseen);
  const double denom = report.mean_unseen * report.mean_unseen;
  for (std::size_t e = 0; e < config.estimators.size(); ++e) {
    std::vector<double> sq;
    sq.reserve(records.size());
    for (const auto& r : records) sq.push_back(r.estimator_sq_err[e]);
    const double num = mean_of(sq);
    report.unseen_risk[config.estimators[e]] = num / denom;
    report.unseen_risk_se[config.estimators[e]] = se_of_mean(sq, num) / denom;
  }
  report.replicates_used = static_cast<std::uint32_t>(records.size());
  report.seed = config.seed;
  report.true_alpha = true_tail_index(config.spec);
  return report;
}

std::vector<double> evaluate_estimators(std::span<const std::string> ids,
                                        const Fingerprint& fp, double lambda,
                                        double threshold_c) {
  std::vector<double> out;
  out.reserve(ids.size());
  std::optional<double> alpha_hat;
  std::optional<std::array<std::pair<std::string, SmoothingSpec>, 3>> baselines;
  for (const auto& id : ids) {
    if (id == "plugin") {
      if (!alpha_hat) alpha_hat = solve_mle(fp).alpha_hat;
      out.push_back(plugin_unseen(fp, *alpha_hat, lambda, threshold_c).value);
    } else if (id == "gt") {
      out.push_back(good_toulmin(fp, lambda));
    } else if (id == "null") {
      out.push_back(0.0);
    } else if (id.rfind("sgt-", 0) == 0) {
      if (!baselines) baselines = orl_baselines(fp.n(), lambda);
      const auto it = std::find_if(baselines->begin(), baselines->end(),
                                   [&](const auto& b) { return b.first == id; });
      if (it == baselines->end()) throw std::invalid_argument("unknown estimator '" + id + "'");
      out.push_back(smoothed_gt(fp, lambda, it->second));
    } else {
      throw std::invalid_argument("unknown estimator '" + id + "'");
    }
  }
  return out;
}

RiskReport mc_alpha_risk(const ExperimentConfig& config) {
  validate(config);
  const double alpha0 = true_tail_index(config.spec);
  std::vector<ReplicateRecord> records(config.replicates);

  parallel_replicates(config.replicates, config.threads, [&](std::uint32_t r) {
    SeededRng rng(config.seed, r);
    Fingerprint fp = [&] {
      if (const auto* crp = std::get_if<CrpSpec>(&config.spec)) {
        CrpSeating seating(crp->alpha);
        for (std::uint64_t i = 0; i < config.n; ++i) seating.seat_next(rng);
        return Fingerprint::from_block_sizes(seating.block_sizes());
      }
      SpeciesStream stream(config.spec);
      std::unordered_map<std::uint64_t, std::uint64_t> tally;
      tally.reserve(static_cast<std::size_t>(std::sqrt(static_cast<double>(config.n))) * 4 + 16);
      for (std::uint64_t i = 0; i < config.n; ++i) ++tally[stream.draw(rng)];
      return fingerprint_of_tally(tally, config.n);
    }();
    const double a = solve_mle(fp).alpha_hat;
    records[r].index = r;
    records[r].alpha_sq_err = (a - alpha0) * (a - alpha0);
  });

  return reduce_alpha_records(config, std::move(records));
}

RiskReport mc_unseen_risk(const ExperimentConfig& config) {
  validate(config);
  if (!(config.lambda > 0.0)) {
    throw std::invalid_argument("mc_unseen_risk: lambda must be positive");
  }
  if (config.estimators.empty()) {
    throw std::invalid_argument("mc_unseen_risk: no estimators configured");
  }
  const auto m = static_cast<std::uint64_t>(config.lambda * static_cast<double>(config.n));
  std::vector<ReplicateRecord> records(config.replicates);

  parallel_replicates(config.replicates, config.threads, [&](std::uint32_t r) {
    SeededRng rng(config.seed, r);
    Fingerprint fp = Fingerprint({}, 0);
    std::uint64_t unseen = 0;

    if (const auto* crp = std::get_if<CrpSpec>(&config.spec)) {
      CrpSeating seating(crp->alpha);
      for (std::uint64_t i = 0; i < config.n; ++i) seating.seat_next(rng);
      fp = Fingerprint::from_block_sizes(seating.block_sizes());
      const std::uint64_t k_n = seating.blocks();
      for (std::uint64_t i = 0; i < m; ++i) seating.seat_next(rng);
      unseen = seating.blocks() - k_n;
    } else {
      SpeciesStream stream(config.spec);
      std::unordered_map<std::uint64_t, std::uint64_t> prefix;
      for (std::uint64_t i = 0; i < config.n; ++i) ++prefix[stream.draw(rng)];
      fp = fingerprint_of_tally(prefix, config.n);
      std::unordered_set<std::uint64_t> fresh;
      for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint64_t id = stream.draw(rng);
        if (!prefix.contains(id)) fresh.insert(id);
      }
      unseen = fresh.size();
    }

    ReplicateRecord& rec = records[r];
    rec.index = r;
    rec.u_true = static_cast<double>(unseen);
    const std::vector<double> est =
        evaluate_estimators(config.estimators, fp, config.lambda, config.threshold_c);
    rec.estimator_sq_err.resize(est.size());
    for (std::size_t e = 0; e < est.size(); ++e) {
      const double d = est[e] - rec.u_true;
      rec.estimator_sq_err[e] = d * d;
    }
  });

  return reduce_unseen_records(config, std::move(records));
}

double rate_fit(std::span<const std::pair<double, double>> n_risk_points) {
  if (n_risk_points.size() < 2) {
    throw std::invalid_argument("rate_fit: need at least 2 points");
  }
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, risk] : n_risk_points) {
    if (!(n > 0.0) || !(risk > 0.0)) {
      throw std::invalid_argument("rate_fit: points must have positive n and risk");
    }
    sx += std::log(n);
    sy += std::log(risk);
  }
  const double mx = sx / static_cast<double>(n_risk_points.size());
  const double my = sy / static_cast<double>(n_risk_points.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, risk] : n_risk_points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(risk) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("rate_fit: all n values coincide");
  return -sxy / sxx;
}

std::vector<RiskReport> double_zipf_sweep(const SweepConfig& sweep) {
  if (!(sweep.beta > 0.0) || !(sweep.beta < sweep.alpha) || !(sweep.alpha < 1.0)) {
    throw std::domain_error("double_zipf_sweep: need 0 < beta < alpha < 1");
  }
  std::vector<RiskReport> out;
  out.reserve(sweep.J_values.size());
  for (const std::uint64_t J : sweep.J_values) {
    ExperimentConfig config;
    config.spec = DoubleZipfSpec{sweep.alpha, sweep.beta, J};
    config.n = sweep.n;
    config.lambda = sweep.lambda;
    config.seed = sweep.seed;  // shared across J: common random numbers
    config.estimators = sweep.estimators;
    config.threshold_c = sweep.threshold_c;
    config.threads = sweep.threads;

    config.replicates = sweep.alpha_replicates;
    RiskReport alpha_part = mc_alpha_risk(config);

    config.replicates = sweep.unseen_replicates;
    RiskReport report = mc_unseen_risk(config);
    report.alpha_risk = alpha_part.alpha_risk;
    report.alpha_risk_se = alpha_part.alpha_risk_se;
    out.push_back(std::move(report));
  }
  return out;
}

SplitEvalReport realdata_protocol(const SampleCounts& dataset, double lambda,
                                  std::uint32_t splits, std::uint64_t seed,
                                  std::span<const std::string> estimators,
                                  double threshold_c) {
  if (!(lambda > 0.0)) throw std::invalid_argument("realdata_protocol: lambda must be positive");
  if (splits == 0) throw std::invalid_argument("realdata_protocol: splits must be at least 1");
  for (const auto& id : estimators) {
    if (!is_known_estimator(id)) {
      throw std::invalid_argument("realdata_protocol: unknown estimator '" + id + "'");
    }
  }
  const std::uint64_t total = dataset.n();
  const auto n_used = static_cast<std::uint64_t>(
      std::floor(static_cast<double>(total) / (1.0 + lambda)));
  if (n_used == 0 || n_used >= total) {
    throw std::invalid_argument(
        "realdata_protocol: lambda leaves no observed or no held-out portion");
  }

  // Expand the multiset once; species become small integer ids.
  std::vector<std::uint32_t> individuals;
  individuals.reserve(total);
  std::uint32_t species = 0;
  for (const auto& [label, count] : dataset.counts()) {
    for (std::uint64_t i = 0; i < count; ++i) individuals.push_back(species);
    ++species;
  }
  const std::uint64_t k_total = dataset.distinct();

  SplitEvalReport report;
  report.lambda = lambda;
  report.n_used = n_used;
  report.splits_requested = splits;
  report.seed = seed;
  for (const auto& id : estimators) report.per_split_errors[std::string(id)] = {};

  std::vector<std::uint32_t> pool(individuals);
  std::vector<std::uint64_t> tally(k_total, 0);
  for (std::uint32_t split = 0; split < splits; ++split) {
    SeededRng rng(seed, split);
    // Partial Fisher-Yates: the first n_used entries become the subsample.
    pool = individuals;
    for (std::uint64_t i = 0; i < n_used; ++i) {
      const std::uint64_t j = i + rng.below(total - i);
      std::swap(pool[i], pool[j]);
    }
    std::fill(tally.begin(), tally.end(), 0);
    for (std::uint64_t i = 0; i < n_used; ++i) ++tally[pool[i]];
    std::uint64_t largest = 0;
    std::uint64_t k_sub = 0;
    for (std::uint64_t c : tally) {
      if (c > 0) {
        ++k_sub;
        largest = std::max(largest, c);
      }
    }
    std::vector<std::uint64_t> m(largest, 0);
    for (std::uint64_t c : tally) {
      if (c > 0) ++m[c - 1];
    }
    const Fingerprint fp(std::move(m), n_used);
    const std::uint64_t unseen = k_total - k_sub;
    if (unseen == 0) {
      ++report.splits_excluded;
      continue;
    }
    const std::vector<double> est = evaluate_estimators(estimators, fp, lambda, threshold_c);
    for (std::size_t e = 0; e < est.size(); ++e) {
      const double err = (est[e] - static_cast<double>(unseen)) / static_cast<double>(unseen);
      report.per_split_errors[std::string(estimators[e])].push_back(err);
    }
  }

  for (const auto& id : estimators) {
    const auto& errs = report.per_split_errors[std::string(id)];
    double mse = 0.0;
    for (double e : errs) mse += e * e;
    report.mse[std::string(id)] = errs.empty() ? 0.0 : mse / static_cast<double>(errs.size());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Presets

std::vector<std::string> preset_names() {
  return {"paper-table1", "paper-table2", "paper-large-lambda", "paper-double-zipf"};
}

std::vector<PresetExperiment> preset(const std::string& name, std::uint64_t seed) {
  std::vector<PresetExperiment> out;
  const std::vector<std::string> comparison_estimators = {
      "plugin", "sgt-poisson", "sgt-binomial", "sgt-binomial-et"};

  if (name == "paper-table1") {
    for (const double alpha0 : {0.2, 0.5, 0.8}) {
      for (const std::uint64_t n : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        ExperimentConfig c;
        c.spec = ZipfSpec{1.0 / alpha0};
        c.n = n;
        c.replicates = 1000;
        c.seed = seed;
        out.push_back({"alpha0=" + std::to_string(alpha0) + ",n=" + std::to_string(n),
                       "alpha-risk", std::move(c)});
      }
    }
    return out;
  }
  if (name == "paper-table2") {
    for (const double alpha0 : {0.2, 0.5, 0.8}) {
      for (const double lambda : {1.1, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 15.0, 20.0,
                                  30.0, 40.0}) {
        ExperimentConfig c;
        c.spec = ZipfSpec{1.0 / alpha0};
        c.n = 1000;
        c.lambda = lambda;
        c.replicates = 1000;
        c.seed = seed;
        c.estimators = comparison_estimators;
        c.threshold_c = 10.0;
        out.push_back({"alpha0=" + std::to_string(alpha0) + ",lambda=" + std::to_string(lambda),
                       "unseen-risk", std::move(c)});
      }
    }
    return out;
  }
  if (name == "paper-large-lambda") {
    for (const double lambda : {100.0, 200.0, 500.0, 1000.0, 2000.0, 5000.0, 10000.0}) {
      ExperimentConfig c;
      c.spec = ZipfSpec{1.0 / 0.8};
      c.n = 1000;
      c.lambda = lambda;
      c.replicates = 100;
      c.seed = seed;
      c.estimators = {"plugin"};
      c.threshold_c = 10.0;
      out.push_back({"alpha0=0.8,lambda=" + std::to_string(lambda), "unseen-risk", std::move(c)});
    }
    return out;
  }
  if (name == "paper-double-zipf") {
    for (std::uint64_t J = 10; J <= 290; J += 40) {
      ExperimentConfig base;
      base.spec = DoubleZipfSpec{0.5, 0.4, J};
      base.n = 1000;
      base.lambda = 50.0;
      base.seed = seed;
      base.estimators = {"plugin"};
      base.threshold_c = 10.0;

      ExperimentConfig alpha_cfg = base;
      alpha_cfg.replicates = 1000;
      out.push_back({"J=" + std::to_string(J), "alpha-risk", std::move(alpha_cfg)});

      ExperimentConfig unseen_cfg = base;
      unseen_cfg.replicates = 100;
      out.push_back({"J=" + std::to_string(J), "unseen-risk", std::move(unseen_cfg)});
    }
    return out;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace unseen
