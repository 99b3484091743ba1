#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unseen/distributions.hpp"
#include "unseen/partition.hpp"

namespace unseen {

// Known estimator identifiers: plugin, gt, sgt-poisson, sgt-binomial,
// sgt-binomial-et, null.
bool is_known_estimator(const std::string& id);
const std::vector<std::string>& all_estimator_ids();

struct ExperimentConfig {
  DistributionSpec spec = ZipfSpec{2.0};
  std::uint64_t n = 1000;
  double lambda = 1.0;  // m = floor(lambda * n) future samples
  std::uint32_t replicates = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> estimators = {"plugin"};
  double threshold_c = 1.0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct RiskReport {
  std::optional<double> alpha_risk;     // MC mean of (alpha_hat - alpha0)^2
  std::optional<double> alpha_risk_se;  // MC standard error of that mean
  std::map<std::string, double> unseen_risk;     // normalized risk per estimator
  std::map<std::string, double> unseen_risk_se;  // numerator se / mean(U)^2
  double mean_unseen = 0.0;
  double mean_unseen_se = 0.0;
  std::uint32_t replicates_used = 0;
  std::uint64_t seed = 0;
  double true_alpha = 0.0;
};

bool operator==(const RiskReport& a, const RiskReport& b);

// Scalars produced by one replicate. Aggregation canonicalizes by replicate
// index, so merged results do not depend on arrival order or thread count.
struct ReplicateRecord {
  std::uint32_t index = 0;
  double alpha_sq_err = 0.0;
  double u_true = 0.0;
  std::vector<double> estimator_sq_err;  // aligned with config.estimators
};

RiskReport reduce_alpha_records(const ExperimentConfig& config,
                                std::vector<ReplicateRecord> records);
RiskReport reduce_unseen_records(const ExperimentConfig& config,
                                 std::vector<ReplicateRecord> records);

// MC risk of the tail-index MLE against the spec's true index. Replicate r
// draws n samples with child seed r.
RiskReport mc_alpha_risk(const ExperimentConfig& config);

// MC normalized risk of the configured unseen estimators. Each replicate
// draws n + floor(lambda n) samples in one stream; the unseen count is the
// number of species in the suffix absent from the prefix, identically
// K_{n+m} - K_n.
RiskReport mc_unseen_risk(const ExperimentConfig& config);

// Evaluate estimators by id on one observed fingerprint.
std::vector<double> evaluate_estimators(std::span<const std::string> ids,
                                        const Fingerprint& fp, double lambda,
                                        double threshold_c);

// Slope r of the least-squares line log(risk) = -r log(n) + C.
double rate_fit(std::span<const std::pair<double, double>> n_risk_points);

// J-sweep of the double-Zipf experiment with common random numbers: every J
// value reuses the same child seeds.
struct SweepConfig {
  double alpha = 0.5;
  double beta = 0.4;
  std::vector<std::uint64_t> J_values;
  std::uint64_t n = 1000;
  double lambda = 50.0;
  std::uint32_t alpha_replicates = 1000;
  std::uint32_t unseen_replicates = 100;
  std::uint64_t seed = 1;
  double threshold_c = 10.0;
  std::vector<std::string> estimators = {"plugin"};
  unsigned threads = 0;
};

std::vector<RiskReport> double_zipf_sweep(const SweepConfig& config);

// Split-evaluation protocol on a real dataset: subsample n = floor(N/(1+l))
// individuals without replacement, treat the rest as the future, and score
// the normalized error E = (estimate - U)/U per split. Splits with U = 0
// have no defined error; they are counted and excluded.
struct SplitEvalReport {
  double lambda = 0.0;
  std::uint64_t n_used = 0;
  std::uint32_t splits_requested = 0;
  std::uint32_t splits_excluded = 0;
  std::map<std::string, double> mse;  // mean of E_i^2 over usable splits
  std::map<std::string, std::vector<double>> per_split_errors;
  std::uint64_t seed = 0;
};

SplitEvalReport realdata_protocol(const SampleCounts& dataset, double lambda,
                                  std::uint32_t splits, std::uint64_t seed,
                                  std::span<const std::string> estimators,
                                  double threshold_c = 1.0);

// Named experiment lists reproducing the source configurations.
struct PresetExperiment {
  std::string label;
  std::string kind;  // "alpha-risk" | "unseen-risk"
  ExperimentConfig config;
};

std::vector<std::string> preset_names();
std::vector<PresetExperiment> preset(const std::string& name, std::uint64_t seed);

}  // namespace unseen
