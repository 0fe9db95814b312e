// Trains a full per-arm model suite from a bandit dataset: per-arm binary
// sets, optional undersampling, regularization chosen on a held-out slice,
// final fit on the whole arm set, and threshold learning for rankers.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "banditrank/model.hpp"
#include "banditrank/pipeline.hpp"
#include "banditrank/policy.hpp"
#include "banditrank/rng.hpp"
#include "banditrank/train.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

struct SuiteConfig {
  PolicyKind kind = PolicyKind::ranker;
  std::vector<double> lambda_grid{0.01, 0.1, 1.0, 10.0};
  long iterations = 1'000'000;
  double step_size_base = 1.0;
  Surrogate surrogate = Surrogate::logistic;
  std::optional<UndersampleRatio> undersample;
  double validation_fraction = 0.2;
  ThresholdMeasure threshold_measure = ThresholdMeasure::f1;
  // data_seed drives undersampling and the validation split, so those are
  // shared when the same data is used to train different policy kinds;
  // train_seed drives the SGD pair sampling.
  std::uint64_t data_seed = 0;
  std::uint64_t train_seed = 0;
};

struct ArmTrainInfo {
  int arm = 0;
  std::size_t positives = 0;  // counts after undersampling
  std::size_t negatives = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  bool untrainable = false;
};

struct SuiteTrainResult {
  ArmSuitePolicy policy;
  std::vector<ArmTrainInfo> arms;
};

namespace detail {

// Splits an arm's set into (train, validation) stratified by outcome:
// a fraction of each side, chosen by shuffle, goes to validation.
inline std::pair<BinaryTrainingSet, BinaryTrainingSet> validation_split(
    const BinaryTrainingSet& set, double fraction, std::uint64_t seed) {
  auto pick = [](const std::vector<ContextVector>& rows, double frac, Rng& rng,
                 std::vector<ContextVector>& train, std::vector<ContextVector>& val) {
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.index_below(i)]);
    const auto n_val = static_cast<std::size_t>(frac * static_cast<double>(rows.size()));
    for (std::size_t i = 0; i < order.size(); ++i)
      (i < n_val ? val : train).push_back(rows[order[i]]);
  };
  Rng rng(seed);
  BinaryTrainingSet train{set.arm, {}, {}};
  BinaryTrainingSet val{set.arm, {}, {}};
  pick(set.positives, fraction, rng, train.positives, val.positives);
  pick(set.negatives, fraction, rng, train.negatives, val.negatives);
  return {std::move(train), std::move(val)};
}

inline double validation_accuracy(const LinearModel& model, const BinaryTrainingSet& val) {
  std::size_t correct = 0;
  for (const auto& x : val.positives)
    if (model.score(x) > 0.0) ++correct;
  for (const auto& x : val.negatives)
    if (!(model.score(x) > 0.0)) ++correct;
  const auto n = val.positives.size() + val.negatives.size();
  return static_cast<double>(correct) / static_cast<double>(n);
}

inline LinearModel train_one(PolicyKind kind, const BinaryTrainingSet& set,
                             const TrainConfig& cfg) {
  return kind == PolicyKind::ranker ? train_ranker(set, cfg)
                                    : train_logistic_classifier(set, cfg);
}

// Picks a regularization strength from the grid by accuracy (classifier) or
// pairwise ordering (ranker) on a held-out slice. Ties and degenerate splits
// fall back to the smallest lambda.
inline double select_lambda(PolicyKind kind, const BinaryTrainingSet& set,
                            const SuiteConfig& cfg, int arm,
                            const std::vector<double>& grid) {
  if (grid.size() < 2) return grid.front();
  auto [train, val] = validation_split(set, cfg.validation_fraction,
                                       derive_seed(cfg.data_seed, "val", arm));
  const bool usable =
      kind == PolicyKind::ranker
          ? !train.positives.empty() && !train.negatives.empty() &&
                !val.positives.empty() && !val.negatives.empty()
          : (!train.positives.empty() || !train.negatives.empty()) &&
                (!val.positives.empty() || !val.negatives.empty());
  if (!usable) return grid.front();

  double best_lambda = grid.front();
  double best_metric = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    TrainConfig tc;
    tc.iterations = cfg.iterations;
    tc.lambda = grid[i];
    tc.step_size_base = cfg.step_size_base;
    tc.surrogate = cfg.surrogate;
    tc.seed = derive_seed(cfg.train_seed, "grid", arm, static_cast<int>(i));
    const LinearModel model = train_one(kind, train, tc);
    const double metric = kind == PolicyKind::ranker
                              ? 1.0 - empirical_aucl(model, val)
                              : validation_accuracy(model, val);
    if (metric > best_metric) {
      best_metric = metric;
      best_lambda = grid[i];
    }
  }
  return best_lambda;
}

}  // namespace detail

// An arm is trainable for the ranker kind when it has both positives and
// negatives, and for the classifier kind when it has any examples at all.
inline bool arm_trainable(PolicyKind kind, const BinaryTrainingSet& set) {
  if (kind == PolicyKind::ranker)
    return !set.positives.empty() && !set.negatives.empty();
  return !set.positives.empty() || !set.negatives.empty();
}

inline SuiteTrainResult train_arm_suite(const Dataset& data, const SuiteConfig& cfg) {
  if (data.kind != DatasetKind::bandit)
    throw std::invalid_argument("suite training expects bandit data");
  if (cfg.lambda_grid.empty())
    throw std::invalid_argument("lambda grid is empty");
  std::vector<double> grid = cfg.lambda_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto sets = build_per_arm_binary_sets(data);
  SuiteTrainResult result;
  result.policy.kind = cfg.kind;
  result.policy.dimension = data.dimension;
  result.policy.arms.resize(sets.size());
  result.arms.resize(sets.size());

  for (std::size_t a = 0; a < sets.size(); ++a) {
    BinaryTrainingSet set = std::move(sets[a]);
    if (cfg.undersample && !set.positives.empty() && !set.negatives.empty())
      set = undersample_negatives(set, *cfg.undersample,
                                  derive_seed(cfg.data_seed, "undersample", static_cast<int>(a)));
    ArmTrainInfo& info = result.arms[a];
    info.arm = static_cast<int>(a);
    info.positives = set.positives.size();
    info.negatives = set.negatives.size();
    ArmModel& am = result.policy.arms[a];
    am.model.arm = static_cast<int>(a);
    if (!arm_trainable(cfg.kind, set)) {
      info.untrainable = true;
      am.untrainable = true;
      continue;
    }
    info.lambda = detail::select_lambda(cfg.kind, set, cfg, static_cast<int>(a), grid);
    info.seed = derive_seed(cfg.train_seed, "final", static_cast<int>(a));
    TrainConfig tc;
    tc.iterations = cfg.iterations;
    tc.lambda = info.lambda;
    tc.step_size_base = cfg.step_size_base;
    tc.surrogate = cfg.surrogate;
    tc.seed = info.seed;
    am.model = detail::train_one(cfg.kind, set, tc);
    if (cfg.kind == PolicyKind::ranker)
      am.threshold = learn_threshold(am.model, set, cfg.threshold_measure);
  }
  result.policy.validate();
  return result;
}

}  // namespace banditrank
