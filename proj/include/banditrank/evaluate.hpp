// Policy evaluation: exact click-through rate on full-information data,
// importance-weighted click-through rate on logged bandit data, Student-t
// lower confidence bounds, and cumulative regret accounting.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditrank/policy.hpp"
#include "banditrank/student_t.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

enum class EstimatorKind { true_ctr, iw_ctr };

inline const char* to_string(EstimatorKind k) {
  return k == EstimatorKind::true_ctr ? "true_ctr" : "iw_ctr";
}

struct EvaluationReport {
  EstimatorKind estimator = EstimatorKind::true_ctr;
  double point = 0.0;
  std::optional<double> lcb;  // absent for the full-information estimator
  double delta = 0.05;
  std::size_t n = 0;
  double sample_std = 0.0;
};

namespace detail {

inline double sample_std_dev(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace detail

// One-sided lower confidence bound at level 1 - delta:
// mean - std/sqrt(n) * t_{1-delta, n-1}.
inline double lcb(const std::vector<double>& values, double delta) {
  if (values.size() < 2)
    throw std::invalid_argument("lower confidence bound needs at least 2 samples");
  if (!(delta > 0.0 && delta <= 0.5))
    throw std::invalid_argument("delta must lie in (0, 0.5]");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  const double sd = detail::sample_std_dev(values, mean);
  const double t = student_t_quantile(1.0 - delta, static_cast<double>(values.size() - 1));
  return mean - sd / std::sqrt(static_cast<double>(values.size())) * t;
}

// Fraction of full-information test records whose logged best arm matches the
// policy's pick. Exact on the given sample, so no confidence bound.
inline EvaluationReport true_ctr(const ArmSuitePolicy& policy, const Dataset& test) {
  if (test.kind != DatasetKind::full_information)
    throw std::invalid_argument("true CTR needs full-information data");
  if (test.supervised.empty()) throw std::invalid_argument("empty test set");
  std::vector<double> hits;
  hits.reserve(test.supervised.size());
  for (const auto& r : test.supervised)
    hits.push_back(predict_deterministic(policy, r.context) == r.label ? 1.0 : 0.0);
  EvaluationReport rep;
  rep.estimator = EstimatorKind::true_ctr;
  rep.n = hits.size();
  for (double h : hits) rep.point += h;
  rep.point /= static_cast<double>(rep.n);
  rep.sample_std = detail::sample_std_dev(hits, rep.point);
  return rep;
}

// Unbiased CTR estimate from a logged bandit test set:
// X_i = r_i * pi(a_i | x_i) / p_i, reported with its Student-t lower bound.
// weight_clip caps pi/p ratios when finite (off by default; clipping trades
// variance for bias).
inline EvaluationReport importance_weighted_ctr(
    const StochasticPolicy& policy, const Dataset& test, double delta,
    double weight_clip = std::numeric_limits<double>::infinity()) {
  if (test.kind != DatasetKind::bandit)
    throw std::invalid_argument("importance-weighted CTR needs bandit data");
  if (test.bandit.size() < 2)
    throw std::invalid_argument("importance-weighted CTR needs at least 2 records");
  if (!(weight_clip > 0.0)) throw std::invalid_argument("weight clip must be positive");
  std::vector<double> values;
  values.reserve(test.bandit.size());
  for (const auto& r : test.bandit) {
    if (!(r.propensity > 0.0))
      throw std::runtime_error("unlogged propensity in bandit test record");
    const auto dist = action_distribution(policy, r.context);
    double ratio = dist[static_cast<std::size_t>(r.action)] / r.propensity;
    if (ratio > weight_clip) ratio = weight_clip;
    values.push_back(static_cast<double>(r.reward) * ratio);
  }
  EvaluationReport rep;
  rep.estimator = EstimatorKind::iw_ctr;
  rep.delta = delta;
  rep.n = values.size();
  for (double v : values) rep.point += v;
  rep.point /= static_cast<double>(rep.n);
  rep.sample_std = detail::sample_std_dev(values, rep.point);
  rep.lcb = lcb(values, delta);
  return rep;
}

struct RegretLedger {
  std::size_t rounds = 0;
  long long algorithm_clicks = 0;
  long long comparator_clicks = 0;  // best fixed arm, or the supplied oracle
  long long regret = 0;             // comparator minus algorithm
};

// rewards[t][a] holds the (possibly counterfactual) reward of arm a in round
// t. The comparator is the best single fixed arm in hindsight, unless
// per-round oracle rewards are supplied.
inline RegretLedger regret_ledger(const std::vector<std::vector<int>>& rewards,
                                  const std::vector<int>& chosen,
                                  const std::vector<int>* oracle = nullptr) {
  if (rewards.size() != chosen.size())
    throw std::invalid_argument("reward matrix and chosen arms disagree on round count");
  if (oracle && oracle->size() != rewards.size())
    throw std::invalid_argument("oracle rewards disagree on round count");
  RegretLedger ledger;
  ledger.rounds = rewards.size();
  if (rewards.empty()) return ledger;
  const std::size_t k = rewards.front().size();
  std::vector<long long> per_arm(k, 0);
  for (std::size_t t = 0; t < rewards.size(); ++t) {
    if (rewards[t].size() != k)
      throw std::invalid_argument("ragged reward matrix");
    const int a = chosen[t];
    if (a < 0 || static_cast<std::size_t>(a) >= k)
      throw std::invalid_argument("chosen arm out of range");
    ledger.algorithm_clicks += rewards[t][static_cast<std::size_t>(a)];
    for (std::size_t j = 0; j < k; ++j) per_arm[j] += rewards[t][j];
  }
  if (oracle) {
    for (int r : *oracle) ledger.comparator_clicks += r;
  } else {
    for (long long c : per_arm)
      if (c > ledger.comparator_clicks) ledger.comparator_clicks = c;
  }
  ledger.regret = ledger.comparator_clicks - ledger.algorithm_clicks;
  return ledger;
}

}  // namespace banditrank
