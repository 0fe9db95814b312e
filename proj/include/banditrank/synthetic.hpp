// Synthetic sparse-click bandit generator with a known logistic ground
// truth. Contexts are standard Gaussian; each arm clicks with probability
// sigmoid(w_a.x + b_a), where b_a is calibrated so the arm's marginal click
// rate hits a requested target. Because the ground truth is known, exact
// expected CTRs and full counterfactual reward vectors are available.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditrank/policy.hpp"
#include "banditrank/rng.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

enum class LoggingPolicy { uniform, epsilon_greedy_oracle };

struct SyntheticBanditSpec {
  int num_arms = 2;
  int dimension = 10;
  std::vector<double> target_rates;  // one marginal click rate per arm, in (0,1)
  std::size_t train_records = 0;
  std::size_t test_records = 0;
  std::uint64_t seed = 0;
  LoggingPolicy train_logging = LoggingPolicy::uniform;
  double logging_epsilon = 0.2;  // used by the epsilon_greedy_oracle logger
};

struct GroundTruthClickModel {
  std::vector<std::vector<double>> weights;  // num_arms x dimension
  std::vector<double> biases;

  double click_probability(int arm, const ContextVector& x) const {
    const auto& w = weights[static_cast<std::size_t>(arm)];
    double t = biases[static_cast<std::size_t>(arm)];
    for (std::size_t j = 0; j < w.size(); ++j) t += w[j] * x[j];
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
  }

  int best_arm(const ContextVector& x) const {
    int best = 0;
    double best_p = click_probability(0, x);
    for (int a = 1; a < static_cast<int>(weights.size()); ++a) {
      const double p = click_probability(a, x);
      if (p > best_p) {
        best = a;
        best_p = p;
      }
    }
    return best;
  }
};

struct SyntheticBandit {
  Dataset train;
  Dataset test;
  // Counterfactual rewards for every arm on each test row; column
  // test.bandit[i].action matches test.bandit[i].reward.
  std::vector<std::vector<int>> test_rewards;
  GroundTruthClickModel truth;
};

namespace detail {

inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// E[sigmoid(s*z + b)] for z ~ N(0,1), by composite Simpson on [-10, 10].
inline double marginal_click_rate(double s, double b) {
  constexpr int m = 2000;
  constexpr double lo = -10.0, hi = 10.0;
  const double h = (hi - lo) / m;
  auto f = [&](double z) {
    return sigmoid(s * z + b) * std::exp(-0.5 * z * z);
  };
  double acc = f(lo) + f(hi);
  for (int i = 1; i < m; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0 / std::sqrt(8.0 * std::atan(1.0));
}

// Finds b with marginal rate equal to target; the rate is strictly
// increasing in b, so plain bisection suffices.
inline double calibrate_bias(double weight_norm, double target) {
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("unachievable target rate " + std::to_string(target));
  double lo = -60.0, hi = 60.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (marginal_click_rate(weight_norm, mid) < target ? lo : hi) = mid;
  }
  const double b = 0.5 * (lo + hi);
  const double achieved = marginal_click_rate(weight_norm, b);
  if (std::fabs(achieved - target) > 0.05 * target)
    throw std::runtime_error("unachievable target rate " + std::to_string(target));
  return b;
}

}  // namespace detail

// Exact expected CTR of a stochastic policy on the given contexts:
// mean over x of sum_a pi(a|x) * p_a(x).
inline double expected_ctr_on_contexts(const GroundTruthClickModel& truth,
                                       const StochasticPolicy& policy,
                                       const std::vector<ContextVector>& contexts) {
  if (contexts.empty()) throw std::invalid_argument("no contexts");
  double acc = 0.0;
  for (const auto& x : contexts) {
    const auto dist = action_distribution(policy, x);
    for (std::size_t a = 0; a < dist.size(); ++a)
      acc += dist[a] * truth.click_probability(static_cast<int>(a), x);
  }
  return acc / static_cast<double>(contexts.size());
}

inline SyntheticBandit generate_synthetic_bandit(const SyntheticBanditSpec& spec) {
  if (spec.num_arms < 1) throw std::invalid_argument("need at least one arm");
  if (spec.dimension < 1) throw std::invalid_argument("need at least one feature");
  if (spec.target_rates.size() != static_cast<std::size_t>(spec.num_arms))
    throw std::invalid_argument("need one target rate per arm");
  if (!(spec.logging_epsilon >= 0.0 && spec.logging_epsilon <= 1.0))
    throw std::invalid_argument("logging epsilon must lie in [0, 1]");

  SyntheticBandit out;
  auto& truth = out.truth;
  Rng model_rng(derive_seed(spec.seed, "model"));
  for (int a = 0; a < spec.num_arms; ++a) {
    std::vector<double> w(static_cast<std::size_t>(spec.dimension));
    double norm_sq = 0.0;
    for (auto& v : w) {
      v = model_rng.gaussian() / std::sqrt(static_cast<double>(spec.dimension));
      norm_sq += v * v;
    }
    truth.weights.push_back(std::move(w));
    truth.biases.push_back(detail::calibrate_bias(
        std::sqrt(norm_sq), spec.target_rates[static_cast<std::size_t>(a)]));
  }

  const int k = spec.num_arms;
  const double uniform = 1.0 / k;
  auto draw_context = [&](Rng& rng) {
    ContextVector x(static_cast<std::size_t>(spec.dimension));
    for (auto& v : x) v = rng.gaussian();
    return x;
  };

  out.train.kind = DatasetKind::bandit;
  out.train.dimension = spec.dimension;
  out.train.num_arms = k;
  Rng train_rng(derive_seed(spec.seed, "train"));
  for (std::size_t i = 0; i < spec.train_records; ++i) {
    ContextVector x = draw_context(train_rng);
    int action;
    double propensity;
    if (spec.train_logging == LoggingPolicy::uniform || k == 1) {
      action = static_cast<int>(train_rng.index_below(static_cast<std::size_t>(k)));
      propensity = uniform;
    } else {
      const int greedy = truth.best_arm(x);
      const double eps = spec.logging_epsilon;
      if (train_rng.real01() < 1.0 - eps) {
        action = greedy;
      } else {
        auto pick = static_cast<int>(train_rng.index_below(static_cast<std::size_t>(k - 1)));
        action = pick < greedy ? pick : pick + 1;
      }
      propensity = action == greedy ? 1.0 - eps : eps / (k - 1);
    }
    const int reward = train_rng.bernoulli(truth.click_probability(action, x)) ? 1 : 0;
    out.train.bandit.push_back({std::move(x), action, reward, propensity});
  }

  out.test.kind = DatasetKind::bandit;
  out.test.dimension = spec.dimension;
  out.test.num_arms = k;
  Rng test_rng(derive_seed(spec.seed, "test"));
  out.test_rewards.reserve(spec.test_records);
  for (std::size_t i = 0; i < spec.test_records; ++i) {
    ContextVector x = draw_context(test_rng);
    std::vector<int> rewards(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a)
      rewards[static_cast<std::size_t>(a)] =
          test_rng.bernoulli(truth.click_probability(a, x)) ? 1 : 0;
    const auto action = static_cast<int>(test_rng.index_below(static_cast<std::size_t>(k)));
    out.test.bandit.push_back(
        {std::move(x), action, rewards[static_cast<std::size_t>(action)], uniform});
    out.test_rewards.push_back(std::move(rewards));
  }
  return out;
}

}  // namespace banditrank
