// Deterministic one-vs-all policies over per-arm models, and their
// epsilon-greedy stochastic wrappers.
//
// The ranker kind predicts argmax_a (w_a.x - s_a): subtracting the learnt
// threshold s_a makes scores comparable across arms by cancelling each
// ranker's inherent scoring bias. The classifier kind predicts the argmax of
// raw classifier scores (bias included).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditrank/model.hpp"
#include "banditrank/rng.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

enum class PolicyKind { ranker, classifier };

inline const char* to_string(PolicyKind k) {
  return k == PolicyKind::ranker ? "ranker" : "classifier";
}

inline PolicyKind policy_kind_from_string(const std::string& s) {
  if (s == "ranker") return PolicyKind::ranker;
  if (s == "classifier") return PolicyKind::classifier;
  throw std::invalid_argument("unknown policy kind '" + s + "'");
}

struct ArmSuitePolicy {
  PolicyKind kind = PolicyKind::ranker;
  int dimension = 0;  // context dimension the models expect (before bias)
  std::vector<ArmModel> arms;

  int num_arms() const { return static_cast<int>(arms.size()); }

  std::vector<int> excluded_arms() const {
    std::vector<int> out;
    for (int a = 0; a < num_arms(); ++a)
      if (arms[static_cast<std::size_t>(a)].untrainable) out.push_back(a);
    return out;
  }

  void validate() const {
    if (arms.empty()) throw std::invalid_argument("policy has no arms");
    bool any = false;
    for (const auto& am : arms) {
      if (am.untrainable) continue;
      any = true;
      if (kind == PolicyKind::ranker && !am.threshold)
        throw std::invalid_argument("ranker arm lacks a threshold score");
    }
    if (!any) throw std::runtime_error("all arms untrainable");
  }
};

// Score used for the cross-arm argmax: threshold-shifted for rankers, raw
// for classifiers.
inline double normalized_score(const ArmSuitePolicy& p, int arm, const ContextVector& x) {
  const ArmModel& am = p.arms[static_cast<std::size_t>(arm)];
  double s = am.model.score(x);
  if (p.kind == PolicyKind::ranker) s -= *am.threshold;
  return s;
}

// Argmax of normalized scores over non-excluded arms; ties break to the
// smallest arm index.
inline int predict_deterministic(const ArmSuitePolicy& p, const ContextVector& x) {
  if (static_cast<int>(x.size()) != p.dimension)
    throw std::invalid_argument("context has dimension " + std::to_string(x.size()) +
                                ", policy expects " + std::to_string(p.dimension));
  int best = -1;
  double best_score = 0.0;
  for (int a = 0; a < p.num_arms(); ++a) {
    if (p.arms[static_cast<std::size_t>(a)].untrainable) continue;
    const double s = normalized_score(p, a, x);
    if (best < 0 || s > best_score) {
      best = a;
      best_score = s;
    }
  }
  if (best < 0) throw std::runtime_error("all arms untrainable");
  return best;
}

struct StochasticPolicy {
  ArmSuitePolicy base;
  double epsilon = 0.0;  // in [0, 1]

  // True when the greedy arm gets less mass than the others; still a valid
  // distribution, but worth a warning upstream.
  bool epsilon_exceeds_uniform() const {
    const int k = base.num_arms();
    return k >= 2 && epsilon > static_cast<double>(k - 1) / k;
  }
};

// Probability 1 - epsilon on the greedy arm, epsilon/(K-1) on every other
// arm. Excluded arms still receive exploration mass; the exploit step alone
// avoids them.
inline std::vector<double> action_distribution(const StochasticPolicy& sp,
                                               const ContextVector& x) {
  if (!(sp.epsilon >= 0.0 && sp.epsilon <= 1.0))
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  const int k = sp.base.num_arms();
  if (sp.epsilon > 0.0 && k < 2) throw std::runtime_error("no arms to explore");
  const int greedy = predict_deterministic(sp.base, x);
  std::vector<double> p(static_cast<std::size_t>(k),
                        k > 1 ? sp.epsilon / (k - 1) : 0.0);
  p[static_cast<std::size_t>(greedy)] = 1.0 - sp.epsilon;
  return p;
}

inline int sample_action(const StochasticPolicy& sp, const ContextVector& x, Rng& rng) {
  const auto dist = action_distribution(sp, x);
  const double u = rng.real01();
  double cum = 0.0;
  for (std::size_t a = 0; a < dist.size(); ++a) {
    cum += dist[a];
    if (u < cum) return static_cast<int>(a);
  }
  return static_cast<int>(dist.size()) - 1;  // guard against rounding in cum
}

}  // namespace banditrank
