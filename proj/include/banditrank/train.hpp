// Pairwise-AUC ranker training, logistic classifier training, and
// threshold-score learning.
//
// The ranking loss counts (positive, negative) pairs scored in the wrong
// order. Its convex relaxation
//
//   L(w) = 1/(|S+||S-|) sum_{x+} sum_{x-} l(w.(x+ - x-)) + lambda/2 ||w||^2
//
// is minimized by SGD: each step samples one positive and one negative
// uniformly and descends the pair's gradient, which mimics full gradient
// descent on the double sum without ever materializing the pair set.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditrank/model.hpp"
#include "banditrank/rng.hpp"
#include "banditrank/surrogate.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

struct TrainConfig {
  long iterations = 1'000'000;
  double lambda = 0.0;           // l2 strength, applied as lambda/2 ||w||^2
  double step_size_base = 1.0;   // eta_k = step_size_base / sqrt(k)
  std::uint64_t seed = 0;
  Surrogate surrogate = Surrogate::logistic;
};

namespace detail {

inline void require_both_sides(const BinaryTrainingSet& set, const char* op) {
  if (set.positives.empty() || set.negatives.empty())
    throw std::runtime_error(std::string(op) + ": arm " + std::to_string(set.arm + 1) +
                             " needs both positive and negative examples");
}

inline double dot(const std::vector<double>& w, const ContextVector& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += w[j] * x[j];
  return s;
}

}  // namespace detail

// Fraction of (positive, negative) pairs ranked in the wrong order under
// strict inequality; ties contribute nothing. Computed as an integer
// violation count divided once, so duplicating either side k-fold leaves the
// value exactly unchanged.
inline double empirical_aucl(const LinearModel& model, const BinaryTrainingSet& set) {
  detail::require_both_sides(set, "empirical_aucl");
  std::vector<double> pos_scores;
  pos_scores.reserve(set.positives.size());
  for (const auto& x : set.positives) pos_scores.push_back(detail::dot(model.weights, x));
  std::uint64_t violations = 0;
  for (const auto& x : set.negatives) {
    const double sn = detail::dot(model.weights, x);
    for (double sp : pos_scores)
      if (sp - sn < 0.0) ++violations;
  }
  return static_cast<double>(violations) /
         (static_cast<double>(set.positives.size()) * static_cast<double>(set.negatives.size()));
}

// Full double-sum surrogate objective; the oracle the SGD path is tested
// against.
inline double surrogate_objective(const LinearModel& model, const BinaryTrainingSet& set,
                                  Surrogate s, double lambda) {
  detail::require_both_sides(set, "surrogate_objective");
  std::vector<double> pos_scores;
  pos_scores.reserve(set.positives.size());
  for (const auto& x : set.positives) pos_scores.push_back(detail::dot(model.weights, x));
  double loss = 0.0;
  for (const auto& x : set.negatives) {
    const double sn = detail::dot(model.weights, x);
    for (double sp : pos_scores) loss += surrogate_value_and_grad(s, sp - sn).first;
  }
  loss /= static_cast<double>(set.positives.size()) * static_cast<double>(set.negatives.size());
  double norm2 = 0.0;
  for (double w : model.weights) norm2 += w * w;
  return loss + 0.5 * lambda * norm2;
}

inline std::vector<double> surrogate_objective_grad(const LinearModel& model,
                                                    const BinaryTrainingSet& set, Surrogate s,
                                                    double lambda) {
  detail::require_both_sides(set, "surrogate_objective_grad");
  std::vector<double> grad(model.weights.size(), 0.0);
  for (const auto& xp : set.positives) {
    const double sp = detail::dot(model.weights, xp);
    for (const auto& xn : set.negatives) {
      const double g = surrogate_value_and_grad(s, sp - detail::dot(model.weights, xn)).second;
      for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += g * (xp[j] - xn[j]);
    }
  }
  const double scale =
      static_cast<double>(set.positives.size()) * static_cast<double>(set.negatives.size());
  for (std::size_t j = 0; j < grad.size(); ++j)
    grad[j] = grad[j] / scale + lambda * model.weights[j];
  return grad;
}

// Pairwise SGD on the surrogate objective. w starts at zero; step k samples
// x+ and x- uniformly and applies
//   w <- w - eta_k (l'(w.(x+ - x-)) (x+ - x-) + lambda w),  eta_k = eta0/sqrt(k).
// Bit-identical weights for identical config.
inline LinearModel train_ranker(const BinaryTrainingSet& set, const TrainConfig& cfg) {
  if (set.positives.empty() || set.negatives.empty())
    throw std::runtime_error("untrainable arm " + std::to_string(set.arm + 1) +
                             ": needs both positive and negative examples");
  if (cfg.iterations < 1) throw std::invalid_argument("iterations must be at least 1");

  const std::size_t d = set.positives.front().size();
  LinearModel model;
  model.arm = set.arm;
  model.weights.assign(d, 0.0);
  Rng rng(cfg.seed);

  for (long k = 1; k <= cfg.iterations; ++k) {
    const ContextVector& xp = set.positives[rng.index_below(set.positives.size())];
    const ContextVector& xn = set.negatives[rng.index_below(set.negatives.size())];
    double t = 0.0;
    for (std::size_t j = 0; j < d; ++j) t += model.weights[j] * (xp[j] - xn[j]);
    const double g = surrogate_value_and_grad(cfg.surrogate, t).second;
    const double eta = cfg.step_size_base / std::sqrt(static_cast<double>(k));
    if (cfg.lambda > 0.0) {
      // Truncate so a large eta*lambda cannot flip the weight sign.
      const double shrink = std::max(0.0, 1.0 - eta * cfg.lambda);
      for (std::size_t j = 0; j < d; ++j)
        model.weights[j] = shrink * model.weights[j] - eta * g * (xp[j] - xn[j]);
    } else {
      for (std::size_t j = 0; j < d; ++j) model.weights[j] -= eta * g * (xp[j] - xn[j]);
    }
  }
  model.trained = true;
  return model;
}

// Logistic classifier baseline: mean pointwise loss log(1 + exp(-y w.x))
// over the bias-augmented set, plus lambda/2 ||w||^2, by single-example SGD
// under the same step schedule as the ranker.
inline LinearModel train_logistic_classifier(const BinaryTrainingSet& set,
                                             const TrainConfig& cfg) {
  const std::size_t n_pos = set.positives.size();
  const std::size_t n_neg = set.negatives.size();
  if (n_pos + n_neg == 0)
    throw std::runtime_error("untrainable arm " + std::to_string(set.arm + 1) +
                             ": no examples at all");
  if (cfg.iterations < 1) throw std::invalid_argument("iterations must be at least 1");

  const std::size_t d =
      (n_pos > 0 ? set.positives.front() : set.negatives.front()).size();
  LinearModel model;
  model.arm = set.arm;
  model.weights.assign(d + 1, 0.0);  // trailing bias weight
  Rng rng(cfg.seed);

  for (long k = 1; k <= cfg.iterations; ++k) {
    const std::size_t pick = rng.index_below(n_pos + n_neg);
    const bool is_pos = pick < n_pos;
    const ContextVector& x = is_pos ? set.positives[pick] : set.negatives[pick - n_pos];
    const double y = is_pos ? 1.0 : -1.0;
    double margin = model.weights[d];
    for (std::size_t j = 0; j < d; ++j) margin += model.weights[j] * x[j];
    // d/dw log(1+exp(-y w.x)) = -y x / (1 + exp(y w.x))
    const double g = surrogate_value_and_grad(Surrogate::logistic, y * margin).second * y;
    const double eta = cfg.step_size_base / std::sqrt(static_cast<double>(k));
    const double shrink = cfg.lambda > 0.0 ? std::max(0.0, 1.0 - eta * cfg.lambda) : 1.0;
    for (std::size_t j = 0; j < d; ++j)
      model.weights[j] = shrink * model.weights[j] - eta * g * x[j];
    model.weights[d] = shrink * model.weights[d] - eta * g;
  }
  model.trained = true;
  return model;
}

enum class ThresholdMeasure { f1, precision, recall };

inline const char* to_string(ThresholdMeasure m) {
  switch (m) {
    case ThresholdMeasure::f1: return "f1";
    case ThresholdMeasure::precision: return "precision";
    default: return "recall";
  }
}

inline ThresholdMeasure threshold_measure_from_string(const std::string& s) {
  if (s == "f1") return ThresholdMeasure::f1;
  if (s == "precision") return ThresholdMeasure::precision;
  if (s == "recall") return ThresholdMeasure::recall;
  throw std::invalid_argument("unknown threshold measure '" + s + "'");
}

// Measure of the classification "score >= threshold is positive" given the
// confusion counts. Zero predicted positives give precision 0; zero
// precision + recall gives F1 0.
inline double classification_measure(ThresholdMeasure m, std::size_t tp, std::size_t fp,
                                     std::size_t n_pos) {
  const double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
  const double recall = n_pos == 0 ? 0.0 : static_cast<double>(tp) / n_pos;
  switch (m) {
    case ThresholdMeasure::precision: return precision;
    case ThresholdMeasure::recall: return recall;
    default:
      return precision + recall == 0.0 ? 0.0
                                       : 2.0 * precision * recall / (precision + recall);
  }
}

// Learns the per-arm threshold score s_a by maximizing a classification
// measure over the training scores. Candidates are the midpoints between
// consecutive distinct sorted scores plus one candidate below the minimum
// and one above the maximum (mirroring the adjacent gap). Ties take the
// smallest threshold, i.e. the most permissive classification.
inline double learn_threshold(const LinearModel& model, const BinaryTrainingSet& set,
                              ThresholdMeasure measure) {
  if (!model.trained) throw std::invalid_argument("learn_threshold requires a trained model");
  detail::require_both_sides(set, "learn_threshold");

  struct Scored {
    double score;
    bool positive;
  };
  std::vector<Scored> scored;
  scored.reserve(set.positives.size() + set.negatives.size());
  for (const auto& x : set.positives) scored.push_back({model.score(x), true});
  for (const auto& x : set.negatives) scored.push_back({model.score(x), false});
  std::sort(scored.begin(), scored.end(),
            [](const Scored& a, const Scored& b) { return a.score < b.score; });

  std::vector<double> distinct;
  distinct.push_back(scored.front().score);
  for (const auto& s : scored)
    if (s.score != distinct.back()) distinct.push_back(s.score);

  std::vector<double> candidates;
  if (distinct.size() == 1) {
    candidates = {distinct.front() - 1.0, distinct.front() + 1.0};
  } else {
    candidates.push_back(distinct.front() - 0.5 * (distinct[1] - distinct[0]));
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
      candidates.push_back(0.5 * (distinct[i] + distinct[i + 1]));
    candidates.push_back(distinct.back() +
                         0.5 * (distinct.back() - distinct[distinct.size() - 2]));
  }

  const std::size_t n_pos = set.positives.size();
  double best_measure = -1.0;
  double best_threshold = candidates.front();
  // Sweep candidates in increasing order, keeping counts of instances at or
  // above the candidate; each step drops the instances below the next one.
  std::size_t idx = 0;  // first instance with score >= candidate
  std::size_t tp = n_pos;
  std::size_t fp = set.negatives.size();
  for (double c : candidates) {
    while (idx < scored.size() && scored[idx].score < c) {
      if (scored[idx].positive)
        --tp;
      else
        --fp;
      ++idx;
    }
    const double m = classification_measure(measure, tp, fp, n_pos);
    if (m > best_measure) {  // strict: ties keep the earlier, smaller threshold
      best_measure = m;
      best_threshold = c;
    }
  }
  return best_threshold;
}

}  // namespace banditrank
