// Data transformations between supervised, bandit and per-arm binary forms:
// supervised-to-bandit conversion, per-arm binary set extraction, negative
// undersampling, and information-gain feature selection.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "banditrank/rng.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

struct ConversionConfig {
  std::uint64_t seed = 0;
  int num_arms = 0;  // 0 takes the dataset's K
};

// For each labeled record {x, a}: draw a' uniformly from [K]; emit
// {x, a', 1} if a' = a, else {x, a', 0}. The true label is hidden and the
// logging propensity is the uniform 1/K.
inline Dataset convert_supervised_to_bandit(const Dataset& data, const ConversionConfig& cfg) {
  if (data.kind != DatasetKind::full_information)
    throw std::invalid_argument("conversion expects a full-information dataset");
  const int K = cfg.num_arms > 0 ? cfg.num_arms : data.num_arms;
  if (K < 1) throw std::invalid_argument("conversion needs at least one arm");

  Dataset out;
  out.kind = DatasetKind::bandit;
  out.dimension = data.dimension;
  out.num_arms = K;
  out.arm_names = data.arm_names;
  out.bandit.reserve(data.supervised.size());

  Rng rng(cfg.seed);
  const double uniform = 1.0 / K;
  for (const auto& r : data.supervised) {
    const int displayed = static_cast<int>(rng.index_below(static_cast<std::size_t>(K)));
    out.bandit.push_back({r.context, displayed, displayed == r.label ? 1 : 0, uniform});
  }
  return out;
}

// Record {x, a, r} contributes x to arm a's positives iff r = 1, else to arm
// a's negatives. Records never cross arms.
inline std::vector<BinaryTrainingSet> build_per_arm_binary_sets(const Dataset& data) {
  if (data.kind != DatasetKind::bandit)
    throw std::invalid_argument("per-arm sets require a bandit dataset");
  std::vector<BinaryTrainingSet> sets(static_cast<std::size_t>(data.num_arms));
  for (int a = 0; a < data.num_arms; ++a) sets[a].arm = a;
  for (const auto& r : data.bandit) {
    auto& set = sets[static_cast<std::size_t>(r.action)];
    (r.reward == 1 ? set.positives : set.negatives).push_back(r.context);
  }
  return sets;
}

// Positive-to-negative ratio, e.g. {1, 2} keeps two negatives per positive.
using UndersampleRatio = std::pair<int, int>;

// Positives are untouched; negatives are subsampled without replacement down
// to floor(|S+| * neg / pos), or left alone if already at or below that.
inline BinaryTrainingSet undersample_negatives(const BinaryTrainingSet& set,
                                               UndersampleRatio pos_to_neg_ratio,
                                               std::uint64_t seed) {
  const auto [pos, neg] = pos_to_neg_ratio;
  if (pos <= 0 || neg <= 0) throw std::invalid_argument("ratio parts must be positive");
  if (set.positives.empty())
    throw std::runtime_error("arm " + std::to_string(set.arm + 1) + " has no positive examples");

  const std::size_t target =
      static_cast<std::size_t>(set.positives.size()) * static_cast<std::size_t>(neg) /
      static_cast<std::size_t>(pos);
  if (set.negatives.size() <= target) return set;

  std::vector<std::size_t> order(set.negatives.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  // Partial Fisher-Yates: only the first `target` slots are needed.
  for (std::size_t i = 0; i < target; ++i)
    std::swap(order[i], order[i + rng.index_below(order.size() - i)]);

  BinaryTrainingSet out;
  out.arm = set.arm;
  out.positives = set.positives;
  out.negatives.reserve(target);
  for (std::size_t i = 0; i < target; ++i) out.negatives.push_back(set.negatives[order[i]]);
  return out;
}

struct FeatureSelection {
  std::vector<int> kept_indices;  // sorted ascending
  std::vector<double> gains;      // aligned with kept_indices, in bits
};

namespace detail {

inline double entropy_bits(const std::vector<std::size_t>& counts, double total) {
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace detail

// IG(feature) = H(target) - H(target | binned feature), in bits. Continuous
// features are discretized into `bins` equal-width bins over their observed
// range. The target is the label (full information) or the reward (bandit).
// Entropies are computed from integer count tables, so the result is exactly
// invariant under record permutation.
inline FeatureSelection information_gain_select(const Dataset& data, double keep_fraction,
                                                int bins = 10) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
    throw std::invalid_argument("keep fraction must lie in (0, 1]");
  if (bins < 1) throw std::invalid_argument("bins must be positive");
  if (data.empty()) throw std::invalid_argument("cannot select features on empty dataset");

  const std::size_t n = data.size();
  const auto d = static_cast<std::size_t>(data.dimension);
  const bool full = data.kind == DatasetKind::full_information;
  const int n_targets = full ? data.num_arms : 2;

  auto target_of = [&](std::size_t i) {
    return full ? data.supervised[i].label : data.bandit[i].reward;
  };
  auto context_of = [&](std::size_t i) -> const ContextVector& {
    return full ? data.supervised[i].context : data.bandit[i].context;
  };

  std::vector<std::size_t> target_counts(static_cast<std::size_t>(n_targets), 0);
  for (std::size_t i = 0; i < n; ++i) ++target_counts[static_cast<std::size_t>(target_of(i))];
  const double h_target = detail::entropy_bits(target_counts, static_cast<double>(n));
  if (h_target == 0.0) throw std::runtime_error("zero-entropy target");

  std::vector<double> gain(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double lo = context_of(0)[j];
    double hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, context_of(i)[j]);
      hi = std::max(hi, context_of(i)[j]);
    }
    if (hi <= lo) continue;  // constant feature carries no information

    const double width = hi - lo;
    std::vector<std::size_t> joint(static_cast<std::size_t>(bins) *
                                   static_cast<std::size_t>(n_targets), 0);
    std::vector<std::size_t> bin_counts(static_cast<std::size_t>(bins), 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto b = static_cast<std::size_t>((context_of(i)[j] - lo) / width * bins);
      if (b >= static_cast<std::size_t>(bins)) b = static_cast<std::size_t>(bins) - 1;
      ++bin_counts[b];
      ++joint[b * static_cast<std::size_t>(n_targets) + static_cast<std::size_t>(target_of(i))];
    }

    double h_cond = 0.0;
    std::vector<std::size_t> slice(static_cast<std::size_t>(n_targets));
    for (std::size_t b = 0; b < static_cast<std::size_t>(bins); ++b) {
      if (bin_counts[b] == 0) continue;
      for (std::size_t t = 0; t < static_cast<std::size_t>(n_targets); ++t)
        slice[t] = joint[b * static_cast<std::size_t>(n_targets) + t];
      h_cond += static_cast<double>(bin_counts[b]) / static_cast<double>(n) *
                detail::entropy_bits(slice, static_cast<double>(bin_counts[b]));
    }
    gain[j] = std::max(0.0, h_target - h_cond);
  }

  const auto keep = static_cast<std::size_t>(
      std::ceil(keep_fraction * static_cast<double>(d) - 1e-9));
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (gain[static_cast<std::size_t>(a)] != gain[static_cast<std::size_t>(b)])
      return gain[static_cast<std::size_t>(a)] > gain[static_cast<std::size_t>(b)];
    return a < b;  // ties broken by lower index
  });

  FeatureSelection sel;
  sel.kept_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
  std::sort(sel.kept_indices.begin(), sel.kept_indices.end());
  sel.gains.reserve(keep);
  for (int idx : sel.kept_indices) sel.gains.push_back(gain[static_cast<std::size_t>(idx)]);
  return sel;
}

// Projects contexts onto the kept feature indices.
inline Dataset apply_feature_selection(const Dataset& data, const std::vector<int>& kept) {
  for (int idx : kept)
    if (idx < 0 || idx >= data.dimension)
      throw std::invalid_argument("feature index " + std::to_string(idx) + " out of range");
  Dataset out = data;
  out.dimension = static_cast<int>(kept.size());
  auto project = [&](ContextVector& x) {
    ContextVector y;
    y.reserve(kept.size());
    for (int idx : kept) y.push_back(x[static_cast<std::size_t>(idx)]);
    x = std::move(y);
  };
  for (auto& r : out.supervised) project(r.context);
  for (auto& r : out.bandit) project(r.context);
  return out;
}

}  // namespace banditrank
