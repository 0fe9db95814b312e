// Versioned on-disk form of a trained policy: per-arm weights and
// thresholds, the preprocessing that must be replayed at serving time
// (feature selection, standardization), and the training metadata needed to
// audit or reproduce the fit.
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "banditrank/model.hpp"
#include "banditrank/pipeline.hpp"
#include "banditrank/policy.hpp"
#include "banditrank/rng.hpp"
#include "banditrank/standardize.hpp"
#include "banditrank/suite.hpp"
#include "banditrank/surrogate.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

inline constexpr const char* kBundleFormat = "banditrank-policy";
inline constexpr int kBundleVersion = 1;

struct BundleArm {
  ArmModel model;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

struct PolicyBundle {
  PolicyKind kind = PolicyKind::ranker;
  int dimension = 0;  // model input dimension, after any feature selection
  Surrogate surrogate = Surrogate::logistic;
  long iterations = 0;
  double step_size_base = 1.0;
  std::vector<BundleArm> arms;
  std::optional<Standardizer> standardizer;       // applied before scoring
  std::optional<std::vector<int>> kept_features;  // applied before standardizing
  std::optional<double> epsilon;                  // suggested exploration rate

  ArmSuitePolicy policy() const {
    ArmSuitePolicy p;
    p.kind = kind;
    p.dimension = dimension;
    for (const auto& a : arms) p.arms.push_back(a.model);
    p.validate();
    return p;
  }

  // Replays the bundle's preprocessing on raw contexts.
  ContextVector preprocess(const ContextVector& raw) const {
    ContextVector x = raw;
    if (kept_features) {
      ContextVector kept;
      kept.reserve(kept_features->size());
      for (int j : *kept_features) {
        if (j < 0 || static_cast<std::size_t>(j) >= x.size())
          throw std::invalid_argument("context too short for kept feature " + std::to_string(j));
        kept.push_back(x[static_cast<std::size_t>(j)]);
      }
      x = std::move(kept);
    }
    if (standardizer) standardizer->apply(x);
    return x;
  }

  Dataset preprocess(const Dataset& raw) const {
    Dataset out = raw;
    for (auto& r : out.supervised) r.context = preprocess(r.context);
    for (auto& r : out.bandit) r.context = preprocess(r.context);
    out.dimension = dimension;
    return out;
  }
};

inline nlohmann::ordered_json bundle_to_json(const PolicyBundle& b) {
  nlohmann::ordered_json j;
  j["format"] = kBundleFormat;
  j["version"] = kBundleVersion;
  j["kind"] = to_string(b.kind);
  j["num_arms"] = b.arms.size();
  j["dimension"] = b.dimension;
  j["surrogate"] = to_string(b.surrogate);
  j["iterations"] = b.iterations;
  j["step_size_base"] = b.step_size_base;
  if (b.epsilon)
    j["epsilon"] = *b.epsilon;
  else
    j["epsilon"] = nullptr;
  if (b.kept_features)
    j["kept_features"] = *b.kept_features;
  else
    j["kept_features"] = nullptr;
  if (b.standardizer) {
    j["standardizer"]["means"] = b.standardizer->means;
    j["standardizer"]["stds"] = b.standardizer->stds;
  } else {
    j["standardizer"] = nullptr;
  }
  j["arms"] = nlohmann::ordered_json::array();
  for (const auto& a : b.arms) {
    nlohmann::ordered_json ja;
    ja["arm"] = a.model.model.arm;
    ja["untrainable"] = a.model.untrainable;
    if (a.model.untrainable) {
      ja["weights"] = nullptr;
      ja["threshold"] = nullptr;
    } else {
      ja["weights"] = a.model.model.weights;
      if (a.model.threshold)
        ja["threshold"] = *a.model.threshold;
      else
        ja["threshold"] = nullptr;
    }
    ja["lambda"] = a.lambda;
    ja["seed"] = a.seed;
    ja["positives"] = a.positives;
    ja["negatives"] = a.negatives;
    j["arms"].push_back(std::move(ja));
  }
  return j;
}

inline PolicyBundle bundle_from_json(const nlohmann::json& j) {
  if (!j.contains("format") || j.at("format") != kBundleFormat)
    throw std::runtime_error("not a policy bundle");
  if (j.at("version").get<int>() != kBundleVersion)
    throw std::runtime_error("unsupported policy bundle version");
  PolicyBundle b;
  b.kind = policy_kind_from_string(j.at("kind").get<std::string>());
  b.dimension = j.at("dimension").get<int>();
  b.surrogate = surrogate_from_string(j.at("surrogate").get<std::string>());
  b.iterations = j.at("iterations").get<long>();
  b.step_size_base = j.at("step_size_base").get<double>();
  if (!j.at("epsilon").is_null()) b.epsilon = j.at("epsilon").get<double>();
  if (!j.at("kept_features").is_null())
    b.kept_features = j.at("kept_features").get<std::vector<int>>();
  if (!j.at("standardizer").is_null()) {
    Standardizer s;
    s.means = j.at("standardizer").at("means").get<std::vector<double>>();
    s.stds = j.at("standardizer").at("stds").get<std::vector<double>>();
    b.standardizer = std::move(s);
  }
  for (const auto& ja : j.at("arms")) {
    BundleArm a;
    a.model.model.arm = ja.at("arm").get<int>();
    a.model.untrainable = ja.at("untrainable").get<bool>();
    if (!a.model.untrainable) {
      a.model.model.weights = ja.at("weights").get<std::vector<double>>();
      a.model.model.trained = true;
      if (!ja.at("threshold").is_null()) a.model.threshold = ja.at("threshold").get<double>();
    }
    a.lambda = ja.at("lambda").get<double>();
    a.seed = ja.at("seed").get<std::uint64_t>();
    a.positives = ja.at("positives").get<std::size_t>();
    a.negatives = ja.at("negatives").get<std::size_t>();
    b.arms.push_back(std::move(a));
  }
  const auto n = j.at("num_arms").get<std::size_t>();
  if (n != b.arms.size()) throw std::runtime_error("policy bundle arm count mismatch");
  return b;
}

// Content hash of the serialized bundle, usable as a stable identifier.
inline std::string bundle_id(const PolicyBundle& b) {
  const std::string text = bundle_to_json(b).dump();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

inline void save_bundle(const PolicyBundle& b, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << bundle_to_json(b).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline PolicyBundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("cannot parse '" + path + "': " + e.what());
  }
  return bundle_from_json(j);
}

// Assembles a bundle from a freshly trained suite plus the preprocessing
// that produced its inputs.
inline PolicyBundle make_bundle(const SuiteTrainResult& result, const SuiteConfig& cfg,
                                std::optional<Standardizer> standardizer = std::nullopt,
                                std::optional<std::vector<int>> kept_features = std::nullopt,
                                std::optional<double> epsilon = std::nullopt) {
  PolicyBundle b;
  b.kind = result.policy.kind;
  b.dimension = result.policy.dimension;
  b.surrogate = cfg.surrogate;
  b.iterations = cfg.iterations;
  b.step_size_base = cfg.step_size_base;
  b.standardizer = std::move(standardizer);
  b.kept_features = std::move(kept_features);
  b.epsilon = epsilon;
  for (std::size_t i = 0; i < result.policy.arms.size(); ++i) {
    BundleArm a;
    a.model = result.policy.arms[i];
    const auto& info = result.arms[i];
    a.lambda = info.lambda;
    a.seed = info.seed;
    a.positives = info.positives;
    a.negatives = info.negatives;
    b.arms.push_back(std::move(a));
  }
  return b;
}

}  // namespace banditrank
