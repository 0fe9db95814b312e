// Linear scoring models.
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "banditrank/types.hpp"

namespace banditrank {

// Weight vector w defining the score f_w(x) = w . x for one arm. Classifier
// models carry one extra trailing weight acting on an implicit constant-1
// bias coordinate; ranker models do not (a bias cancels in x+ - x-).
struct LinearModel {
  std::vector<double> weights;
  int arm = 0;
  bool trained = false;

  double score(const ContextVector& x) const {
    if (x.size() == weights.size()) {
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += weights[j] * x[j];
      return s;
    }
    if (x.size() + 1 == weights.size()) {  // bias-augmented model
      double s = weights.back();
      for (std::size_t j = 0; j < x.size(); ++j) s += weights[j] * x[j];
      return s;
    }
    throw std::invalid_argument("context dimension does not match model");
  }
};

// One arm's model plus its learnt threshold score. An arm without a usable
// training signal is marked untrainable and excluded from prediction.
struct ArmModel {
  LinearModel model;
  std::optional<double> threshold;  // engaged for trained ranker arms
  bool untrainable = false;
};

}  // namespace banditrank
