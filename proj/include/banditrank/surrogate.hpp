// Convex surrogates for the pairwise ranking indicator, with derivatives.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace banditrank {

enum class Surrogate { logistic, hinge };

inline const char* to_string(Surrogate s) {
  return s == Surrogate::logistic ? "logistic" : "hinge";
}

inline Surrogate surrogate_from_string(const std::string& s) {
  if (s == "logistic") return Surrogate::logistic;
  if (s == "hinge") return Surrogate::hinge;
  throw std::invalid_argument("unknown surrogate '" + s + "'");
}

// Returns (l(t), l'(t)).
//
// logistic: l(t) = log(1 + exp(-t)), evaluated in the overflow-safe split
// form; the derivative -1/(1 + exp(t)) is likewise computed without
// exponentiating a large positive argument.
// hinge: l(t) = max(1 - t, 0); the subgradient at the kink t = 1 is 0.
inline std::pair<double, double> surrogate_value_and_grad(Surrogate s, double t) {
  if (s == Surrogate::logistic) {
    double value;
    if (t >= 0.0)
      value = std::log1p(std::exp(-t));
    else
      value = -t + std::log1p(std::exp(t));
    const double grad = t >= 0.0 ? -std::exp(-t) / (1.0 + std::exp(-t))
                                 : -1.0 / (1.0 + std::exp(t));
    return {value, grad};
  }
  if (t < 1.0) return {1.0 - t, -1.0};
  return {0.0, 0.0};
}

}  // namespace banditrank
