// Per-feature z-score standardization, fit on the training split only.
#pragma once

#include <cmath>
#include <vector>

#include "banditrank/types.hpp"

namespace banditrank {

struct Standardizer {
  std::vector<double> means;
  std::vector<double> stds;  // constant features keep std 1 (left unchanged)

  void apply(ContextVector& x) const {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = (x[j] - means[j]) / stds[j];
  }

  void apply(Dataset& data) const {
    if (data.kind == DatasetKind::full_information)
      for (auto& r : data.supervised) apply(r.context);
    else
      for (auto& r : data.bandit) apply(r.context);
  }
};

inline Standardizer fit_standardizer(const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("cannot fit standardizer on empty dataset");
  const auto d = static_cast<std::size_t>(data.dimension);
  const double n = static_cast<double>(data.size());
  Standardizer s;
  s.means.assign(d, 0.0);
  s.stds.assign(d, 0.0);

  auto each_context = [&](auto&& fn) {
    if (data.kind == DatasetKind::full_information)
      for (const auto& r : data.supervised) fn(r.context);
    else
      for (const auto& r : data.bandit) fn(r.context);
  };

  each_context([&](const ContextVector& x) {
    for (std::size_t j = 0; j < d; ++j) s.means[j] += x[j];
  });
  for (std::size_t j = 0; j < d; ++j) s.means[j] /= n;
  each_context([&](const ContextVector& x) {
    for (std::size_t j = 0; j < d; ++j) {
      const double c = x[j] - s.means[j];
      s.stds[j] += c * c;
    }
  });
  for (std::size_t j = 0; j < d; ++j) {
    s.stds[j] = std::sqrt(s.stds[j] / n);
    if (s.stds[j] <= 0.0) s.stds[j] = 1.0;
  }
  return s;
}

}  // namespace banditrank
