// Seeded train/test partitioning.
#pragma once

#include <cmath>
#include <numeric>
#include <utility>

#include "banditrank/rng.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

// Uniformly random partition by seeded shuffle. Train gets ceil(n * fraction)
// records, test the remainder. Deterministic for a fixed seed.
inline std::pair<Dataset, Dataset> split_train_test(const Dataset& data, double train_fraction,
                                                    std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  if (data.empty()) throw std::invalid_argument("cannot split an empty dataset");

  const std::size_t n = data.size();
  // Guard against representation error in fraction * n pushing an exact
  // product just above an integer (ceil(3.0000000000000004) = 4).
  const auto n_train =
      static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(n) - 1e-9));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.index_below(i)]);

  Dataset train;
  Dataset test;
  for (Dataset* part : {&train, &test}) {
    part->kind = data.kind;
    part->dimension = data.dimension;
    part->num_arms = data.num_arms;
    part->arm_names = data.arm_names;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Dataset& dst = i < n_train ? train : test;
    if (data.kind == DatasetKind::full_information)
      dst.supervised.push_back(data.supervised[order[i]]);
    else
      dst.bandit.push_back(data.bandit[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace banditrank
