// Domain types shared by every module: context vectors, supervised and
// bandit records, dataset containers, per-arm binary training sets.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace banditrank {

// d-dimensional real feature vector for one user. Entries must be finite;
// loaders enforce this on every row.
using ContextVector = std::vector<double>;

inline bool all_finite(const ContextVector& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

struct SupervisedRecord {
  ContextVector context;
  int label = 0;  // arm index in [0, K)
};

struct BanditRecord {
  ContextVector context;
  int action = 0;        // displayed arm in [0, K)
  int reward = 0;        // binary {0, 1}
  double propensity = 1.0;  // logging probability of `action`, in (0, 1]
};

enum class DatasetKind { full_information, bandit };

// Immutable after load; safe for concurrent reads.
struct Dataset {
  DatasetKind kind = DatasetKind::full_information;
  int dimension = 0;
  int num_arms = 0;
  std::vector<SupervisedRecord> supervised;  // populated iff full_information
  std::vector<BanditRecord> bandit;          // populated iff bandit
  // Original label tokens, indexed by remapped 0-based arm id. Empty when the
  // source already used contiguous 0-based arms (e.g. converted bandit data).
  std::vector<std::string> arm_names;

  std::size_t size() const {
    return kind == DatasetKind::full_information ? supervised.size() : bandit.size();
  }
  bool empty() const { return size() == 0; }

  // Human-facing arm name: original token if retained, else 1-based index.
  std::string arm_name(int arm) const {
    if (arm >= 0 && static_cast<std::size_t>(arm) < arm_names.size()) return arm_names[arm];
    return std::to_string(arm + 1);
  }
};

inline void check_record_shape(const Dataset& data) {
  const auto dim = static_cast<std::size_t>(data.dimension);
  if (data.kind == DatasetKind::full_information) {
    for (const auto& r : data.supervised) {
      if (r.context.size() != dim) throw std::runtime_error("context dimension mismatch");
      if (r.label < 0 || r.label >= data.num_arms) throw std::runtime_error("label out of range");
    }
  } else {
    for (const auto& r : data.bandit) {
      if (r.context.size() != dim) throw std::runtime_error("context dimension mismatch");
      if (r.action < 0 || r.action >= data.num_arms) throw std::runtime_error("action out of range");
      if (r.reward != 0 && r.reward != 1) throw std::runtime_error("reward must be 0 or 1");
      if (!(r.propensity > 0.0 && r.propensity <= 1.0))
        throw std::runtime_error("propensity must lie in (0, 1]");
    }
  }
}

// Positive (clicked) and negative (shown, not clicked) contexts for one arm.
struct BinaryTrainingSet {
  int arm = 0;
  std::vector<ContextVector> positives;
  std::vector<ContextVector> negatives;
};

}  // namespace banditrank
