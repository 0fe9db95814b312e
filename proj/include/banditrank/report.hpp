// Structured evaluation reports and plot-data emission.
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "banditrank/evaluate.hpp"
#include "banditrank/rng.hpp"

namespace banditrank {

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Content hash of a file, used to pin reports to the exact dataset evaluated.
inline std::string file_fingerprint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  return hex64(fnv1a64(bytes));
}

inline nlohmann::ordered_json report_to_json(const EvaluationReport& rep,
                                             const std::string& policy_id,
                                             const std::string& dataset_fingerprint) {
  nlohmann::ordered_json j;
  j["estimator"] = to_string(rep.estimator);
  j["point"] = rep.point;
  if (rep.lcb) {
    j["lcb"] = *rep.lcb;
    j["delta"] = rep.delta;
  } else {
    j["lcb"] = nullptr;
  }
  j["n"] = rep.n;
  j["sample_std"] = rep.sample_std;
  j["policy"] = policy_id;
  j["dataset"] = dataset_fingerprint;
  return j;
}

inline void save_report(const EvaluationReport& rep, const std::string& policy_id,
                        const std::string& dataset_fingerprint, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << report_to_json(rep, policy_id, dataset_fingerprint).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

struct PlotRow {
  std::string policy;
  double point = 0.0;
  std::optional<double> lcb;
};

// One row per policy: name, point estimate, lower bound (blank when the
// estimator has none). Chart tools consume this directly.
inline void write_plot_data(const std::vector<PlotRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "policy,point,lcb\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.10g", r.point);
    out << r.policy << ',' << buf << ',';
    if (r.lcb) {
      std::snprintf(buf, sizeof(buf), "%.10g", *r.lcb);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace banditrank
