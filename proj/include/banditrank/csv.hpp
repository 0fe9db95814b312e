// CSV dataset I/O.
//
// Full-information layout: d numeric feature columns plus one label column
// (position configurable, default last). Bandit layout: d feature columns,
// then action, reward and optionally propensity. Arm labels are remapped to
// contiguous 0-based indices; the original tokens are retained for reports.
#pragma once

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "banditrank/types.hpp"

namespace banditrank {

struct CsvSchema {
  DatasetKind kind = DatasetKind::full_information;
  // Label column for full-information data; negative means last column.
  int label_column = -1;
  // Whether bandit files carry a trailing propensity column. When absent,
  // propensity defaults to 1/K (uniform logging).
  bool has_propensity = true;
  // Declared arm count for bandit data; 0 infers max action + 1. Needed when
  // the log does not happen to show every arm.
  int num_arms = 0;
  char delimiter = ',';
};

namespace detail {

inline std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delim)) out.push_back(cell);
  if (!line.empty() && line.back() == delim) out.push_back("");
  return out;
}

inline double parse_number(const std::string& cell, std::size_t line_no, const char* what) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0') || errno == ERANGE)
    throw std::runtime_error("line " + std::to_string(line_no) + ": non-numeric " + what +
                             " '" + cell + "'");
  if (!std::isfinite(v))
    throw std::runtime_error("line " + std::to_string(line_no) + ": non-finite " + what);
  return v;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

// Numeric-aware label order: numeric tokens sort by value, others after,
// lexicographically. Keeps digit-class datasets in natural 0..9 order.
inline bool label_less(const std::string& a, const std::string& b) {
  char* ea = nullptr;
  char* eb = nullptr;
  const double va = std::strtod(a.c_str(), &ea);
  const double vb = std::strtod(b.c_str(), &eb);
  const bool na = ea != a.c_str() && *ea == '\0';
  const bool nb = eb != b.c_str() && *eb == '\0';
  if (na && nb) return va < vb;
  if (na != nb) return na;
  return a < b;
}

}  // namespace detail

inline Dataset load_dataset(const std::string& path, const CsvSchema& schema = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  Dataset data;
  data.kind = schema.kind;

  std::string line;
  std::size_t line_no = 0;
  int ncols = -1;

  // Full-information rows are parsed with labels kept as tokens until the
  // whole file is read, then remapped to contiguous 0-based arm ids.
  std::vector<std::pair<ContextVector, std::string>> raw_supervised;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = detail::trim(line);
    if (stripped.empty()) continue;
    auto cells = detail::split_line(stripped, schema.delimiter);
    if (ncols < 0) {
      ncols = static_cast<int>(cells.size());
      const int meta = schema.kind == DatasetKind::full_information ? 1
                       : (schema.has_propensity ? 3 : 2);
      if (ncols <= meta)
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": expected at least one feature column");
      data.dimension = ncols - meta;
    } else if (static_cast<int>(cells.size()) != ncols) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(ncols) + " columns, got " +
                               std::to_string(cells.size()));
    }

    if (schema.kind == DatasetKind::full_information) {
      int label_col = schema.label_column < 0 ? ncols - 1 : schema.label_column;
      if (label_col >= ncols)
        throw std::runtime_error("label column " + std::to_string(label_col) +
                                 " out of range for " + std::to_string(ncols) + " columns");
      ContextVector x;
      x.reserve(data.dimension);
      for (int c = 0; c < ncols; ++c) {
        if (c == label_col) continue;
        x.push_back(detail::parse_number(cells[c], line_no, "feature"));
      }
      raw_supervised.emplace_back(std::move(x), detail::trim(cells[label_col]));
    } else {
      ContextVector x;
      x.reserve(data.dimension);
      for (int c = 0; c < data.dimension; ++c)
        x.push_back(detail::parse_number(cells[c], line_no, "feature"));
      BanditRecord rec;
      rec.context = std::move(x);
      const double action = detail::parse_number(cells[data.dimension], line_no, "action");
      if (action != std::floor(action) || action < 0)
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": action must be a non-negative integer");
      rec.action = static_cast<int>(action);
      const double reward = detail::parse_number(cells[data.dimension + 1], line_no, "reward");
      if (reward != 0.0 && reward != 1.0)
        throw std::runtime_error("line " + std::to_string(line_no) + ": reward must be 0 or 1");
      rec.reward = static_cast<int>(reward);
      if (schema.has_propensity) {
        rec.propensity = detail::parse_number(cells[data.dimension + 2], line_no, "propensity");
        if (!(rec.propensity > 0.0 && rec.propensity <= 1.0))
          throw std::runtime_error("line " + std::to_string(line_no) +
                                   ": propensity must lie in (0, 1]");
      } else {
        rec.propensity = -1.0;  // patched to 1/K once K is known
      }
      data.bandit.push_back(std::move(rec));
    }
  }

  if (line_no == 0 || (raw_supervised.empty() && data.bandit.empty()))
    throw std::runtime_error("no records in '" + path + "'");

  if (schema.kind == DatasetKind::full_information) {
    std::vector<std::string> tokens;
    tokens.reserve(raw_supervised.size());
    for (const auto& [x, tok] : raw_supervised) tokens.push_back(tok);
    std::sort(tokens.begin(), tokens.end(), detail::label_less);
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    std::map<std::string, int> remap;
    for (std::size_t i = 0; i < tokens.size(); ++i) remap[tokens[i]] = static_cast<int>(i);
    data.num_arms = static_cast<int>(tokens.size());
    data.arm_names = tokens;
    data.supervised.reserve(raw_supervised.size());
    for (auto& [x, tok] : raw_supervised)
      data.supervised.push_back({std::move(x), remap.at(tok)});
  } else {
    int max_action = 0;
    for (const auto& r : data.bandit) max_action = std::max(max_action, r.action);
    data.num_arms = std::max(schema.num_arms, max_action + 1);
    if (!schema.has_propensity) {
      const double uniform = 1.0 / data.num_arms;
      for (auto& r : data.bandit) r.propensity = uniform;
    }
  }

  check_record_shape(data);
  return data;
}

// Shortest round-trip decimal form, so write/load reproduces doubles exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = 0;
  std::sscanf(buf, "%lf", &back);
  if (back == v) {
    for (int prec = 1; prec < 17; ++prec) {
      char shorter[40];
      std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
      std::sscanf(shorter, "%lf", &back);
      if (back == v) return shorter;
    }
  }
  return buf;
}

inline void write_dataset(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  if (data.kind == DatasetKind::full_information) {
    for (const auto& r : data.supervised) {
      for (double v : r.context) out << format_double(v) << ',';
      out << data.arm_name(r.label) << '\n';
    }
  } else {
    for (const auto& r : data.bandit) {
      for (double v : r.context) out << format_double(v) << ',';
      out << r.action << ',' << r.reward << ',' << format_double(r.propensity) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace banditrank
