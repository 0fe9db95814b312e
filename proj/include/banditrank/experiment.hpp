// End-to-end repeated experiment: split, convert to bandit feedback, train
// each requested policy kind, evaluate, and summarize with mean and sample
// std per policy. Every randomized stage draws from a (master seed, stage
// tag, repetition)-derived stream, so runs are reproducible byte for byte
// and adding a policy kind never perturbs the other kinds' numbers.
#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "banditrank/bundle.hpp"
#include "banditrank/csv.hpp"
#include "banditrank/evaluate.hpp"
#include "banditrank/pipeline.hpp"
#include "banditrank/policy.hpp"
#include "banditrank/report.hpp"
#include "banditrank/split.hpp"
#include "banditrank/standardize.hpp"
#include "banditrank/suite.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

enum class EvalMode { full_information, bandit };

inline const char* to_string(EvalMode m) {
  return m == EvalMode::full_information ? "full" : "bandit";
}

inline EvalMode eval_mode_from_string(const std::string& s) {
  if (s == "full") return EvalMode::full_information;
  if (s == "bandit") return EvalMode::bandit;
  throw std::invalid_argument("unknown eval mode '" + s + "'");
}

struct ExperimentConfig {
  std::string dataset_path;
  CsvSchema schema;  // the source dataset must be full-information
  double train_fraction = 0.7;
  int repetitions = 10;
  std::vector<PolicyKind> kinds{PolicyKind::ranker, PolicyKind::classifier};
  std::optional<UndersampleRatio> undersample;
  std::vector<double> lambda_grid{0.01, 0.1, 1.0, 10.0};
  long iterations = 1'000'000;
  double step_size_base = 1.0;
  Surrogate surrogate = Surrogate::logistic;
  double validation_fraction = 0.2;
  ThresholdMeasure threshold_measure = ThresholdMeasure::f1;
  bool standardize = true;
  std::optional<double> feature_fraction;  // information-gain selection when set
  EvalMode eval = EvalMode::full_information;
  double epsilon = 0.2;  // bandit evaluation only
  double delta = 0.05;
  // Default keeps one fixed train/test split and re-randomizes only the
  // supervised-to-bandit conversion across repetitions; resplit redraws the
  // split each repetition as well.
  bool resplit = false;
  std::uint64_t seed = 0;
  std::string out_dir;
};

struct ExperimentCell {
  int rep = 0;
  PolicyKind kind = PolicyKind::ranker;
  bool ok = false;
  std::string error;
  EvaluationReport report;
  std::string bundle_id;
};

struct ExperimentPolicySummary {
  PolicyKind kind = PolicyKind::ranker;
  int completed = 0;
  int attempted = 0;
  double mean_point = 0.0;
  double std_point = 0.0;
  std::optional<double> mean_lcb;
};

struct ExperimentResult {
  std::string dataset_fingerprint;
  std::vector<ExperimentCell> cells;
  std::vector<ExperimentPolicySummary> summaries;
  std::string summary_text;
};

namespace detail {

inline std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace detail

inline void validate(const ExperimentConfig& cfg) {
  if (cfg.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  if (cfg.kinds.empty()) throw std::invalid_argument("no policy kinds requested");
  if (cfg.out_dir.empty()) throw std::invalid_argument("output directory not set");
  if (!(cfg.delta > 0.0 && cfg.delta <= 0.5))
    throw std::invalid_argument("delta must lie in (0, 0.5]");
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0))
    throw std::invalid_argument("epsilon must lie in [0, 1]");
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.schema.kind != DatasetKind::full_information)
    throw std::invalid_argument("experiments start from full-information data");
  const Dataset data = load_dataset(cfg.dataset_path, cfg.schema);

  std::vector<PolicyKind> kinds;
  for (PolicyKind k : cfg.kinds) {
    bool seen = false;
    for (PolicyKind s : kinds) seen = seen || s == k;
    if (!seen) kinds.push_back(k);
  }

  std::filesystem::create_directories(cfg.out_dir);
  ExperimentResult result;
  result.dataset_fingerprint = file_fingerprint(cfg.dataset_path);

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const std::string rep_dir = cfg.out_dir + "/rep_" + std::to_string(rep);
    std::filesystem::create_directories(rep_dir);

    // Stage failures abort the repetition but not the experiment.
    std::string rep_error;
    Dataset train, test, bandit_train, bandit_test;
    std::optional<Standardizer> standardizer;
    std::optional<std::vector<int>> kept;
    try {
      const std::uint64_t split_seed = cfg.resplit ? derive_seed(cfg.seed, "split", rep)
                                                   : derive_seed(cfg.seed, "split");
      auto [tr, te] = split_train_test(data, cfg.train_fraction, split_seed);
      train = std::move(tr);
      test = std::move(te);
      if (cfg.feature_fraction) {
        const auto selection = information_gain_select(train, *cfg.feature_fraction);
        kept = selection.kept_indices;
        train = apply_feature_selection(train, selection.kept_indices);
        test = apply_feature_selection(test, selection.kept_indices);
      }
      if (cfg.standardize) {
        standardizer = fit_standardizer(train);
        standardizer->apply(train);
        standardizer->apply(test);
      }
      bandit_train = convert_supervised_to_bandit(
          train, {derive_seed(cfg.seed, "convert", rep), train.num_arms});
      if (cfg.eval == EvalMode::bandit)
        bandit_test = convert_supervised_to_bandit(
            test, {derive_seed(cfg.seed, "convert-test", rep), test.num_arms});
    } catch (const std::exception& e) {
      rep_error = e.what();
    }

    for (PolicyKind kind : kinds) {
      ExperimentCell cell;
      cell.rep = rep;
      cell.kind = kind;
      if (!rep_error.empty()) {
        cell.error = rep_error;
        result.cells.push_back(std::move(cell));
        continue;
      }
      try {
        SuiteConfig sc;
        sc.kind = kind;
        sc.lambda_grid = cfg.lambda_grid;
        sc.iterations = cfg.iterations;
        sc.step_size_base = cfg.step_size_base;
        sc.surrogate = cfg.surrogate;
        sc.undersample = cfg.undersample;
        sc.validation_fraction = cfg.validation_fraction;
        sc.threshold_measure = cfg.threshold_measure;
        sc.data_seed = derive_seed(cfg.seed, "data", rep);
        sc.train_seed = derive_seed(cfg.seed, "train", rep, fnv1a64(to_string(kind)));
        const SuiteTrainResult trained = train_arm_suite(bandit_train, sc);

        PolicyBundle bundle = make_bundle(
            trained, sc, standardizer, kept,
            cfg.eval == EvalMode::bandit ? std::optional<double>(cfg.epsilon) : std::nullopt);
        cell.bundle_id = bundle_id(bundle);
        save_bundle(bundle, rep_dir + "/" + to_string(kind) + "_bundle.json");

        if (cfg.eval == EvalMode::full_information) {
          cell.report = true_ctr(trained.policy, test);
        } else {
          StochasticPolicy sp{trained.policy, cfg.epsilon};
          cell.report = importance_weighted_ctr(sp, bandit_test, cfg.delta);
        }
        save_report(cell.report, cell.bundle_id, result.dataset_fingerprint,
                    rep_dir + "/" + to_string(kind) + "_report.json");
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      result.cells.push_back(std::move(cell));
    }
  }

  // Per-policy aggregation over completed repetitions.
  for (PolicyKind kind : kinds) {
    ExperimentPolicySummary s;
    s.kind = kind;
    std::vector<double> points, lcbs;
    for (const auto& c : result.cells) {
      if (c.kind != kind) continue;
      ++s.attempted;
      if (!c.ok) continue;
      ++s.completed;
      points.push_back(c.report.point);
      if (c.report.lcb) lcbs.push_back(*c.report.lcb);
    }
    if (!points.empty()) {
      for (double p : points) s.mean_point += p;
      s.mean_point /= static_cast<double>(points.size());
      s.std_point = detail::sample_std_dev(points, s.mean_point);
    }
    if (!lcbs.empty()) {
      double m = 0.0;
      for (double v : lcbs) m += v;
      s.mean_lcb = m / static_cast<double>(lcbs.size());
    }
    result.summaries.push_back(s);
  }

  // Per-repetition rows; failed cells are reported in the summary instead.
  {
    std::ostringstream csv;
    csv << "rep,policy,point,lcb\n";
    for (const auto& c : result.cells) {
      if (!c.ok) continue;
      csv << c.rep << ',' << to_string(c.kind) << ',' << detail::fmt10(c.report.point) << ',';
      if (c.report.lcb) csv << detail::fmt10(*c.report.lcb);
      csv << '\n';
    }
    detail::write_text(cfg.out_dir + "/per_rep.csv", csv.str());
  }

  {
    std::vector<PlotRow> rows;
    for (const auto& s : result.summaries)
      rows.push_back({to_string(s.kind), s.mean_point, s.mean_lcb});
    write_plot_data(rows, cfg.out_dir + "/plot_data.csv");
  }

  std::ostringstream txt;
  txt << "experiment summary\n";
  txt << "dataset: " << cfg.dataset_path << "\n";
  txt << "dataset fingerprint: " << result.dataset_fingerprint << "\n";
  txt << "records: " << data.size() << " (" << data.num_arms << " arms, "
      << data.dimension << " features)\n";
  txt << "split: train fraction " << detail::fmt10(cfg.train_fraction)
      << (cfg.resplit ? ", re-split every repetition\n"
                      : ", fixed split, conversion re-randomized per repetition\n");
  if (cfg.eval == EvalMode::full_information) {
    txt << "eval: true CTR on the full-information test split\n";
  } else {
    txt << "eval: importance-weighted CTR on a bandit test log (epsilon "
        << detail::fmt10(cfg.epsilon) << ", delta " << detail::fmt10(cfg.delta) << ")\n";
  }
  txt << "repetitions: " << cfg.repetitions << "\n";
  txt << "undersample: ";
  if (cfg.undersample)
    txt << cfg.undersample->first << ":" << cfg.undersample->second << "\n";
  else
    txt << "off\n";
  txt << "lambda grid:";
  for (double l : cfg.lambda_grid) txt << ' ' << detail::fmt10(l);
  txt << "\n";
  txt << "iterations: " << cfg.iterations << "\n";
  txt << "surrogate: " << to_string(cfg.surrogate) << "\n";
  txt << "standardize: " << (cfg.standardize ? "on" : "off") << "\n";
  if (cfg.feature_fraction)
    txt << "feature fraction: " << detail::fmt10(*cfg.feature_fraction) << "\n";
  txt << "seed: " << cfg.seed << "\n";
  txt << "\nper-repetition results\n";
  txt << "rep,policy,point,lcb,status\n";
  for (const auto& c : result.cells) {
    txt << c.rep << ',' << to_string(c.kind) << ',';
    if (c.ok) {
      txt << detail::fmt10(c.report.point) << ',';
      if (c.report.lcb) txt << detail::fmt10(*c.report.lcb);
      txt << ",ok\n";
    } else {
      txt << ",,FAILED: " << c.error << "\n";
    }
  }
  txt << "\nper-policy summary\n";
  txt << "policy,completed,mean_point,std_point,mean_lcb\n";
  for (const auto& s : result.summaries) {
    txt << to_string(s.kind) << ',' << s.completed << '/' << s.attempted << ','
        << detail::fmt10(s.mean_point) << ',' << detail::fmt10(s.std_point) << ',';
    if (s.mean_lcb) txt << detail::fmt10(*s.mean_lcb);
    txt << '\n';
  }
  result.summary_text = txt.str();
  detail::write_text(cfg.out_dir + "/summary.txt", result.summary_text);
  return result;
}

}  // namespace banditrank
