// banditrank command-line tool.
//
// Subcommands cover the full offline pipeline: convert supervised data to
// bandit feedback, select features, train per-arm policies, evaluate them on
// full-information or logged bandit data, simulate sparse-click instances,
// and run repeated end-to-end experiments.
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "banditrank/banditrank.hpp"

namespace br = banditrank;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Compact schema spec: "full" or "bandit", optionally followed by
// ':'-separated modifiers label=<col>, noprop, k=<arms>, delim=<char>.
br::CsvSchema parse_schema(const std::string& text) {
  br::CsvSchema schema;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text + ":") {
    if (c == ':') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (parts.empty()) throw CLI::ValidationError("--schema", "empty schema");
  if (parts[0] == "full")
    schema.kind = br::DatasetKind::full_information;
  else if (parts[0] == "bandit")
    schema.kind = br::DatasetKind::bandit;
  else
    throw CLI::ValidationError("--schema", "kind must be 'full' or 'bandit', got '" + parts[0] + "'");
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    if (p == "noprop") {
      schema.has_propensity = false;
    } else if (p.rfind("label=", 0) == 0) {
      schema.label_column = std::stoi(p.substr(6));
    } else if (p.rfind("k=", 0) == 0) {
      schema.num_arms = std::stoi(p.substr(2));
    } else if (p.rfind("delim=", 0) == 0 && p.size() == 7) {
      schema.delimiter = p[6];
    } else if (p == "delim=tab") {
      schema.delimiter = '\t';
    } else {
      throw CLI::ValidationError("--schema", "unknown modifier '" + p + "'");
    }
  }
  return schema;
}

std::optional<br::UndersampleRatio> parse_undersample(const std::string& text) {
  if (text == "off" || text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--undersample", "expected P:N or 'off', got '" + text + "'");
  try {
    const int pos = std::stoi(text.substr(0, colon));
    const int neg = std::stoi(text.substr(colon + 1));
    if (pos <= 0 || neg <= 0) throw std::invalid_argument("non-positive");
    return br::UndersampleRatio{pos, neg};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--undersample", "expected P:N with positive integers, got '" +
                                                    text + "'");
  }
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) {
        try {
          out.push_back(std::stod(cur));
        } catch (const std::exception&) {
          throw CLI::ValidationError(flag, "bad number '" + cur + "'");
        }
      }
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

void warn_epsilon(const br::StochasticPolicy& sp) {
  if (sp.epsilon_exceeds_uniform())
    std::cerr << "warning: epsilon " << fmt(sp.epsilon) << " gives the greedy arm less mass than "
              << "the others (uniform at " << fmt(1.0 - 1.0 / sp.base.num_arms()) << ")\n";
}

// ---------------------------------------------------------------- convert

struct ConvertArgs {
  std::string input, out, schema = "full";
  std::uint64_t seed = 0;
  int k = 0;
};

void run_convert(const ConvertArgs& a) {
  br::CsvSchema schema = parse_schema(a.schema);
  if (schema.kind != br::DatasetKind::full_information)
    throw std::runtime_error("convert expects a full-information input");
  const br::Dataset data = br::load_dataset(a.input, schema);
  const br::Dataset bandit =
      br::convert_supervised_to_bandit(data, {a.seed, a.k > 0 ? a.k : data.num_arms});
  br::write_dataset(bandit, a.out);
  double rate = 0.0;
  for (const auto& r : bandit.bandit) rate += r.reward;
  rate /= static_cast<double>(bandit.size());
  std::cout << "wrote " << bandit.size() << " bandit records to " << a.out << " ("
            << bandit.num_arms << " arms)\n";
  std::cout << "empirical reward rate " << fmt(rate) << "\n";
}

// --------------------------------------------------------- select-features

struct SelectArgs {
  std::string input, out, schema = "full";
  double fraction = 0.2;
  int bins = 10;
};

void run_select(const SelectArgs& a) {
  br::CsvSchema schema = parse_schema(a.schema);
  if (schema.kind != br::DatasetKind::full_information)
    throw std::runtime_error("select-features expects a full-information input");
  const br::Dataset data = br::load_dataset(a.input, schema);
  const br::FeatureSelection sel = br::information_gain_select(data, a.fraction, a.bins);
  std::cout << "kept " << sel.kept_indices.size() << " of " << data.dimension << " features\n";
  for (std::size_t i = 0; i < sel.kept_indices.size(); ++i)
    std::cout << "feature " << sel.kept_indices[i] << ": " << fmt(sel.gains[i]) << " bits\n";
  if (!a.out.empty()) {
    br::write_dataset(br::apply_feature_selection(data, sel.kept_indices), a.out);
    std::cout << "wrote reduced dataset to " << a.out << "\n";
  }
}

// ------------------------------------------------------------------ train

struct TrainArgs {
  std::string input, out, schema = "bandit", kind = "ranker";
  std::string lambda_grid = "0.01,0.1,1,10";
  std::string undersample = "off";
  std::string surrogate = "logistic";
  std::string measure = "f1";
  long iterations = 1'000'000;
  double step_size = 1.0;
  double validation_fraction = 0.2;
  std::uint64_t seed = 0;
  int k = 0;
  std::optional<double> epsilon;
};

void run_train(const TrainArgs& a) {
  br::CsvSchema schema = parse_schema(a.schema);
  if (schema.kind != br::DatasetKind::bandit)
    throw std::runtime_error("train expects bandit data; run convert first");
  if (a.k > 0) schema.num_arms = a.k;
  const br::Dataset data = br::load_dataset(a.input, schema);

  br::SuiteConfig cfg;
  cfg.kind = br::policy_kind_from_string(a.kind);
  cfg.lambda_grid = parse_double_list(a.lambda_grid, "--lambda-grid");
  cfg.iterations = a.iterations;
  cfg.step_size_base = a.step_size;
  cfg.surrogate = br::surrogate_from_string(a.surrogate);
  cfg.undersample = parse_undersample(a.undersample);
  cfg.validation_fraction = a.validation_fraction;
  cfg.threshold_measure = br::threshold_measure_from_string(a.measure);
  cfg.data_seed = br::derive_seed(a.seed, "data");
  cfg.train_seed = br::derive_seed(a.seed, "train", br::fnv1a64(a.kind));

  const br::SuiteTrainResult result = br::train_arm_suite(data, cfg);
  for (const auto& info : result.arms) {
    if (info.untrainable) {
      std::cerr << "warning: arm " << data.arm_name(info.arm) << " is untrainable ("
                << info.positives << " positives, " << info.negatives
                << " negatives); excluded from the policy\n";
      continue;
    }
    std::cout << "arm " << data.arm_name(info.arm) << ": " << info.positives << " positives, "
              << info.negatives << " negatives, lambda " << fmt(info.lambda) << "\n";
  }
  const br::PolicyBundle bundle =
      br::make_bundle(result, cfg, std::nullopt, std::nullopt, a.epsilon);
  br::save_bundle(bundle, a.out);
  std::cout << "wrote " << br::to_string(cfg.kind) << " policy bundle " << br::bundle_id(bundle)
            << " to " << a.out << "\n";
}

// ------------------------------------------------------------- evaluation

struct EvalArgs {
  std::string bundle, input, out, schema;
  double delta = 0.05;
  std::optional<double> epsilon;
  std::optional<double> clip;
};

void print_report(const br::EvaluationReport& rep, const std::string& policy_id,
                  const std::string& fingerprint, const std::string& out_path) {
  const ordered_json j = br::report_to_json(rep, policy_id, fingerprint);
  std::cout << j.dump(2) << "\n";
  if (!out_path.empty()) {
    br::save_report(rep, policy_id, fingerprint, out_path);
    std::cout << "wrote report to " << out_path << "\n";
  }
}

void run_eval_full(const EvalArgs& a) {
  br::CsvSchema schema = parse_schema(a.schema.empty() ? "full" : a.schema);
  if (schema.kind != br::DatasetKind::full_information)
    throw std::runtime_error("eval-full expects full-information data");
  const br::PolicyBundle bundle = br::load_bundle(a.bundle);
  const br::Dataset data = bundle.preprocess(br::load_dataset(a.input, schema));
  const br::EvaluationReport rep = br::true_ctr(bundle.policy(), data);
  print_report(rep, br::bundle_id(bundle), br::file_fingerprint(a.input), a.out);
}

void run_eval_bandit(const EvalArgs& a) {
  br::CsvSchema schema = parse_schema(a.schema.empty() ? "bandit" : a.schema);
  if (schema.kind != br::DatasetKind::bandit)
    throw std::runtime_error("eval-bandit expects bandit data");
  const br::PolicyBundle bundle = br::load_bundle(a.bundle);
  const br::Dataset data = bundle.preprocess(br::load_dataset(a.input, schema));
  double epsilon = 0.0;
  if (a.epsilon)
    epsilon = *a.epsilon;
  else if (bundle.epsilon)
    epsilon = *bundle.epsilon;
  br::StochasticPolicy sp{bundle.policy(), epsilon};
  warn_epsilon(sp);
  const br::EvaluationReport rep =
      a.clip ? br::importance_weighted_ctr(sp, data, a.delta, *a.clip)
             : br::importance_weighted_ctr(sp, data, a.delta);
  print_report(rep, br::bundle_id(bundle), br::file_fingerprint(a.input), a.out);
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
  int k = 5;
  int dim = 10;
  std::string rates;
  std::size_t train_n = 100'000;
  std::size_t test_n = 20'000;
  std::uint64_t seed = 0;
  std::string logging = "uniform";
  double logging_epsilon = 0.2;
  std::string out_train, out_test, out_truth, out_rewards;
};

void run_simulate(const SimulateArgs& a) {
  br::SyntheticBanditSpec spec;
  spec.num_arms = a.k;
  spec.dimension = a.dim;
  spec.target_rates = parse_double_list(a.rates, "--rates");
  spec.train_records = a.train_n;
  spec.test_records = a.test_n;
  spec.seed = a.seed;
  spec.logging_epsilon = a.logging_epsilon;
  if (a.logging == "uniform")
    spec.train_logging = br::LoggingPolicy::uniform;
  else if (a.logging == "greedy")
    spec.train_logging = br::LoggingPolicy::epsilon_greedy_oracle;
  else
    throw CLI::ValidationError("--logging", "expected 'uniform' or 'greedy'");

  const br::SyntheticBandit sim = br::generate_synthetic_bandit(spec);
  br::write_dataset(sim.train, a.out_train);
  br::write_dataset(sim.test, a.out_test);
  std::cout << "wrote " << sim.train.size() << " train and " << sim.test.size()
            << " test records (" << spec.num_arms << " arms)\n";

  std::vector<std::size_t> shown(static_cast<std::size_t>(a.k), 0);
  std::vector<std::size_t> clicks(static_cast<std::size_t>(a.k), 0);
  for (const auto& r : sim.train.bandit) {
    ++shown[static_cast<std::size_t>(r.action)];
    clicks[static_cast<std::size_t>(r.action)] += static_cast<std::size_t>(r.reward);
  }
  for (int arm = 0; arm < a.k; ++arm) {
    const auto s = shown[static_cast<std::size_t>(arm)];
    const double rate = s ? static_cast<double>(clicks[static_cast<std::size_t>(arm)]) /
                                static_cast<double>(s)
                          : 0.0;
    std::cout << "arm " << arm + 1 << ": target rate "
              << fmt(spec.target_rates[static_cast<std::size_t>(arm)]) << ", empirical "
              << fmt(rate) << " over " << s << " displays\n";
  }

  if (!a.out_truth.empty()) {
    ordered_json j;
    j["format"] = "banditrank-synthetic-truth";
    j["num_arms"] = spec.num_arms;
    j["dimension"] = spec.dimension;
    j["target_rates"] = spec.target_rates;
    j["weights"] = sim.truth.weights;
    j["biases"] = sim.truth.biases;
    std::ofstream out(a.out_truth, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + a.out_truth + "' for writing");
    out << j.dump(2) << "\n";
    std::cout << "wrote ground truth to " << a.out_truth << "\n";
  }
  if (!a.out_rewards.empty()) {
    std::ofstream out(a.out_rewards, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + a.out_rewards + "' for writing");
    for (const auto& row : sim.test_rewards) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << "\n";
    }
    std::cout << "wrote counterfactual test rewards to " << a.out_rewards << "\n";
  }
}

// ------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string config;
  // Overrides; empty/unset means "keep the config value".
  std::string dataset, out, kindlist, lambda_grid, undersample, surrogate, eval;
  std::optional<long> iterations;
  std::optional<int> repetitions, label_column;
  std::optional<double> epsilon, delta, train_fraction, feature_fraction;
  std::optional<std::uint64_t> seed;
  std::optional<bool> resplit, standardize;
};

br::ExperimentConfig experiment_config_from_json(const json& j) {
  br::ExperimentConfig cfg;
  cfg.schema.kind = br::DatasetKind::full_information;
  if (j.contains("dataset")) cfg.dataset_path = j.at("dataset").get<std::string>();
  if (j.contains("label_column")) cfg.schema.label_column = j.at("label_column").get<int>();
  if (j.contains("train_fraction")) cfg.train_fraction = j.at("train_fraction").get<double>();
  if (j.contains("repetitions")) cfg.repetitions = j.at("repetitions").get<int>();
  if (j.contains("kinds")) {
    cfg.kinds.clear();
    for (const auto& k : j.at("kinds"))
      cfg.kinds.push_back(br::policy_kind_from_string(k.get<std::string>()));
  }
  if (j.contains("undersample")) {
    if (j.at("undersample").is_null())
      cfg.undersample = std::nullopt;
    else
      cfg.undersample = parse_undersample(j.at("undersample").get<std::string>());
  }
  if (j.contains("lambda_grid")) cfg.lambda_grid = j.at("lambda_grid").get<std::vector<double>>();
  if (j.contains("iterations")) cfg.iterations = j.at("iterations").get<long>();
  if (j.contains("step_size_base")) cfg.step_size_base = j.at("step_size_base").get<double>();
  if (j.contains("surrogate"))
    cfg.surrogate = br::surrogate_from_string(j.at("surrogate").get<std::string>());
  if (j.contains("validation_fraction"))
    cfg.validation_fraction = j.at("validation_fraction").get<double>();
  if (j.contains("threshold_measure"))
    cfg.threshold_measure =
        br::threshold_measure_from_string(j.at("threshold_measure").get<std::string>());
  if (j.contains("standardize")) cfg.standardize = j.at("standardize").get<bool>();
  if (j.contains("feature_fraction") && !j.at("feature_fraction").is_null())
    cfg.feature_fraction = j.at("feature_fraction").get<double>();
  if (j.contains("eval")) cfg.eval = br::eval_mode_from_string(j.at("eval").get<std::string>());
  if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
  if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
  if (j.contains("resplit")) cfg.resplit = j.at("resplit").get<bool>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  return cfg;
}

void run_experiment_cmd(const ExperimentArgs& a) {
  json j = json::object();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw std::runtime_error("cannot open '" + a.config + "'");
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw std::runtime_error("cannot parse '" + a.config + "': " + e.what());
    }
  }
  br::ExperimentConfig cfg = experiment_config_from_json(j);

  if (!a.dataset.empty()) cfg.dataset_path = a.dataset;
  if (!a.out.empty()) cfg.out_dir = a.out;
  if (a.label_column) cfg.schema.label_column = *a.label_column;
  if (a.train_fraction) cfg.train_fraction = *a.train_fraction;
  if (a.repetitions) cfg.repetitions = *a.repetitions;
  if (!a.kindlist.empty()) {
    cfg.kinds.clear();
    std::string cur;
    for (char c : a.kindlist + ",") {
      if (c == ',') {
        if (!cur.empty()) cfg.kinds.push_back(br::policy_kind_from_string(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  if (!a.undersample.empty()) cfg.undersample = parse_undersample(a.undersample);
  if (!a.lambda_grid.empty()) cfg.lambda_grid = parse_double_list(a.lambda_grid, "--lambda-grid");
  if (a.iterations) cfg.iterations = *a.iterations;
  if (!a.surrogate.empty()) cfg.surrogate = br::surrogate_from_string(a.surrogate);
  if (!a.eval.empty()) cfg.eval = br::eval_mode_from_string(a.eval);
  if (a.epsilon) cfg.epsilon = *a.epsilon;
  if (a.delta) cfg.delta = *a.delta;
  if (a.feature_fraction) cfg.feature_fraction = *a.feature_fraction;
  if (a.resplit) cfg.resplit = *a.resplit;
  if (a.standardize) cfg.standardize = *a.standardize;
  if (a.seed) cfg.seed = *a.seed;

  if (cfg.dataset_path.empty())
    throw CLI::ValidationError("--dataset", "no dataset given (config key 'dataset' or --dataset)");
  if (cfg.out_dir.empty())
    throw CLI::ValidationError("--out", "no output directory given (config key 'out' or --out)");

  const br::ExperimentResult result = br::run_experiment(cfg);
  std::cout << result.summary_text;
  std::cout << "\nartifacts in " << cfg.out_dir << " (summary.txt, per_rep.csv, plot_data.csv)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Per-arm ranking policies from bandit feedback: conversion, training, "
               "offline evaluation, simulation and repeated experiments."};
  app.require_subcommand(1);

  ConvertArgs conv;
  auto* c_conv = app.add_subcommand("convert", "Convert full-information data to bandit feedback");
  c_conv->add_option("input", conv.input, "full-information CSV")
      ->required()
      ->check(CLI::ExistingFile);
  c_conv->add_option("--out", conv.out, "output bandit CSV")->required();
  c_conv->add_option("--schema", conv.schema, "input schema (default 'full')");
  c_conv->add_option("--seed", conv.seed, "conversion seed");
  c_conv->add_option("--k", conv.k, "override arm count");
  c_conv->callback([&conv] { run_convert(conv); });

  SelectArgs sel;
  auto* c_sel = app.add_subcommand("select-features", "Rank features by information gain");
  c_sel->add_option("input", sel.input, "full-information CSV")
      ->required()
      ->check(CLI::ExistingFile);
  c_sel->add_option("--fraction", sel.fraction, "fraction of features to keep (default 0.2)");
  c_sel->add_option("--bins", sel.bins, "histogram bins (default 10)");
  c_sel->add_option("--out", sel.out, "write reduced dataset here");
  c_sel->add_option("--schema", sel.schema, "input schema (default 'full')");
  c_sel->callback([&sel] { run_select(sel); });

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "Train a per-arm policy suite from bandit data");
  c_tr->add_option("input", tr.input, "bandit CSV")->required()->check(CLI::ExistingFile);
  c_tr->add_option("--out", tr.out, "output policy bundle (JSON)")->required();
  c_tr->add_option("--kind", tr.kind, "ranker or classifier (default ranker)");
  c_tr->add_option("--schema", tr.schema, "input schema (default 'bandit')");
  c_tr->add_option("--k", tr.k, "declared arm count (when the log misses arms)");
  c_tr->add_option("--seed", tr.seed, "training seed");
  c_tr->add_option("--lambda-grid", tr.lambda_grid,
                   "comma-separated regularization grid (default 0.01,0.1,1,10)");
  c_tr->add_option("--iterations", tr.iterations, "SGD iterations per arm (default 1000000)");
  c_tr->add_option("--surrogate", tr.surrogate, "logistic or hinge (default logistic)");
  c_tr->add_option("--undersample", tr.undersample, "P:N negative undersampling, or 'off'");
  c_tr->add_option("--step-size", tr.step_size, "SGD step size base (default 1)");
  c_tr->add_option("--validation-fraction", tr.validation_fraction,
                   "held-out fraction for the lambda grid (default 0.2)");
  c_tr->add_option("--measure", tr.measure, "threshold measure: f1, precision or recall");
  double tr_eps = 0.0;
  auto* tr_eps_opt = c_tr->add_option("--epsilon", tr_eps, "exploration rate recorded in the bundle");
  c_tr->callback([&tr, &tr_eps, tr_eps_opt] {
    if (tr_eps_opt->count()) tr.epsilon = tr_eps;
    run_train(tr);
  });

  EvalArgs ef;
  auto* c_ef = app.add_subcommand("eval-full", "True CTR of a policy on full-information data");
  c_ef->add_option("bundle", ef.bundle, "policy bundle")->required()->check(CLI::ExistingFile);
  c_ef->add_option("input", ef.input, "full-information CSV")
      ->required()
      ->check(CLI::ExistingFile);
  c_ef->add_option("--schema", ef.schema, "input schema (default 'full')");
  c_ef->add_option("--out", ef.out, "write the report here");
  c_ef->callback([&ef] { run_eval_full(ef); });

  EvalArgs eb;
  double eb_eps = 0.0, eb_clip = 0.0;
  auto* c_eb = app.add_subcommand(
      "eval-bandit", "Importance-weighted CTR with a lower confidence bound on bandit data");
  c_eb->add_option("bundle", eb.bundle, "policy bundle")->required()->check(CLI::ExistingFile);
  c_eb->add_option("input", eb.input, "bandit CSV")->required()->check(CLI::ExistingFile);
  c_eb->add_option("--schema", eb.schema, "input schema (default 'bandit')");
  c_eb->add_option("--delta", eb.delta, "confidence level for the lower bound (default 0.05)");
  auto* eb_eps_opt =
      c_eb->add_option("--epsilon", eb_eps, "exploration rate (default: bundle's, else 0)");
  auto* eb_clip_opt = c_eb->add_option("--clip", eb_clip, "importance weight cap (default off)");
  c_eb->add_option("--out", eb.out, "write the report here");
  c_eb->callback([&eb, &eb_eps, &eb_clip, eb_eps_opt, eb_clip_opt] {
    if (eb_eps_opt->count()) eb.epsilon = eb_eps;
    if (eb_clip_opt->count()) eb.clip = eb_clip;
    run_eval_bandit(eb);
  });

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Generate a synthetic sparse-click bandit instance");
  c_sim->add_option("--k", sim.k, "arms (default 5)");
  c_sim->add_option("--dim", sim.dim, "context dimension (default 10)");
  c_sim->add_option("--rates", sim.rates, "comma-separated per-arm click rates")->required();
  c_sim->add_option("--train-n", sim.train_n, "training records (default 100000)");
  c_sim->add_option("--test-n", sim.test_n, "test records (default 20000)");
  c_sim->add_option("--seed", sim.seed, "generator seed");
  c_sim->add_option("--logging", sim.logging, "training log policy: uniform or greedy");
  c_sim->add_option("--logging-epsilon", sim.logging_epsilon,
                    "exploration rate of the greedy logger (default 0.2)");
  c_sim->add_option("--out-train", sim.out_train, "training bandit CSV")->required();
  c_sim->add_option("--out-test", sim.out_test, "test bandit CSV")->required();
  c_sim->add_option("--out-truth", sim.out_truth, "ground-truth model JSON");
  c_sim->add_option("--out-rewards", sim.out_rewards, "counterfactual test reward CSV");
  c_sim->callback([&sim] { run_simulate(sim); });

  ExperimentArgs ex;
  long ex_iter = 0;
  int ex_reps = 0, ex_label = 0;
  double ex_eps = 0.0, ex_delta = 0.0, ex_tf = 0.0, ex_ff = 0.0;
  std::uint64_t ex_seed = 0;
  bool ex_resplit = false, ex_nostd = false;
  auto* c_ex = app.add_subcommand("experiment",
                                  "Repeated split/convert/train/evaluate runs with a summary");
  c_ex->add_option("--config", ex.config, "experiment config JSON")->check(CLI::ExistingFile);
  c_ex->add_option("--dataset", ex.dataset, "full-information CSV (overrides config)");
  c_ex->add_option("--out", ex.out, "output directory (overrides config)");
  auto* o_label = c_ex->add_option("--label-column", ex_label, "label column (default last)");
  auto* o_tf = c_ex->add_option("--train-fraction", ex_tf, "train fraction (default 0.7)");
  auto* o_reps = c_ex->add_option("--repetitions", ex_reps, "repetitions (default 10)");
  c_ex->add_option("--kind", ex.kindlist, "comma-separated policy kinds (default both)");
  c_ex->add_option("--undersample", ex.undersample, "P:N undersampling or 'off'");
  c_ex->add_option("--lambda-grid", ex.lambda_grid, "comma-separated regularization grid");
  auto* o_iter = c_ex->add_option("--iterations", ex_iter, "SGD iterations per arm");
  c_ex->add_option("--surrogate", ex.surrogate, "logistic or hinge");
  c_ex->add_option("--eval", ex.eval, "evaluation mode: full or bandit");
  auto* o_eps = c_ex->add_option("--epsilon", ex_eps, "exploration rate for bandit eval");
  auto* o_delta = c_ex->add_option("--delta", ex_delta, "lower bound confidence level");
  auto* o_ff = c_ex->add_option("--feature-fraction", ex_ff, "information-gain keep fraction");
  auto* o_resplit = c_ex->add_flag("--resplit", ex_resplit, "redraw the split every repetition");
  auto* o_nostd = c_ex->add_flag("--no-standardize", ex_nostd, "skip feature standardization");
  auto* o_seed = c_ex->add_option("--seed", ex_seed, "master seed");
  c_ex->callback([&] {
    if (o_label->count()) ex.label_column = ex_label;
    if (o_tf->count()) ex.train_fraction = ex_tf;
    if (o_reps->count()) ex.repetitions = ex_reps;
    if (o_iter->count()) ex.iterations = ex_iter;
    if (o_eps->count()) ex.epsilon = ex_eps;
    if (o_delta->count()) ex.delta = ex_delta;
    if (o_ff->count()) ex.feature_fraction = ex_ff;
    if (o_resplit->count()) ex.resplit = true;
    if (o_nostd->count()) ex.standardize = false;
    if (o_seed->count()) ex.seed = ex_seed;
    run_experiment_cmd(ex);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
