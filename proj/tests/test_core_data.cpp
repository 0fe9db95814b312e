// CSV loading, train/test splitting and feature standardization.
#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "banditrank/banditrank.hpp"

using namespace banditrank;
using Catch::Matchers::ContainsSubstring;

namespace {

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "banditrank_core_data";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = temp_dir() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data_file(const char* name) {
  return std::string(BANDITRANK_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("optdigits loads with its published shape") {
  const auto data = load_dataset(data_file("optdigits.csv"));
  CHECK(data.kind == DatasetKind::full_information);
  CHECK(data.size() == 5620);
  CHECK(data.dimension == 64);
  CHECK(data.num_arms == 10);
  for (const auto& r : data.supervised) {
    REQUIRE(r.label >= 0);
    REQUIRE(r.label < 10);
  }
}

TEST_CASE("pendigits loads with its published shape") {
  const auto data = load_dataset(data_file("pendigits.csv"));
  CHECK(data.size() == 10992);
  CHECK(data.dimension == 16);
  CHECK(data.num_arms == 10);
}

TEST_CASE("empty file is rejected") {
  const auto path = write_temp("empty.csv", "");
  REQUIRE_THROWS_WITH(load_dataset(path), ContainsSubstring("no records"));
}

TEST_CASE("missing file is rejected with its path") {
  REQUIRE_THROWS_WITH(load_dataset("/nonexistent/nowhere.csv"),
                      ContainsSubstring("/nonexistent/nowhere.csv"));
}

TEST_CASE("hand-written three-row file") {
  const auto path = write_temp("tiny.csv", "1.5,2.5,0\n0.5,1.0,1\n2.0,0.25,1\n");
  const auto data = load_dataset(path);
  REQUIRE(data.size() == 3);
  CHECK(data.dimension == 2);
  CHECK(data.num_arms == 2);
  CHECK(data.supervised[0].context == ContextVector{1.5, 2.5});
  CHECK(data.supervised[0].label == 0);
  CHECK(data.supervised[1].label == 1);
  CHECK(data.supervised[2].context == ContextVector{2.0, 0.25});
}

TEST_CASE("label column can sit anywhere") {
  const auto path = write_temp("label_first.csv", "7,1.5,2.5\n9,0.5,1.0\n");
  CsvSchema schema;
  schema.label_column = 0;
  const auto data = load_dataset(path, schema);
  REQUIRE(data.size() == 2);
  CHECK(data.dimension == 2);
  CHECK(data.num_arms == 2);
  CHECK(data.supervised[0].context == ContextVector{1.5, 2.5});
  // tokens 7 and 9 remap to arms 0 and 1 but keep their names
  CHECK(data.supervised[0].label == 0);
  CHECK(data.supervised[1].label == 1);
  CHECK(data.arm_name(0) == "7");
  CHECK(data.arm_name(1) == "9");
}

TEST_CASE("non-contiguous labels are remapped in numeric order") {
  const auto path = write_temp("sparse_labels.csv", "1,9\n2,3\n3,7\n4,3\n");
  const auto data = load_dataset(path);
  CHECK(data.num_arms == 3);
  CHECK(data.arm_names == std::vector<std::string>{"3", "7", "9"});
  CHECK(data.supervised[0].label == 2);
  CHECK(data.supervised[1].label == 0);
  CHECK(data.supervised[2].label == 1);
  CHECK(data.supervised[3].label == 0);
}

TEST_CASE("loader errors name the offending line") {
  SECTION("non-numeric feature") {
    const auto path = write_temp("bad_feature.csv", "1.0,2.0,0\n1.0,oops,1\n");
    REQUIRE_THROWS_WITH(load_dataset(path),
                        ContainsSubstring("line 2") && ContainsSubstring("oops"));
  }
  SECTION("ragged row") {
    const auto path = write_temp("ragged.csv", "1.0,2.0,0\n1.0,1\n");
    REQUIRE_THROWS_WITH(load_dataset(path), ContainsSubstring("line 2"));
  }
  SECTION("bad reward") {
    CsvSchema schema;
    schema.kind = DatasetKind::bandit;
    const auto path = write_temp("bad_reward.csv", "1.0,0,2,0.5\n");
    REQUIRE_THROWS_WITH(load_dataset(path, schema),
                        ContainsSubstring("reward must be 0 or 1"));
  }
  SECTION("bad propensity") {
    CsvSchema schema;
    schema.kind = DatasetKind::bandit;
    const auto path = write_temp("bad_prop.csv", "1.0,0,1,0\n");
    REQUIRE_THROWS_WITH(load_dataset(path, schema),
                        ContainsSubstring("propensity must lie in (0, 1]"));
  }
  SECTION("fractional action") {
    CsvSchema schema;
    schema.kind = DatasetKind::bandit;
    const auto path = write_temp("bad_action.csv", "1.0,0.5,1,0.5\n");
    REQUIRE_THROWS_WITH(load_dataset(path, schema),
                        ContainsSubstring("action must be a non-negative integer"));
  }
}

TEST_CASE("bandit file round trip") {
  const auto path =
      write_temp("bandit.csv", "0.25,1.5,0,1,0.5\n-3.75,2.0,1,0,0.5\n0.1,0.2,1,1,0.25\n");
  CsvSchema schema;
  schema.kind = DatasetKind::bandit;
  const auto data = load_dataset(path, schema);
  REQUIRE(data.size() == 3);
  CHECK(data.dimension == 2);
  CHECK(data.num_arms == 2);
  CHECK(data.bandit[0].action == 0);
  CHECK(data.bandit[0].reward == 1);
  CHECK(data.bandit[0].propensity == 0.5);
  CHECK(data.bandit[2].propensity == 0.25);

  const auto out = (temp_dir() / "bandit_out.csv").string();
  write_dataset(data, out);
  const auto back = load_dataset(out, schema);
  REQUIRE(back.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(back.bandit[i].context == data.bandit[i].context);
    CHECK(back.bandit[i].action == data.bandit[i].action);
    CHECK(back.bandit[i].reward == data.bandit[i].reward);
    CHECK(back.bandit[i].propensity == data.bandit[i].propensity);
  }
}

TEST_CASE("missing propensity column defaults to uniform logging") {
  const auto path = write_temp("noprop.csv", "1.0,2.0,1,1\n0.5,0.1,0,0\n");
  CsvSchema schema;
  schema.kind = DatasetKind::bandit;
  schema.has_propensity = false;
  schema.num_arms = 4;
  const auto data = load_dataset(path, schema);
  CHECK(data.num_arms == 4);
  CHECK(data.bandit[0].propensity == 0.25);
  CHECK(data.bandit[1].propensity == 0.25);
}

TEST_CASE("declared arm count widens inferred arms") {
  const auto path = write_temp("narrow.csv", "1.0,0,1,0.2\n");
  CsvSchema schema;
  schema.kind = DatasetKind::bandit;
  schema.num_arms = 5;
  CHECK(load_dataset(path, schema).num_arms == 5);
  schema.num_arms = 0;
  CHECK(load_dataset(path, schema).num_arms == 1);
}

TEST_CASE("write then reload reproduces doubles exactly") {
  Dataset data;
  data.kind = DatasetKind::full_information;
  data.dimension = 3;
  data.num_arms = 2;
  const ContextVector awkward{0.1, 1.0 / 3.0, -2.5e300};
  const ContextVector tiny{1e-17, 42.0, 0.0};
  data.supervised.push_back({awkward, 0});
  data.supervised.push_back({tiny, 1});

  const auto path = (temp_dir() / "doubles.csv").string();
  write_dataset(data, path);
  const auto back = load_dataset(path);
  REQUIRE(back.size() == 2);
  CHECK(back.supervised[0].context == awkward);
  CHECK(back.supervised[1].context == tiny);
  CHECK(back.supervised[0].label == 0);
  CHECK(back.supervised[1].label == 1);

  // A second write of the reloaded data is byte-identical.
  const auto path2 = (temp_dir() / "doubles2.csv").string();
  write_dataset(back, path2);
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("format_double picks the shortest exact form") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(42.0) == "42");
  CHECK(format_double(0.1) == "0.1");
  for (double v : {1.0 / 3.0, 0.1, 1e-17, -2.5e300, 3.141592653589793}) {
    double back = 0;
    std::sscanf(format_double(v).c_str(), "%lf", &back);
    CHECK(back == v);
  }
}

TEST_CASE("split sizes follow the ceiling rule") {
  Dataset small;
  small.kind = DatasetKind::full_information;
  small.dimension = 1;
  small.num_arms = 2;
  for (int i = 0; i < 10; ++i)
    small.supervised.push_back({{static_cast<double>(i)}, i % 2});
  const auto [train, test] = split_train_test(small, 0.7, 1);
  CHECK(train.size() == 7);
  CHECK(test.size() == 3);

  const auto opt = load_dataset(data_file("optdigits.csv"));
  const auto [otr, ote] = split_train_test(opt, 0.7, 1);
  CHECK(otr.size() == 3934);
  CHECK(ote.size() == 1686);
}

TEST_CASE("split partitions the records") {
  Dataset data;
  data.kind = DatasetKind::full_information;
  data.dimension = 1;
  data.num_arms = 2;
  for (int i = 0; i < 100; ++i)
    data.supervised.push_back({{static_cast<double>(i)}, i % 2});
  const auto [train, test] = split_train_test(data, 0.3, 7);
  REQUIRE(train.size() + test.size() == 100);
  std::set<double> seen;
  for (const auto& r : train.supervised) seen.insert(r.context[0]);
  for (const auto& r : test.supervised) seen.insert(r.context[0]);
  CHECK(seen.size() == 100);  // every record lands on exactly one side
  CHECK(train.num_arms == 2);
  CHECK(test.dimension == 1);
}

TEST_CASE("split is deterministic in the seed") {
  const auto data = load_dataset(data_file("pendigits.csv"));
  const auto a = split_train_test(data, 0.7, 99);
  const auto b = split_train_test(data, 0.7, 99);
  REQUIRE(a.first.size() == b.first.size());
  for (std::size_t i = 0; i < a.first.size(); ++i) {
    CHECK(a.first.supervised[i].context == b.first.supervised[i].context);
    CHECK(a.first.supervised[i].label == b.first.supervised[i].label);
  }
  const auto c = split_train_test(data, 0.7, 100);
  bool same = true;
  for (std::size_t i = 0; i < a.first.size() && same; ++i)
    same = a.first.supervised[i].context == c.first.supervised[i].context;
  CHECK_FALSE(same);
}

TEST_CASE("standardizer centers and scales the training split") {
  Dataset data;
  data.kind = DatasetKind::full_information;
  data.dimension = 3;
  data.num_arms = 2;
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    // third feature is constant
    data.supervised.push_back(
        {{3.0 + 2.0 * rng.gaussian(), -10.0 + 0.5 * rng.gaussian(), 7.5}, i % 2});
  }
  const auto st = fit_standardizer(data);
  CHECK(st.means[2] == 7.5);
  CHECK(st.stds[2] == 1.0);  // constant feature keeps scale 1

  Dataset scaled = data;
  st.apply(scaled);
  for (int j = 0; j < 3; ++j) {
    double mean = 0.0;
    for (const auto& r : scaled.supervised) mean += r.context[j];
    mean /= 200.0;
    CHECK(std::abs(mean) < 1e-12);
  }
  for (int j = 0; j < 2; ++j) {
    double var = 0.0;
    for (const auto& r : scaled.supervised) var += r.context[j] * r.context[j];
    var /= 200.0;
    CHECK(var == Catch::Approx(1.0).margin(1e-9));
  }
  for (const auto& r : scaled.supervised) CHECK(r.context[2] == 0.0);
}

TEST_CASE("standardizer fitted on train applies unchanged to test") {
  Dataset train;
  train.kind = DatasetKind::full_information;
  train.dimension = 1;
  train.num_arms = 2;
  train.supervised.push_back({{0.0}, 0});
  train.supervised.push_back({{10.0}, 1});
  const auto st = fit_standardizer(train);
  CHECK(st.means[0] == 5.0);
  CHECK(st.stds[0] == 5.0);  // population deviation over {0, 10}

  ContextVector probe{20.0};
  st.apply(probe);
  CHECK(probe[0] == 3.0);
}
