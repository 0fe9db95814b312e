// Supervised-to-bandit conversion, per-arm binary sets, undersampling and
// information-gain feature selection.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "banditrank/banditrank.hpp"

using namespace banditrank;
using Catch::Matchers::ContainsSubstring;

namespace {

Dataset labeled_gaussians(int n, int num_arms, int dimension, std::uint64_t seed) {
  Dataset data;
  data.kind = DatasetKind::full_information;
  data.dimension = dimension;
  data.num_arms = num_arms;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    ContextVector x(dimension);
    for (auto& v : x) v = rng.gaussian();
    data.supervised.push_back({std::move(x), static_cast<int>(rng.index_below(num_arms))});
  }
  return data;
}

}  // namespace

TEST_CASE("single-arm conversion always matches") {
  const auto data = labeled_gaussians(50, 1, 2, 3);
  const auto bandit = convert_supervised_to_bandit(data, {11, 0});
  REQUIRE(bandit.kind == DatasetKind::bandit);
  REQUIRE(bandit.size() == 50);
  for (const auto& r : bandit.bandit) {
    CHECK(r.action == 0);
    CHECK(r.reward == 1);
    CHECK(r.propensity == 1.0);
  }
}

TEST_CASE("conversion reward rate concentrates at one over K") {
  const auto data = labeled_gaussians(10000, 10, 2, 4);
  const auto bandit = convert_supervised_to_bandit(data, {12, 0});
  double rate = 0.0;
  for (const auto& r : bandit.bandit) rate += r.reward;
  rate /= static_cast<double>(bandit.size());
  CHECK(rate > 0.09);
  CHECK(rate < 0.11);
  for (const auto& r : bandit.bandit) CHECK(r.propensity == 0.1);
}

TEST_CASE("conversion is deterministic in the seed") {
  const auto data = labeled_gaussians(500, 5, 2, 6);
  const auto a = convert_supervised_to_bandit(data, {21, 0});
  const auto b = convert_supervised_to_bandit(data, {21, 0});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.bandit[i].action == b.bandit[i].action);
    CHECK(a.bandit[i].reward == b.bandit[i].reward);
  }
  const auto c = convert_supervised_to_bandit(data, {22, 0});
  bool same = true;
  for (std::size_t i = 0; i < a.size() && same; ++i) same = a.bandit[i].action == c.bandit[i].action;
  CHECK_FALSE(same);
}

TEST_CASE("conversion carries arm names and rejects bandit input") {
  auto data = labeled_gaussians(10, 2, 1, 8);
  data.arm_names = {"left", "right"};
  const auto bandit = convert_supervised_to_bandit(data, {1, 0});
  CHECK(bandit.arm_names == std::vector<std::string>{"left", "right"});
  REQUIRE_THROWS_AS(convert_supervised_to_bandit(bandit, {1, 0}), std::invalid_argument);
}

TEST_CASE("per-arm sets route records by action and reward") {
  Dataset data;
  data.kind = DatasetKind::bandit;
  data.dimension = 1;
  data.num_arms = 2;
  const ContextVector x1{1.0}, x2{2.0}, x3{3.0};
  data.bandit.push_back({x1, 0, 1, 0.5});
  data.bandit.push_back({x2, 0, 0, 0.5});
  data.bandit.push_back({x3, 1, 1, 0.5});

  const auto sets = build_per_arm_binary_sets(data);
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].arm == 0);
  CHECK(sets[0].positives == std::vector<ContextVector>{x1});
  CHECK(sets[0].negatives == std::vector<ContextVector>{x2});
  CHECK(sets[1].positives == std::vector<ContextVector>{x3});
  CHECK(sets[1].negatives.empty());
}

TEST_CASE("per-arm sets of an empty dataset are all empty") {
  Dataset data;
  data.kind = DatasetKind::bandit;
  data.dimension = 1;
  data.num_arms = 3;
  const auto sets = build_per_arm_binary_sets(data);
  REQUIRE(sets.size() == 3);
  for (const auto& s : sets) {
    CHECK(s.positives.empty());
    CHECK(s.negatives.empty());
  }
}

TEST_CASE("per-arm sets partition the records") {
  const auto data = labeled_gaussians(2000, 7, 2, 9);
  const auto bandit = convert_supervised_to_bandit(data, {31, 0});
  const auto sets = build_per_arm_binary_sets(bandit);
  std::size_t total = 0;
  for (const auto& s : sets) total += s.positives.size() + s.negatives.size();
  CHECK(total == 2000);
}

TEST_CASE("undersampling trims negatives to the ratio target") {
  BinaryTrainingSet set;
  set.arm = 2;
  for (int i = 0; i < 10; ++i) set.positives.push_back({static_cast<double>(i)});
  for (int i = 0; i < 100; ++i) set.negatives.push_back({static_cast<double>(100 + i)});

  const auto one_two = undersample_negatives(set, {1, 2}, 17);
  CHECK(one_two.negatives.size() == 20);
  const auto one_one = undersample_negatives(set, {1, 1}, 17);
  CHECK(one_one.negatives.size() == 10);

  // positives come through untouched
  CHECK(one_two.positives == set.positives);

  // every kept negative is one of the originals, no duplicates
  std::set<double> originals;
  for (const auto& x : set.negatives) originals.insert(x[0]);
  std::set<double> kept;
  for (const auto& x : one_two.negatives) {
    CHECK(originals.count(x[0]) == 1);
    kept.insert(x[0]);
  }
  CHECK(kept.size() == one_two.negatives.size());
}

TEST_CASE("undersampling leaves scarce negatives alone") {
  BinaryTrainingSet set;
  for (int i = 0; i < 10; ++i) set.positives.push_back({static_cast<double>(i)});
  for (int i = 0; i < 5; ++i) set.negatives.push_back({static_cast<double>(50 + i)});
  const auto out = undersample_negatives(set, {1, 2}, 3);
  CHECK(out.negatives.size() == 5);
  CHECK(out.negatives == set.negatives);
}

TEST_CASE("undersampling is deterministic and validates input") {
  BinaryTrainingSet set;
  set.arm = 4;
  for (int i = 0; i < 6; ++i) set.positives.push_back({static_cast<double>(i)});
  for (int i = 0; i < 40; ++i) set.negatives.push_back({static_cast<double>(100 + i)});

  const auto a = undersample_negatives(set, {1, 2}, 8);
  const auto b = undersample_negatives(set, {1, 2}, 8);
  CHECK(a.negatives == b.negatives);
  const auto c = undersample_negatives(set, {1, 2}, 9);
  CHECK(a.negatives != c.negatives);

  REQUIRE_THROWS_AS(undersample_negatives(set, {0, 2}, 1), std::invalid_argument);
  BinaryTrainingSet no_pos;
  no_pos.arm = 4;
  no_pos.negatives.push_back({1.0});
  REQUIRE_THROWS_WITH(undersample_negatives(no_pos, {1, 2}, 1),
                      ContainsSubstring("arm 5 has no positive examples"));
}

TEST_CASE("perfect predictor of a balanced target gains one bit") {
  Dataset data;
  data.kind = DatasetKind::full_information;
  data.dimension = 2;
  data.num_arms = 2;
  for (int i = 0; i < 100; ++i) {
    const int label = i % 2;
    data.supervised.push_back({{static_cast<double>(label), 7.0}, label});
  }
  const auto sel = information_gain_select(data, 1.0);
  REQUIRE(sel.kept_indices == std::vector<int>{0, 1});
  CHECK(sel.gains[0] == 1.0);  // feature 0 predicts the target exactly
  CHECK(sel.gains[1] == 0.0);  // constant feature carries nothing

  const auto top = information_gain_select(data, 0.5);
  CHECK(top.kept_indices == std::vector<int>{0});
}

TEST_CASE("information gain is invariant under record permutation") {
  auto data = labeled_gaussians(400, 3, 6, 13);
  // inject signal so gains are nontrivial
  for (auto& r : data.supervised) r.context[2] += 1.5 * r.label;
  const auto sel = information_gain_select(data, 1.0);

  Dataset reversed = data;
  std::reverse(reversed.supervised.begin(), reversed.supervised.end());
  const auto sel2 = information_gain_select(reversed, 1.0);
  CHECK(sel.kept_indices == sel2.kept_indices);
  for (std::size_t i = 0; i < sel.gains.size(); ++i) CHECK(sel.gains[i] == sel2.gains[i]);
  for (double g : sel.gains) CHECK(g >= 0.0);
}

TEST_CASE("keep fraction rounds up") {
  const auto data = load_dataset(std::string(BANDITRANK_DATA_DIR) + "/optdigits.csv");
  const auto sel = information_gain_select(data, 0.2);
  CHECK(sel.kept_indices.size() == 13);
  CHECK(std::is_sorted(sel.kept_indices.begin(), sel.kept_indices.end()));
}

TEST_CASE("feature selection rejects degenerate input") {
  Dataset one_class;
  one_class.kind = DatasetKind::full_information;
  one_class.dimension = 1;
  one_class.num_arms = 1;
  for (int i = 0; i < 5; ++i) one_class.supervised.push_back({{static_cast<double>(i)}, 0});
  REQUIRE_THROWS_WITH(information_gain_select(one_class, 0.5),
                      ContainsSubstring("zero-entropy target"));

  const auto data = labeled_gaussians(10, 2, 2, 14);
  REQUIRE_THROWS_AS(information_gain_select(data, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(information_gain_select(data, 1.5), std::invalid_argument);
}

TEST_CASE("bandit feature selection targets the reward") {
  Dataset data;
  data.kind = DatasetKind::bandit;
  data.dimension = 2;
  data.num_arms = 2;
  Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    const int reward = i % 2;
    data.bandit.push_back({{static_cast<double>(reward), rng.gaussian()},
                           static_cast<int>(rng.index_below(2)), reward, 0.5});
  }
  const auto sel = information_gain_select(data, 0.5);
  CHECK(sel.kept_indices == std::vector<int>{0});
  CHECK(sel.gains[0] == 1.0);
}

TEST_CASE("feature projection keeps the chosen columns") {
  Dataset data;
  data.kind = DatasetKind::full_information;
  data.dimension = 3;
  data.num_arms = 2;
  data.supervised.push_back({{1.0, 2.0, 3.0}, 0});
  data.supervised.push_back({{4.0, 5.0, 6.0}, 1});

  const auto out = apply_feature_selection(data, {0, 2});
  CHECK(out.dimension == 2);
  CHECK(out.supervised[0].context == ContextVector{1.0, 3.0});
  CHECK(out.supervised[1].context == ContextVector{4.0, 6.0});

  REQUIRE_THROWS_AS(apply_feature_selection(data, {3}), std::invalid_argument);
}
