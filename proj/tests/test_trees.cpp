#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/naive_oracles.hpp"
#include "transonline/dimensions.hpp"
#include "transonline/trees.hpp"

using namespace transonline;

namespace {

LCTree depth1_tree(int x, Label left, Label right) {
  LCTree t = LCTree::make({x});
  t.edge_ref(0, 0, 0) = left;
  t.edge_ref(0, 0, 1) = right;
  return t;
}

}  // namespace

TEST_CASE("is_littlestone_labeled") {
  CHECK(is_littlestone_labeled(depth1_tree(0, 0, 1)));
  CHECK_FALSE(is_littlestone_labeled(depth1_tree(0, 0, 0)));
  CHECK(is_littlestone_labeled(LCTree::make({})));  // depth 0, vacuous
}

TEST_CASE("is_shattered") {
  auto cls = gen_constants(2, 1);
  auto t = depth1_tree(0, 0, 1);
  CHECK(is_shattered(t, VersionSet::full(cls)));
  VersionSet only0{&cls, 1ull};
  CHECK_FALSE(is_shattered(t, only0));  // right path unrealized
  CHECK(is_shattered(LCTree::make({}), VersionSet::full(cls)));
  VersionSet empty{&cls, 0};
  CHECK_FALSE(is_shattered(LCTree::make({}), empty));
}

TEST_CASE("path_branching") {
  auto full = gen_full(2, 2);
  auto w = dim_level_littlestone(full);
  REQUIRE(w.value == 2);
  for (const std::string& sigma : {"00", "01", "10", "11"})
    CHECK(path_branching(*w.tree, sigma).branching_count == 2);

  LCTree flat = LCTree::make({0, 1});
  CHECK(path_branching(flat, "01").branching_count == 0);

  // mixed: root branches, the two level-2 nodes do not
  LCTree mixed = LCTree::make({0, 1});
  mixed.edge_ref(0, 0, 0) = 0;
  mixed.edge_ref(0, 0, 1) = 1;
  for (std::uint32_t node : {0u, 1u}) {
    mixed.edge_ref(1, node, 0) = 0;
    mixed.edge_ref(1, node, 1) = 0;
  }
  for (const std::string& sigma : {"00", "01", "10", "11"})
    CHECK(path_branching(mixed, sigma).branching_count == 1);

  CHECK_THROWS_AS(path_branching(mixed, "0"), std::invalid_argument);
}

TEST_CASE("min_path_branching") {
  auto full = gen_full(2, 3);
  auto w = dim_level_littlestone(full);
  CHECK(min_path_branching(*w.tree) == 3);
  CHECK(min_path_branching(LCTree::make({})) == 0);

  LCTree flat = LCTree::make({0, 1});
  CHECK(min_path_branching(flat) == 0);

  // asymmetric: left subtree branches, right does not
  LCTree t = LCTree::make({0, 1});
  t.edge_ref(0, 0, 0) = 0;
  t.edge_ref(0, 0, 1) = 1;
  t.edge_ref(1, 0, 0) = 0;
  t.edge_ref(1, 0, 1) = 1;
  t.edge_ref(1, 1, 0) = 0;
  t.edge_ref(1, 1, 1) = 0;
  CHECK(min_path_branching(t) == 1);
  CHECK(path_branching(t, "00").branching_count == 2);
}

TEST_CASE("branching_levels") {
  auto full = gen_full(2, 3);
  auto w = dim_level_littlestone(full);
  CHECK(branching_levels(*w.tree) == 3);
  CHECK(branching_levels(LCTree::make({0, 1})) == 0);
}

TEST_CASE("normalize_tree basic") {
  auto full = gen_full(2, 2);
  auto w = dim_level_littlestone(full);
  REQUIRE(min_path_branching(*w.tree) == 2);

  LCTree norm = normalize_tree(*w.tree, full, 1);
  CHECK(is_shattered(norm, VersionSet::full(full)));
  for (const std::string& sigma : {"00", "01", "10", "11"})
    CHECK(path_branching(norm, sigma).branching_count == 1);
  CHECK(branching_levels(norm) <= 1);  // 2^1 - 1

  // idempotence
  CHECK(normalize_tree(norm, full, 1) == norm);
}

TEST_CASE("normalize_tree copies left subtree at non-branching nodes") {
  auto full = gen_full(2, 2);
  // non-branching root with differing subtrees
  LCTree t = LCTree::make({0, 1});
  t.edge_ref(0, 0, 0) = 0;
  t.edge_ref(0, 0, 1) = 0;
  t.edge_ref(1, 0, 0) = 0;
  t.edge_ref(1, 0, 1) = 1;
  t.edge_ref(1, 1, 0) = 1;
  t.edge_ref(1, 1, 1) = 0;
  REQUIRE(is_shattered(t, VersionSet::full(full)));
  REQUIRE(min_path_branching(t) == 1);
  LCTree norm = normalize_tree(t, full, 1);
  CHECK(norm.edge(1, 0, 0) == norm.edge(1, 1, 0));
  CHECK(norm.edge(1, 0, 1) == norm.edge(1, 1, 1));
}

TEST_CASE("normalize_tree rejects bad preconditions") {
  auto full = gen_full(2, 2);
  LCTree flat = LCTree::make({0, 1});  // all labels 0: shattered but min 0
  CHECK_THROWS_AS(normalize_tree(flat, full, 1), std::invalid_argument);

  auto constants = gen_constants(2, 1);
  auto t = depth1_tree(0, 0, 7);  // right path unrealized
  CHECK_THROWS_AS(normalize_tree(t, constants, 1), std::invalid_argument);
}

TEST_CASE("normalized trees satisfy the branching-levels bound") {
  auto full = gen_full(2, 3);
  Lcg64 rng(99);
  int made = 0;
  while (made < 25) {
    std::vector<int> xs;
    int len = 4 + static_cast<int>(rng.next_below(3));
    for (int i = 0; i < len; ++i) xs.push_back(static_cast<int>(rng.next_below(3)));
    LCTree t = testing::random_shattered_tree(full, xs, rng);
    int q = 2;
    if (min_path_branching(t) < q) continue;
    LCTree norm = normalize_tree(t, full, q);
    CHECK(is_shattered(norm, VersionSet::full(full)));
    CHECK(min_path_branching(norm) == q);
    CHECK(branching_levels(norm) <= (1 << q) - 1);
    ++made;
  }
}

TEST_CASE("littlestone-labeled trees branch on every path") {
  auto full = gen_full(2, 3);
  Lcg64 rng(7);
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<int> xs;
    int len = 1 + static_cast<int>(rng.next_below(5));
    for (int i = 0; i < len; ++i) xs.push_back(static_cast<int>(rng.next_below(3)));
    LCTree t = testing::random_shattered_tree(full, xs, rng);
    if (is_littlestone_labeled(t)) CHECK(min_path_branching(t) == t.depth);
    CHECK(min_path_branching(t) <= branching_levels(t));
  }
}

TEST_CASE("tree json round trip") {
  auto full = gen_full(2, 3);
  auto w = dim_level_littlestone(full);
  auto j = tree_to_json(*w.tree);
  CHECK(tree_from_json(j) == *w.tree);
  // edges listed in lexicographic (node, b) order
  CHECK(j["edges"][0]["node"] == "");
  CHECK(j["edges"][0]["b"] == 0);
  CHECK(j["edges"][1]["node"] == "");
  CHECK(j["edges"][1]["b"] == 1);
  CHECK(j["edges"][2]["node"] == "0");

  nlohmann::ordered_json bad = j;
  bad["edges"].erase(bad["edges"].size() - 1);
  CHECK_THROWS_AS(tree_from_json(bad), std::invalid_argument);
}
