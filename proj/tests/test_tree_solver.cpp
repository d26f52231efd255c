#include <doctest.h>

#include "ckoc/oracle.hpp"
#include "ckoc/tree.hpp"
#include "ckoc/tree_solver.hpp"
#include "support.hpp"

using namespace ckoc;

TEST_CASE("critical points") {
  Graph p = test::path3().graph;
  RootedTree rt = root_tree(p);
  auto cp = critical_points(p, rt, Rational(1, 2));
  REQUIRE(cp.size() == 3);
  CHECK(cp[2].edge == *p.find_edge(1, 2));
  CHECK(cp[2].t == Rational(1, 2));
  auto all = critical_points(p, rt, Rational(10));
  for (const auto& x : all) CHECK(point_vertex(p, x) == 0);
  Graph w = test::wedge2().graph;
  auto cw = critical_points(w, root_tree(w), Rational(4));
  CHECK(cw[1].t == Rational(2));
}

TEST_CASE("tree feasibility examples") {
  Graph p = test::path5().graph;
  CHECK(is_feasible_tree(p, 3, Rational(1)).feasible);
  CHECK_FALSE(is_feasible_tree(p, 3, Rational(99, 100)).feasible);
  Graph s = test::star3().graph;
  auto r = is_feasible_tree(s, 2, Rational(1, 2));
  REQUIRE(r.feasible);
  CHECK(r.witness->point.t == Rational(1, 2));
}

TEST_CASE("centroid decomposition") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Graph t = test::random_tree(seed, 2, 60, false);
    auto parts = centroid_decomposition(t);
    std::vector<int> as_centroid(t.n(), 0);
    for (const auto& part : parts) {
      ++as_centroid[part.centroid];
      std::vector<int> size;
      for (int b : part.branch)
        if (b >= 0) {
          if (static_cast<int>(size.size()) <= b) size.resize(b + 1, 0);
          ++size[b];
        }
      for (int s : size) CHECK(2 * s <= static_cast<int>(part.members.size()));
    }
    for (int c : as_centroid) CHECK(c == 1);
  }
}

TEST_CASE("tree solver examples") {
  CHECK(solve_weighted_tree(test::wedge2().graph, 2).lambda_star == Rational(4));
  Graph p = test::path5().graph;
  CHECK(solve_weighted_tree(p, 3).lambda_star == Rational(1));
  Graph s = test::star3().graph;
  Solution hub = solve_weighted_tree(s, 4);
  CHECK(hub.lambda_star == Rational(1));
  CHECK(point_vertex(s, hub.center) == 0);

  Solution a = solve_unweighted_tree(p, 3);
  CHECK(a.lambda_star == Rational(1));
  REQUIRE(point_vertex(p, a.center));
  CHECK(*point_vertex(p, a.center) >= 1);
  CHECK(*point_vertex(p, a.center) <= 3);
  Solution b = solve_unweighted_tree(s, 2);
  CHECK(b.lambda_star == Rational(1, 2));
  CHECK(b.center.t == Rational(1, 2));
  Solution c = solve_unweighted_tree(p, 5);
  CHECK(c.lambda_star == Rational(2));
  CHECK(point_vertex(p, c.center) == 2);
}

TEST_CASE("k-th smallest of sorted arrays") {
  using V = std::vector<int>;
  CHECK(kth_smallest_sorted_arrays(std::vector<V>{{1, 3, 5}, {2, 4}}, 3) == 3);
  CHECK(kth_smallest_sorted_arrays(std::vector<V>{{1}, {1}, {1}}, 2) == 1);
  V one{4, 7, 9, 12};
  for (std::size_t k = 1; k <= one.size(); ++k) CHECK(kth_smallest_sorted_arrays(std::vector<V>{one}, k) == one[k - 1]);
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    std::vector<V> arrays(std::uniform_int_distribution<int>(1, 6)(rng));
    V all;
    for (auto& a : arrays) {
      a.resize(std::uniform_int_distribution<int>(0, 10)(rng));
      for (int& x : a) x = std::uniform_int_distribution<int>(0, 20)(rng);
      std::sort(a.begin(), a.end());
      all.insert(all.end(), a.begin(), a.end());
    }
    if (all.empty()) continue;
    std::sort(all.begin(), all.end());
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, all.size())(rng);
    CHECK(kth_smallest_sorted_arrays(arrays, k) == all[k - 1]);
  }
  CHECK_THROWS(kth_smallest_sorted_arrays(std::vector<V>{{1}}, 2));
}

TEST_CASE("tree solvers agree with the oracle and return valid subtrees") {
  for (std::uint64_t seed = 800; seed < 860; ++seed) {
    Graph t = test::random_tree(seed, 2, 11, seed % 2 == 0);
    auto want = oracle::brute_lambda_all(t);
    DistanceMatrix dm = oracle::floyd_warshall(t);
    for (int k = 1; k <= t.n(); ++k) {
      Solution s = solve_weighted_tree(t, k);
      CHECK(s.lambda_star == want[k - 1]);
      CHECK(test::witness_valid(t, dm, Witness{s.center, s.subtree}, k, s.lambda_star));
      if (t.unit_weights()) {
        Solution u = solve_unweighted_tree(t, k);
        CHECK(u.lambda_star == want[k - 1]);
        CHECK(test::witness_valid(t, dm, Witness{u.center, u.subtree}, k, u.lambda_star));
      }
    }
  }
}

TEST_CASE("unweighted tree solver on larger trees against the weighted one") {
  for (std::uint64_t seed = 900; seed < 915; ++seed) {
    Graph t = test::random_tree(seed, 30, 120, false);
    std::mt19937_64 rng(seed);
    for (int r = 0; r < 4; ++r) {
      int k = std::uniform_int_distribution<int>(1, t.n())(rng);
      CHECK(solve_unweighted_tree(t, k).lambda_star == solve_weighted_tree(t, k, SearchStrategy::Counting).lambda_star);
    }
  }
}
