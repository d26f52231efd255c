#include <doctest.h>

#include "ckoc/klevel.hpp"
#include "ckoc/oracle.hpp"
#include "support.hpp"

using namespace ckoc;
using namespace ckoc::oracle;

TEST_CASE("brute coverage count") {
  Graph p = test::path3().graph;
  DistanceMatrix dm = floyd_warshall(p);
  CHECK(brute_coverage_count(p, dm, EdgePoint{0, Rational(1, 2)}, Rational(1, 2)) == 2);
  CHECK(brute_coverage_count(p, dm, EdgePoint{1, Rational(1, 3)}, Rational(0)) == 0);
  CHECK(brute_coverage_count(p, dm, vertex_point(p, 1), Rational(1)) == 3);
}

TEST_CASE("brute feasibility and optimum") {
  Graph p = test::path3().graph;
  CHECK(brute_feasible(p, 2, Rational(1, 2)));
  CHECK_FALSE(brute_feasible(p, 3, Rational(1, 2)));
  CHECK(brute_lambda(test::wedge2().graph, 2) == Rational(4));
  CHECK(brute_lambda(p, 2) == Rational(1, 2));
  CHECK(brute_lambda(test::cycle4().graph, 3) == Rational(1));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Graph g = test::random_graph(seed);
    CHECK(brute_feasible(g, 1, Rational(0)));
    auto all = brute_lambda_all(g);
    for (int k = 1; k <= g.n(); ++k) {
      CHECK(all[k - 1] == brute_lambda(g, k));
      if (k > 1) CHECK(all[k - 2] <= all[k - 1]);
    }
  }
}

TEST_CASE("brute feasibility is monotone in lambda") {
  for (std::uint64_t seed = 30; seed <= 45; ++seed) {
    Graph g = test::random_graph(seed);
    DistanceMatrix dm = floyd_warshall(g);
    auto cands = candidate_set(g, dm);
    int prev = 0;
    for (std::size_t i = 0; i < cands.size(); i += 2) {
      int now = brute_max_coverage(g, dm, cands[i]);
      CHECK(now >= prev);
      prev = now;
    }
  }
}

TEST_CASE("brute k-th level") {
  ChainSet cs = make_chain_set(Rational(2), {{Rational(0), Rational(2)}, {Rational(2), Rational(0)}});
  CHECK(brute_kth_level(cs, 2, Rational(1)) == Rational(1));
  CHECK(brute_kth_level(cs, 1, Rational(0)) == Rational(0));
  Graph p = test::path3().graph;
  ChainSet pc = build_chains(p, floyd_warshall(p), 0);
  CHECK(brute_kth_level(pc, 2, Rational(1, 2)) == Rational(1, 2));
}

TEST_CASE("minimum diameter subtree") {
  auto five = brute_min_diameter_ksubtree(test::path5().graph, 3);
  CHECK(five.diameter == Rational(1));
  CHECK(five.vertices.size() == 3);
  CHECK(five.vertices[2] - five.vertices[0] == 2);
  CHECK(brute_min_diameter_ksubtree(test::star3().graph, 2).diameter == Rational(1, 2));
  CHECK(brute_min_diameter_ksubtree(test::wedge2().graph, 2).diameter == Rational(4));
}

TEST_CASE("minimum diameter equals the optimum on unit-weight instances") {
  for (std::uint64_t seed = 3; seed <= 90; seed += 3) {
    Graph g = test::random_graph(seed);
    auto lambda = brute_lambda_all(g);
    for (int k = 1; k <= std::min(5, g.n()); ++k) CHECK(brute_min_diameter_ksubtree(g, k, 10, 5).diameter == lambda[k - 1]);
  }
}
