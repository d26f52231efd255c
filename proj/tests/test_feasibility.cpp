#include <doctest.h>

#include "ckoc/arrangement.hpp"
#include "ckoc/feasibility.hpp"
#include "ckoc/oracle.hpp"
#include "support.hpp"

using namespace ckoc;

TEST_CASE("predecessor structure on fixtures") {
  Graph p = test::path3().graph;
  DistanceMatrix dp = all_pairs_distances(p);
  auto ps = build_predecessor_structure(p, dp, vertex_point(p, 0));
  CHECK(ps.dummy == -1);
  CHECK(ps.pred(1) == std::vector<int>{0});
  CHECK(ps.pred(2) == std::vector<int>{1});
  CHECK(ps.succ(0) == std::vector<int>{1});
  CHECK(ps.succ(1) == std::vector<int>{2});

  auto mid = build_predecessor_structure(p, dp, EdgePoint{*p.find_edge(0, 1), Rational(1, 2)});
  REQUIRE(mid.dummy >= 0);
  CHECK(mid.pred(0) == std::vector<int>{mid.dummy});
  CHECK(mid.pred(1) == std::vector<int>{mid.dummy});
  CHECK(mid.pred(2) == std::vector<int>{1});

  Graph c = test::cycle4().graph;
  DistanceMatrix dc = all_pairs_distances(c);
  auto pc = build_predecessor_structure(c, dc, vertex_point(c, 0));
  CHECK(pc.pred(2) == std::vector<int>{1, 3});
}

TEST_CASE("removing a set takes its orphaned descendants") {
  Graph p = test::path3().graph;
  DistanceMatrix dp = all_pairs_distances(p);
  auto ps = build_predecessor_structure(p, dp, vertex_point(p, 0));
  CHECK(remove_set_and_descendants(ps, {1}) == std::vector<int>{2});
  CHECK(ps.residual_vertices() == std::vector<int>{0});

  Graph c = test::cycle4().graph;
  DistanceMatrix dc = all_pairs_distances(c);
  auto one = build_predecessor_structure(c, dc, vertex_point(c, 0));
  CHECK(remove_set_and_descendants(one, {1}).empty());
  auto both = build_predecessor_structure(c, dc, vertex_point(c, 0));
  CHECK(remove_set_and_descendants(both, {1, 3}) == std::vector<int>{2});
}

TEST_CASE("coverage profile examples") {
  Graph p = test::path3().graph;
  DistanceMatrix dp = all_pairs_distances(p);
  int e = *p.find_edge(0, 1);
  CoverageProfile half = coverage_profile(p, dp, e, Rational(1, 2));
  CHECK(half.value_at(Rational(1, 2)) == 2);
  CHECK(half.value_at(Rational(1, 4)) <= 1);
  CHECK(half.value_at(Rational(3, 4)) <= 1);
  CHECK(half.value_at(Rational(0)) == 1);
  CHECK(half.value_at(Rational(1)) == 1);
  CoverageProfile one = coverage_profile(p, dp, e, Rational(1));
  CHECK(one.value_at(Rational(0)) == 2);
  CHECK(one.value_at(Rational(1)) == 3);
  CHECK(one.value_at(Rational(1, 3)) == 2);

  Graph w = test::wedge2().graph;
  DistanceMatrix dw = all_pairs_distances(w);
  CoverageProfile pw = coverage_profile(w, dw, 0, Rational(4));
  // 2t <= 4 and 6 - t <= 4 hold together only at t = 2.
  for (int t = 0; t <= 6; ++t) CHECK(pw.value_at(Rational(t)) == (t == 2 ? 2 : 1));
  CHECK(pw.value_at(Rational(19, 10)) == 1);
  CHECK(pw.max_value() == 2);
}

TEST_CASE("feasibility examples") {
  Graph p = test::path3().graph;
  DistanceMatrix dp = all_pairs_distances(p);
  auto yes = is_feasible_graph(p, dp, 2, Rational(1, 2));
  REQUIRE(yes.feasible);
  CHECK(yes.witness->point.t == Rational(1, 2));
  CHECK_FALSE(is_feasible_graph(p, dp, 2, Rational(499, 1000)).feasible);
  Graph w = test::wedge2().graph;
  DistanceMatrix dw = all_pairs_distances(w);
  CHECK(is_feasible_graph(w, dw, 2, Rational(4)).feasible);
  CHECK_FALSE(is_feasible_graph(w, dw, 2, Rational(39, 10)).feasible);
}

TEST_CASE("coverage profile matches the definition on random graphs") {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    Graph g = test::random_graph(seed);
    DistanceMatrix dm = all_pairs_distances(g);
    GraphFeasibility feas(g, dm);
    std::mt19937_64 rng(seed);
    Rational lambda(std::uniform_int_distribution<int>(0, 24)(rng), 4);
    for (int e = 0; e < g.m(); ++e) {
      CoverageProfile prof = feas.profile(e, lambda);
      for (const Rational& t : oracle::probe_offsets(g, dm, e, lambda))
        CHECK(prof.value_at(t) == oracle::brute_coverage_count(g, dm, EdgePoint{e, t}, lambda));
    }
  }
}

TEST_CASE("feasibility is monotone in lambda and witnesses validate") {
  for (std::uint64_t seed = 400; seed < 430; ++seed) {
    Graph g = test::random_graph(seed);
    DistanceMatrix dm = all_pairs_distances(g);
    GraphFeasibility feas(g, dm);
    auto cands = oracle::candidate_set(g, dm);
    for (int k = 1; k <= g.n(); ++k) {
      bool seen = false;
      for (std::size_t i = 0; i < cands.size(); i += 3) {
        auto r = feas.test(k, cands[i]);
        if (seen) CHECK(r.feasible);
        seen = seen || r.feasible;
        if (r.feasible) CHECK(test::witness_valid(g, dm, *r.witness, k, cands[i]));
      }
    }
  }
}

TEST_CASE("closest_k keeps the nearest light vertices") {
  Graph p = test::path5().graph;
  DistanceMatrix dm = all_pairs_distances(p);
  auto got = closest_k(p, dm, vertex_point(p, 2), {0, 1, 2, 3, 4}, 3);
  CHECK(got == std::vector<int>{1, 2, 3});
}
