#include <doctest.h>

#include "ckoc/arrangement.hpp"
#include "ckoc/feasibility.hpp"
#include "ckoc/oracle.hpp"
#include "support.hpp"

using namespace ckoc;

namespace {

std::uint64_t naive_count(const LineSet& lines, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto p = intersect(lines[i], lines[j]);
      if (!p) continue;
      if (lo && !(p->y > *lo)) continue;
      if (hi && !(p->y <= *hi)) continue;
      ++c;
    }
  return c;
}

}  // namespace

TEST_CASE("candidate lines of the wedge") {
  Graph w = test::wedge2().graph;
  DistanceMatrix dm = all_pairs_distances(w);
  LineSet lines = candidate_lines(w, dm);
  int vertical = 0, sloped = 0;
  for (const Line& l : lines) {
    if (l.vertical) {
      ++vertical;
      CHECK((l.x == Rational(0) || l.x == Rational(6)));
    } else {
      ++sloped;
      bool rising = l.slope == Rational(2) && l.intercept == Rational(0);
      bool falling = l.slope == Rational(-1) && l.intercept == Rational(6);
      CHECK((rising || falling));
    }
  }
  CHECK(vertical == 2);
  CHECK(sloped == 2);
}

TEST_CASE("a peak contributes both lines") {
  Graph t = test::triangle().graph;
  DistanceMatrix dm = all_pairs_distances(t);
  int e = *t.find_edge(0, 1);
  int hits = 0;
  for (const Line& l : candidate_lines(t, dm))
    if (!l.vertical && l.vertex == 2 && l.edge == e)
      hits += (l.slope == Rational(1) && l.intercept == Rational(1)) ||
              (l.slope == Rational(-1) && l.intercept == Rational(2));
  CHECK(hits == 2);
}

TEST_CASE("lowest feasible vertex with a constructed oracle") {
  LineSet lines{Line::sloped(1, 0), Line::sloped(-1, 2), Line::at(0), Line::at(2)};
  for (auto s : {SearchStrategy::Explicit, SearchStrategy::Counting}) {
    auto ans = lowest_feasible_vertex(lines, [](const Rational& y) { return y >= Rational(1); }, s);
    CHECK(ans.v1.x == Rational(1));
    CHECK(ans.v1.y == Rational(1));
    REQUIRE(ans.v2);
    CHECK(ans.v2->y == Rational(0));
  }
}

TEST_CASE("lowest feasible vertex on the wedge") {
  Graph w = test::wedge2().graph;
  DistanceMatrix dm = all_pairs_distances(w);
  GraphFeasibility feas(w, dm);
  LineSet lines;
  for (const Line& l : candidate_lines(w, dm))
    if (l.edge == 0 || l.vertical) lines.push_back(l);
  auto ans = lowest_feasible_vertex(lines, [&](const Rational& y) { return feas.test(2, y).feasible; });
  CHECK(ans.v1.y == Rational(4));
  CHECK(ans.v1.x == Rational(2));
}

TEST_CASE("intersection counting matches enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> small(-6, 6);
  auto nonzero = [&](std::mt19937_64& r) {
    int v = small(r);
    return v == 0 ? 1 : v;
  };
  for (int round = 0; round < 60; ++round) {
    LineSet lines;
    int n = std::uniform_int_distribution<int>(2, 25)(rng);
    for (int i = 0; i < n; ++i) {
      if (i % 7 == 0) lines.push_back(Line::at(Rational(small(rng), 2)));
      else lines.push_back(Line::sloped(Rational(nonzero(rng), 2), Rational(small(rng), 3)));
    }
    // Crossings are counted between distinct lines.
    LineSet distinct;
    for (const Line& l : lines) {
      bool dup = false;
      for (const Line& d : distinct)
        dup = dup || (l.vertical ? d.vertical && d.x == l.x
                                 : !d.vertical && d.slope == l.slope && d.intercept == l.intercept);
      if (!dup) distinct.push_back(l);
    }
    std::optional<Rational> lo, hi;
    if (round % 3 != 0) lo = Rational(small(rng), 2);
    if (round % 4 != 0) hi = Rational(small(rng) + 6, 2);
    if (lo && hi && *hi <= *lo) hi = *lo + Rational(1, 2);
    CHECK(count_intersections(lines, lo, hi) == naive_count(distinct, lo, hi));
    CHECK(all_intersections(lines).size() == naive_count(lines, std::nullopt, std::nullopt));
  }
}

TEST_CASE("weighted graph solver examples") {
  Solution p = solve_weighted_graph(test::path3().graph, 2);
  CHECK(p.lambda_star == Rational(1, 2));
  CHECK(p.center.t == Rational(1, 2));
  Solution w = solve_weighted_graph(test::wedge2().graph, 2);
  CHECK(w.lambda_star == Rational(4));
  CHECK(w.center.t == Rational(2));
  Graph c = test::cycle4().graph;
  Solution s = solve_weighted_graph(c, 3);
  CHECK(s.lambda_star == Rational(1));
  REQUIRE(point_vertex(c, s.center));
  CHECK(s.subtree.size() == 3);
}

TEST_CASE("both search strategies agree with the oracle") {
  for (std::uint64_t seed = 700; seed < 730; ++seed) {
    Graph g = test::random_graph(seed);
    auto want = oracle::brute_lambda_all(g);
    DistanceMatrix dm = all_pairs_distances(g);
    for (int k = 1; k <= g.n(); ++k) {
      Solution a = solve_weighted_graph(g, k, SearchStrategy::Explicit);
      Solution b = solve_weighted_graph(g, k, SearchStrategy::Counting);
      CHECK(a.lambda_star == want[k - 1]);
      CHECK(b.lambda_star == want[k - 1]);
      CHECK(test::witness_valid(g, dm, Witness{a.center, a.subtree}, k, a.lambda_star));
    }
  }
}

TEST_CASE("optimum at a coverage spike on a semicircular point") {
  // Here the optimum is one vertex's distance at another vertex's
  // semicircular point, not a crossing of two distance lines.
  Graph g = test::random_graph(104);
  Rational want = oracle::brute_lambda(g, 8);
  CHECK(want < Rational(60420, 7861));
  CHECK(solve_weighted_graph(g, 8, SearchStrategy::Explicit).lambda_star == want);
  CHECK(solve_weighted_graph(g, 8, SearchStrategy::Counting).lambda_star == want);
}
