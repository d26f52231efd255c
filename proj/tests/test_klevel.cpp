#include <doctest.h>

#include "ckoc/arrangement.hpp"
#include "ckoc/klevel.hpp"
#include "ckoc/oracle.hpp"
#include "support.hpp"

using namespace ckoc;

TEST_CASE("chains on the path") {
  Graph p = test::path3().graph;
  DistanceMatrix dm = all_pairs_distances(p);
  ChainSet cs = build_chains(p, dm, *p.find_edge(0, 1));
  REQUIRE(cs.chains.size() == 3);
  CHECK(cs.chains[0].shape == Shape::Increasing);
  CHECK(cs.chains[1].shape == Shape::Decreasing);
  CHECK(cs.chains[2].shape == Shape::Decreasing);
  CHECK(cs.chains[2].left == Rational(2));
  CHECK(cs.chains[2].right == Rational(1));
  Graph t = test::triangle().graph;
  ChainSet ct = build_chains(t, all_pairs_distances(t), *t.find_edge(0, 1));
  CHECK(ct.chains[2].shape == Shape::Peak);
  CHECK(ct.chains[2].apex == Rational(1, 2));
  CHECK_THROWS(build_chains(test::wedge2().graph, all_pairs_distances(test::wedge2().graph), 0));
}

TEST_CASE("two crossing segments") {
  ChainSet cs = make_chain_set(Rational(2), {{Rational(0), Rational(2)}, {Rational(2), Rational(0)}});
  LevelChain upper = kth_level(cs, 2);
  REQUIRE(upper.vertices.size() == 3);
  CHECK(upper.vertices[0].x == Rational(0));
  CHECK(upper.vertices[0].y == Rational(2));
  CHECK(upper.vertices[1].x == Rational(1));
  CHECK(upper.vertices[1].y == Rational(1));
  CHECK(upper.vertices[2].y == Rational(2));
  CHECK(upper.lowest().x == Rational(1));
  CHECK(upper.lowest().y == Rational(1));
  LevelChain lower = kth_level(cs, 1);
  CHECK(lower.lowest().x == Rational(0));
  CHECK(lower.lowest().y == Rational(0));
  CHECK(oracle::brute_kth_level(cs, 2, Rational(1)) == Rational(1));
  CHECK(oracle::brute_kth_level(cs, 1, Rational(0)) == Rational(0));
}

TEST_CASE("level of the path chains") {
  Graph p = test::path3().graph;
  ChainSet cs = build_chains(p, all_pairs_distances(p), *p.find_edge(0, 1));
  LevelChain level = kth_level(cs, 2);
  CHECK(level.lowest().x == Rational(1, 2));
  CHECK(level.lowest().y == Rational(1, 2));
  CHECK(oracle::brute_kth_level(cs, 2, Rational(1, 2)) == Rational(1, 2));
}

TEST_CASE("segment sequences group collinear pieces") {
  ChainSet cs = make_chain_set(Rational(4), {{Rational(0), Rational(4)}, {Rational(1), Rational(5)}, {Rational(3), Rational(1)}});
  SegmentSequences seq = build_segment_sequences(cs);
  for (std::size_t i = 1; i < seq.rising.size(); ++i) CHECK(seq.rising[i - 1].line > seq.rising[i].line);
  for (std::size_t i = 1; i < seq.falling.size(); ++i) CHECK(seq.falling[i - 1].line < seq.falling[i].line);
  std::size_t members = 0;
  for (const auto& s : seq.rising) members += s.members.size();
  CHECK(members >= 2);
}

TEST_CASE("level matches sorting on random chain sets") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 300; ++round) {
    Rational length(std::uniform_int_distribution<int>(1, 8)(rng), std::uniform_int_distribution<int>(1, 3)(rng));
    int n = std::uniform_int_distribution<int>(1, 12)(rng);
    std::vector<std::pair<Rational, Rational>> ends;
    for (int i = 0; i < n; ++i) {
      // A valid distance chain needs |left - right| <= length.
      Rational left(std::uniform_int_distribution<int>(0, 12)(rng), 2);
      Rational shift = length * Rational(std::uniform_int_distribution<int>(-4, 4)(rng), 4);
      Rational right = max(Rational(0), left + shift);
      ends.emplace_back(left, right);
    }
    ChainSet cs = make_chain_set(length, ends);
    int k = std::uniform_int_distribution<int>(1, n)(rng);
    LevelChain level = kth_level(cs, k);
    for (const PlanePoint& v : level.vertices) CHECK(oracle::brute_kth_level(cs, k, v.x) == v.y);
    for (int s = 0; s < 30; ++s) {
      Rational x = test::random_offset(rng, length);
      CHECK(level.value_at(x) == oracle::brute_kth_level(cs, k, x));
    }
  }
}

TEST_CASE("unweighted graph solver examples") {
  CHECK(solve_unweighted_graph(test::path3().graph, 2).lambda_star == Rational(1, 2));
  Graph c = test::cycle4().graph;
  Solution s = solve_unweighted_graph(c, 3);
  CHECK(s.lambda_star == Rational(1));
  CHECK(point_vertex(c, s.center));
  Graph star = test::star3().graph;
  Solution h = solve_unweighted_graph(star, 3);
  CHECK(h.lambda_star == Rational(1));
  CHECK(point_vertex(star, h.center) == 0);
  CHECK_THROWS(solve_unweighted_graph(test::wedge2().graph, 2));
}

TEST_CASE("uniform weights scale the optimum") {
  Graph p = test::path5().graph;
  Graph q = p;
  for (int v = 0; v < q.n(); ++v) q.set_weight(v, Rational(3));
  for (int k = 1; k <= 5; ++k)
    CHECK(solve_unweighted_graph(q, k).lambda_star == Rational(3) * solve_unweighted_graph(p, k).lambda_star);
}
