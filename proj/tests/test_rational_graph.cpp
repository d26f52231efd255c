#include <doctest.h>

#include <sstream>

#include "ckoc/generator.hpp"
#include "ckoc/graph.hpp"
#include "ckoc/oracle.hpp"
#include "support.hpp"

using namespace ckoc;

TEST_CASE("rational arithmetic stays exact past the int64 range") {
  Rational big(std::int64_t{1} << 62);
  Rational sq = big * big;
  CHECK_FALSE(sq.is_small());
  CHECK(sq / big == big);
  CHECK((sq / big).is_small());
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6).str() == "1/2");
  CHECK(Rational(5).str() == "5/1");
  CHECK(Rational::parse("7/14") == Rational(1, 2));
  CHECK(Rational::parse("-1.25") == Rational(-5, 4));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(min(Rational(1, 3), Rational(1, 2)) == Rational(1, 3));
}

TEST_CASE("rational comparison agrees with mpq on random values") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> num(-(std::int64_t{1} << 40), std::int64_t{1} << 40);
  std::uniform_int_distribution<std::int64_t> den(1, std::int64_t{1} << 30);
  for (int i = 0; i < 2000; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    mpq_class qa = a.to_mpq(), qb = b.to_mpq();
    CHECK(((a < b) == (qa < qb)));
    CHECK((a * b).to_mpq() == qa * qb);
    CHECK((a + b).to_mpq() == qa + qb);
    CHECK((a - b).to_mpq() == qa - qb);
  }
}

TEST_CASE("instance parsing") {
  Instance p = test::path3();
  CHECK(p.graph.n() == 3);
  CHECK(p.graph.m() == 2);
  CHECK(p.k == 2);
  Instance w = test::wedge2();
  CHECK(w.graph.weight(0) == Rational(2));
  CHECK(w.graph.weight(1) == Rational(1));
  CHECK(w.graph.edge(0).length == Rational(6));
  CHECK_THROWS_AS(parse_instance("p ckoc 2 1 1 0\ne 1 1 5\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("p ckoc 3 1 1 0\ne 1 2 5\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("p ckoc 2 1 3 0\ne 1 2 5\n"), ParseError);
}

TEST_CASE("instance text round-trips") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Graph g = test::random_graph(seed);
    Instance back = parse_instance(write_instance(g, 1));
    REQUIRE(back.graph.n() == g.n());
    REQUIRE(back.graph.m() == g.m());
    for (int v = 0; v < g.n(); ++v) CHECK(back.graph.weight(v) == g.weight(v));
    for (int e = 0; e < g.m(); ++e) {
      CHECK(back.graph.edge(e).u == g.edge(e).u);
      CHECK(back.graph.edge(e).v == g.edge(e).v);
      CHECK(back.graph.edge(e).length == g.edge(e).length);
    }
  }
}

TEST_CASE("distances on fixtures") {
  Graph p = test::path3().graph;
  CHECK(all_pairs_distances(p)(0, 2) == Rational(2));
  Graph t = test::triangle().graph;
  DistanceMatrix dt = all_pairs_distances(t);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(dt(a, b) == Rational(a == b ? 0 : 1));
  Graph c = test::cycle4().graph;
  CHECK(all_pairs_distances(c)(0, 2) == Rational(2));
  CHECK(all_pairs_distances(c)(1, 3) == Rational(2));
}

TEST_CASE("dijkstra matches floyd-warshall") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Graph g = test::random_graph(seed);
    DistanceMatrix a = all_pairs_distances(g), b = oracle::floyd_warshall(g);
    for (int u = 0; u < g.n(); ++u)
      for (int v = 0; v < g.n(); ++v) CHECK(a(u, v) == b(u, v));
  }
}

TEST_CASE("edge distance functions") {
  Graph t = test::triangle().graph;
  DistanceMatrix dt = all_pairs_distances(t);
  auto f = edge_distance_fn(t, dt, 2, *t.find_edge(0, 1));
  CHECK(f.shape == Shape::Peak);
  REQUIRE(f.peak);
  CHECK(*f.peak == Rational(1, 2));
  Graph p = test::path3().graph;
  DistanceMatrix dp = all_pairs_distances(p);
  auto g = edge_distance_fn(p, dp, 0, *p.find_edge(1, 2));
  CHECK(g.shape == Shape::Increasing);
  CHECK(g.eval(Rational(0)) == Rational(1));
  CHECK(g.eval(Rational(1)) == Rational(2));
  Graph c = test::cycle4().graph;
  DistanceMatrix dc = all_pairs_distances(c);
  auto h = edge_distance_fn(c, dc, 2, *c.find_edge(0, 1));
  CHECK(h.eval(Rational(0)) == Rational(2));
  CHECK(h.eval(Rational(1)) == Rational(1));
}

TEST_CASE("vertex partition at a point") {
  Graph t = test::triangle().graph;
  DistanceMatrix dt = all_pairs_distances(t);
  auto part = classify_at_point(t, dt, EdgePoint{*t.find_edge(0, 1), Rational(1, 2)});
  CHECK(part.neutral == std::vector<int>{2});
  CHECK(part.by_r == std::vector<int>{0});
  CHECK(part.by_s == std::vector<int>{1});
  Graph p = test::path3().graph;
  DistanceMatrix dp = all_pairs_distances(p);
  auto pp = classify_at_point(p, dp, EdgePoint{*p.find_edge(0, 1), Rational(1, 2)});
  CHECK(pp.neutral.empty());
  CHECK(pp.by_r == std::vector<int>{0});
  CHECK(pp.by_s == std::vector<int>{1, 2});
  Graph c = test::cycle4().graph;
  DistanceMatrix dc = all_pairs_distances(c);
  auto pc = classify_at_point(c, dc, EdgePoint{*c.find_edge(0, 1), Rational(0)});
  CHECK(pc.neutral == std::vector<int>{2});
}

TEST_CASE("canonical points") {
  Graph p = test::path3().graph;
  int e12 = *p.find_edge(1, 2);
  EdgePoint a = canonical(p, EdgePoint{e12, Rational(0)});
  EdgePoint b = canonical(p, EdgePoint{*p.find_edge(0, 1), Rational(1)});
  CHECK(same_point(p, a, b));
  CHECK(point_vertex(p, a) == 1);
  CHECK_FALSE(point_vertex(p, EdgePoint{e12, Rational(1, 2)}));
}

TEST_CASE("generator") {
  GeneratorOptions opt;
  opt.seed = 1;
  opt.n = 5;
  opt.tree_only = true;
  std::string a = generate_instance(opt, 2), b = generate_instance(opt, 2);
  CHECK(a == b);
  Graph t = generate_graph(opt);
  CHECK(t.is_tree());
  CHECK(t.n() == 5);
  opt.tree_only = false;
  opt.density = 1.0;
  Graph full = generate_graph(opt);
  CHECK(full.m() == 10);
  CHECK(full.connected());
  opt.n = 1;
  CHECK_THROWS(generate_graph(opt));
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Graph g = test::random_graph(seed);
    CHECK(g.connected());
    for (const Edge& e : g.edges()) {
      CHECK(e.length.sign() > 0);
      CHECK(e.length.to_mpq().get_den() <= 16);
    }
  }
}
