#pragma once

#include <random>
#include <string>
#include <vector>

#include "ckoc/feasibility.hpp"
#include "ckoc/generator.hpp"
#include "ckoc/graph.hpp"
#include "ckoc/oracle.hpp"

namespace ckoc::test {

inline Instance fixture(const std::string& text) { return parse_instance(text); }

inline Instance path3() { return fixture("p ckoc 3 2 2 0\ne 1 2 1\ne 2 3 1\n"); }
inline Instance path5() { return fixture("p ckoc 5 4 3 0\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\n"); }
inline Instance wedge2() { return fixture("p ckoc 2 1 2 1\nv 1 2\nv 2 1\ne 1 2 6\n"); }
inline Instance triangle() { return fixture("p ckoc 3 3 2 0\ne 1 2 1\ne 2 3 1\ne 1 3 1\n"); }
inline Instance cycle4() { return fixture("p ckoc 4 4 3 0\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 1 1\n"); }
// Hub is vertex 1.
inline Instance star3() { return fixture("p ckoc 4 3 3 0\ne 1 2 1\ne 1 3 1\ne 1 4 1\n"); }

// Seeded connected graph with n <= 10 and m <= 20; every third one has unit weights.
inline Graph random_graph(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  GeneratorOptions opt;
  opt.seed = seed;
  opt.n = std::uniform_int_distribution<int>(2, 10)(rng);
  const int pairs = opt.n * (opt.n - 1) / 2;
  const int top = std::min(20, pairs);
  opt.edges = std::uniform_int_distribution<int>(opt.n - 1, top)(rng);
  opt.weighted = seed % 3 != 0;
  return generate_graph(opt);
}

inline Graph random_tree(std::uint64_t seed, int n_min, int n_max, bool weighted) {
  std::mt19937_64 rng(seed * 104729 + 3);
  GeneratorOptions opt;
  opt.seed = seed;
  opt.n = std::uniform_int_distribution<int>(n_min, n_max)(rng);
  opt.tree_only = true;
  opt.weighted = weighted;
  return generate_graph(opt);
}

inline Rational random_offset(std::mt19937_64& rng, const Rational& length) {
  int den = std::uniform_int_distribution<int>(1, 64)(rng);
  int num = std::uniform_int_distribution<int>(0, den)(rng);
  return length * Rational(num, den);
}

// Checks the invariants of a feasibility witness by direct recomputation.
inline bool witness_valid(const Graph& g, const DistanceMatrix& dm, const Witness& w, int k, const Rational& lambda) {
  if (static_cast<int>(w.vertices.size()) != k) return false;
  if (w.point.edge < 0 || w.point.edge >= g.m()) return false;
  const Edge& ex = g.edge(w.point.edge);
  if (w.point.t.sign() < 0 || w.point.t > ex.length) return false;
  std::vector<Rational> dx(g.n());
  for (int v = 0; v < g.n(); ++v) dx[v] = min(dm(v, ex.u) + w.point.t, dm(v, ex.v) + ex.length - w.point.t);
  std::vector<char> in(g.n(), 0);
  for (int v : w.vertices) {
    if (v < 0 || v >= g.n() || in[v]) return false;
    in[v] = 1;
    if (g.weight(v) * dx[v] > lambda) return false;
  }
  // Every member other than the ones touching the point needs a shortest-path
  // predecessor inside the set.
  const bool interior = w.point.t.sign() > 0 && w.point.t < ex.length;
  for (int v : w.vertices) {
    bool ok = dx[v].sign() == 0 || (interior && ((v == ex.u && dx[v] == w.point.t) ||
                                                 (v == ex.v && dx[v] == ex.length - w.point.t)));
    for (const Adjacent& a : g.adj(v)) {
      if (ok) break;
      if (interior && a.edge == w.point.edge) continue;
      if (in[a.vertex] && dx[a.vertex] + g.edge(a.edge).length == dx[v]) ok = true;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace ckoc::test
