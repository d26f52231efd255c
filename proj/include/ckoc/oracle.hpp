#pragma once

#include <utility>
#include <vector>

#include "ckoc/graph.hpp"
#include "ckoc/klevel.hpp"

namespace ckoc::oracle {

// Floyd-Warshall; kept apart from the Dijkstra used by the solvers.
DistanceMatrix floyd_warshall(const Graph& g);

// Survivors after removing heavy vertices and everything whose shortest
// paths to x all pass through a removed vertex.
int brute_coverage_count(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x, const Rational& lambda);
std::vector<int> brute_covered(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x, const Rational& lambda);

// Offsets on edge e where the coverage count may change (endpoints,
// semicircular points, points at weighted distance lambda), plus midpoints.
std::vector<Rational> probe_offsets(const Graph& g, const DistanceMatrix& dm, int e, const Rational& lambda);

bool brute_feasible(const Graph& g, const DistanceMatrix& dm, int k, const Rational& lambda);
int brute_max_coverage(const Graph& g, const DistanceMatrix& dm, const Rational& lambda);
bool brute_feasible(const Graph& g, int k, const Rational& lambda);

// Sorted distinct ordinates of pairwise crossings of the weighted distance
// functions on each edge, their endpoint values, every weighted distance at
// every semicircular point, and 0.
std::vector<Rational> candidate_set(const Graph& g, const DistanceMatrix& dm);

inline constexpr int kDefaultCap = 14;

Rational brute_lambda(const Graph& g, int k, int cap = kDefaultCap);
// Entry k - 1 is the optimum for k.
std::vector<Rational> brute_lambda_all(const Graph& g, int cap = kDefaultCap);

Rational brute_kth_level(const ChainSet& cs, int k, const Rational& x);

struct DiameterSubtree {
  Rational diameter;
  std::vector<int> vertices;
};

// Minimum weighted diameter over k-vertex trees made of graph edges, with
// distances measured inside the tree.
DiameterSubtree brute_min_diameter_ksubtree(const Graph& g, int k, int max_n = 12, int max_k = 6);

}  // namespace ckoc::oracle
