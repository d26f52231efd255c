#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ckoc/graph.hpp"
#include "ckoc/solution.hpp"

namespace ckoc {

struct Line {
  bool vertical = false;
  Rational slope;      // unused when vertical
  Rational intercept;  // unused when vertical
  Rational x;          // position when vertical
  int vertex = -1;     // -1 for the vertical lines through edge endpoints
  int edge = -1;

  static Line sloped(Rational a, Rational b, int vertex = -1, int edge = -1);
  static Line at(Rational x, int edge = -1);
};

using LineSet = std::vector<Line>;

struct PlanePoint {
  Rational x;
  Rational y;
};

struct ArrangementAnswer {
  PlanePoint v1;                 // lowest vertex with a feasible ordinate
  std::optional<PlanePoint> v2;  // highest vertex strictly below v1
};

enum class SearchStrategy { Explicit, Counting, Auto };

using LambdaOracle = std::function<bool(const Rational&)>;

LineSet candidate_lines(const Graph& g, const DistanceMatrix& dm);

std::optional<PlanePoint> intersect(const Line& a, const Line& b);

// Every pairwise intersection, sorted by (y, x) with duplicate ordinates kept.
std::vector<PlanePoint> all_intersections(const LineSet& lines);

// Lines whose pairwise intersection ordinate lies in (lo, hi]; a missing
// bound means unbounded on that side.
std::uint64_t count_intersections(const LineSet& lines, const std::optional<Rational>& lo,
                                  const std::optional<Rational>& hi);

ArrangementAnswer lowest_feasible_vertex(const LineSet& lines, const LambdaOracle& feasible,
                                         SearchStrategy strategy = SearchStrategy::Explicit,
                                         std::uint64_t seed = 1);

Solution solve_weighted_graph(const Graph& g, int k, SearchStrategy strategy = SearchStrategy::Auto);

}  // namespace ckoc
