#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ckoc/arrangement.hpp"
#include "ckoc/feasibility.hpp"
#include "ckoc/tree.hpp"

namespace ckoc {

// One point per vertex on its path to the root, at weighted distance
// min(lambda, w_v * d(v, root)).
std::vector<EdgePoint> critical_points(const Graph& g, const RootedTree& rt, const Rational& lambda);

class TreeFeasibility {
 public:
  explicit TreeFeasibility(const Graph& g);

  FeasibilityResult test(int k, const Rational& lambda) const;
  const TreeIndex& index() const { return index_; }
  const TreeDistanceOracle& distances() const { return oracle_; }

 private:
  const Graph& g_;
  TreeDistanceOracle oracle_;
  TreeIndex index_;
};

FeasibilityResult is_feasible_tree(const Graph& g, int k, const Rational& lambda);

struct CentroidPart {
  int centroid = -1;
  std::vector<int> members;  // includes the centroid
  std::vector<int> branch;   // per member: index of its subtree around the centroid, -1 for the centroid
};

// Recursive centroid decomposition; ties go to the smaller vertex id.
std::vector<CentroidPart> centroid_decomposition(const Graph& g);

LineSet centroid_lines(const Graph& g, const TreeDistanceOracle& oracle);

Solution solve_weighted_tree(const Graph& g, int k, SearchStrategy strategy = SearchStrategy::Explicit);
// Unit or uniform vertex weights only.
Solution solve_unweighted_tree(const Graph& g, int k);

// k-th smallest (1-based) element of the union of sorted views.
template <class View>
auto kth_smallest_sorted_arrays(const std::vector<View>& views, std::size_t k) {
  std::size_t total = 0;
  for (const auto& v : views) total += v.size();
  if (k == 0 || k > total) throw std::invalid_argument("k exceeds the total size");
  std::vector<std::size_t> offset(views.size(), 0);
  while (true) {
    std::size_t active = 0;
    for (std::size_t i = 0; i < views.size(); ++i)
      if (offset[i] < views[i].size()) ++active;
    std::size_t step = std::max<std::size_t>(1, k / active);
    std::size_t pick = views.size(), take = 0;
    for (std::size_t i = 0; i < views.size(); ++i) {
      if (offset[i] >= views[i].size()) continue;
      std::size_t c = std::min(step, views[i].size() - offset[i]);
      if (pick == views.size() || views[i][offset[i] + c - 1] < views[pick][offset[pick] + take - 1]) {
        pick = i;
        take = c;
      }
    }
    if (take >= k) return views[pick][offset[pick] + k - 1];
    offset[pick] += take;
    k -= take;
  }
}

}  // namespace ckoc
