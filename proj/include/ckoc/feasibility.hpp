#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ckoc/graph.hpp"

namespace ckoc {

// Shortest-path DAG toward a point. Node n is the dummy vertex standing for
// an interior point; vertex points use the vertex itself as the root.
struct ShortestPathDag {
  int root = 0;
  int node_count = 0;
  std::vector<Rational> dist;           // distance from the point
  std::vector<std::vector<int>> pred;   // sorted
  std::vector<std::vector<int>> succ;   // sorted
};

std::shared_ptr<const ShortestPathDag> build_shortest_path_dag(const Graph& g, const DistanceMatrix& dm,
                                                               const EdgePoint& x);

struct PredecessorStructure {
  EdgePoint source;
  int dummy = -1;  // node id of the dummy vertex, -1 for vertex points
  std::shared_ptr<const ShortestPathDag> dag;
  std::vector<int> live_pred;
  std::vector<char> removed;

  int node_count() const { return dag->node_count; }
  const std::vector<int>& pred(int v) const { return dag->pred[v]; }
  const std::vector<int>& succ(int v) const { return dag->succ[v]; }
  // Remaining original vertices (the dummy is never listed).
  std::vector<int> residual_vertices() const;
};

PredecessorStructure build_predecessor_structure(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x);
PredecessorStructure fresh_state(std::shared_ptr<const ShortestPathDag> dag, const EdgePoint& source, int n);

// Removes S and every vertex all of whose shortest paths to the source pass
// through S. Returns the descendants in discovery order.
std::vector<int> remove_set_and_descendants(PredecessorStructure& ps, const std::vector<int>& S);

struct ProfileBreakpoint {
  Rational t;
  int left_open = 0;  // value on the open interval ending at t
  int at_point = 0;   // value at t
};

// Piecewise-constant light-vertex count along one edge. The first
// breakpoint is t = 0 (its left_open repeats at_point), the last is t = l(e).
struct CoverageProfile {
  int edge = 0;
  std::vector<ProfileBreakpoint> breakpoints;

  int value_at(const Rational& t) const;
  int max_value() const;
};

struct Witness {
  EdgePoint point;
  std::vector<int> vertices;  // sorted ids, exactly k of them
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<Witness> witness;
};

// Per-graph state reused across λ values: shortest-path DAGs from every
// vertex and the semicircular offsets of every (edge, vertex) pair.
class GraphFeasibility {
 public:
  GraphFeasibility(const Graph& g, const DistanceMatrix& dm);

  CoverageProfile profile(int e, const Rational& lambda) const;
  FeasibilityResult test(int k, const Rational& lambda) const;

  // Light vertices of x under λ and their distances to x.
  std::vector<int> light_vertices(const EdgePoint& x, const Rational& lambda) const;

  const Graph& graph() const { return g_; }
  const DistanceMatrix& distances() const { return dm_; }

  struct SideSweep {
    std::vector<Rational> turning;  // ascending unique turning offsets
    std::vector<int> before;        // count alive on (turning[j-1], turning[j]]
    std::vector<Rational> leave;    // last offset at which each vertex is still light
    std::vector<char> never;        // heavy at the endpoint itself
  };
  // Sweep from one endpoint; offsets are measured from that endpoint.
  SideSweep sweep(int e, bool from_r, const Rational& lambda) const;

 private:
  const Graph& g_;
  const DistanceMatrix& dm_;
  std::vector<std::shared_ptr<const ShortestPathDag>> from_vertex_;
  std::vector<std::vector<Rational>> semicircle_;  // [edge][vertex], offset from r
};

CoverageProfile coverage_profile(const Graph& g, const DistanceMatrix& dm, int e, const Rational& lambda);
FeasibilityResult is_feasible_graph(const Graph& g, const DistanceMatrix& dm, int k, const Rational& lambda);

// The k vertices of `light` closest to x (ties by id), returned sorted by id.
std::vector<int> closest_k(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x,
                           std::vector<int> light, int k);

}  // namespace ckoc
