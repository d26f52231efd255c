#pragma once

#include <climits>
#include <optional>
#include <vector>

#include "ckoc/graph.hpp"

namespace ckoc {

struct RootedTree {
  int root = 0;
  std::vector<int> parent;       // -1 at the root
  std::vector<int> parent_edge;  // -1 at the root
  std::vector<Rational> depth;
  std::vector<int> preorder;
  std::vector<std::vector<int>> children;  // ascending ids
};

// Throws std::invalid_argument unless g is a tree.
RootedTree root_tree(const Graph& g, int root = 0);

class TreeDistanceOracle {
 public:
  explicit TreeDistanceOracle(const Graph& g, int root = 0);

  const RootedTree& rooted() const { return rt_; }
  int lca(int a, int b) const;
  Rational distance(int a, int b) const;
  Rational point_distance(int v, const EdgePoint& x) const;

 private:
  const Graph* g_;
  RootedTree rt_;
  std::vector<int> first_;
  std::vector<int> level_;
  std::vector<std::vector<int>> table_;  // sparse table over the Euler tour
  std::vector<int> euler_;
};

// Point of the binary tree: on the edge from `child` to its parent, at
// distance `up` from `child`.
struct TreePoint {
  int child = 0;
  Rational up;
};

struct BinaryTransform {
  int original_count = 0;
  int root = 0;
  std::vector<int> origin;  // original vertex of every node
  std::vector<char> marked;
  std::vector<Rational> weight;
  std::vector<int> parent;
  std::vector<Rational> parent_length;
  std::vector<Rational> depth;
  std::vector<std::vector<int>> children;  // at most two
  std::vector<int> edge_child;             // original edge -> node below it

  int size() const { return static_cast<int>(origin.size()); }
};

BinaryTransform binarize(const Graph& g, const RootedTree& rt);
TreePoint map_point(const Graph& g, const RootedTree& rt, const BinaryTransform& bt, const EdgePoint& x);

enum class GammaKind { Leaf, OneChild, TwoChild };

struct GammaNode {
  GammaKind kind = GammaKind::Leaf;
  int parent = -1;
  int lower = -1;  // two-child: the lower part of the spine segment
  int upper = -1;  // two-child: the upper part
  int hang = -1;   // one-child: root of the hanging spine's search tree
  int top = -1;    // topmost spine vertex of the segment
  int bottom = -1;
  int spine = -1;
  int size = 0;    // nodes of the binary tree inside this part
};

struct SpineTree {
  std::vector<GammaNode> nodes;
  int root = -1;
  std::vector<int> leaf_of;  // binary-tree node -> its leaf or one-child node
  std::vector<std::vector<int>> spines;  // top to bottom

  int height() const;
};

SpineTree spine_decompose(const BinaryTransform& bt);

// Step function of the distance from an outside point: tuple i holds for
// distances in (x[i+1], x[i]]. x[0] stands for +infinity.
struct CoverageArray {
  std::vector<Rational> x;
  std::vector<int> y;  // covered nodes
  std::vector<int> z;  // covered marked nodes
  std::vector<int> q_start;  // tuple i adds q[q_start[i] .. q_start[i+1])
  std::vector<int> q;

  int size() const { return static_cast<int>(y.size()); }
  int find(const Rational& dist) const;  // last tuple with x >= dist
};

struct NodeCoverage {
  CoverageArray top;
  CoverageArray bottom;
  std::optional<Rational> full_top;  // largest distance covering the whole segment
  std::optional<Rational> full_bottom;
  int top_index = 0;  // tuple where the whole segment becomes covered, 0 if never
  int bottom_index = 0;
  std::vector<int> top_steps;  // tuples where z grows, cut after reaching the limit
  std::vector<int> bottom_steps;
};

struct CoverageArrays {
  Rational lambda;
  int limit = INT_MAX;
  std::vector<NodeCoverage> nodes;
};

struct TreeIndex {
  RootedTree rooted;
  BinaryTransform binary;
  SpineTree spines;
};

TreeIndex build_tree_index(const Graph& g);

CoverageArrays build_coverage_arrays(const TreeIndex& ti, const Rational& lambda, int limit = INT_MAX);

struct CoverageAnswer {
  int count = 0;
  std::optional<std::vector<int>> reported;  // sorted original ids
};

CoverageAnswer query_count(const Graph& g, const TreeIndex& ti, const CoverageArrays& ca, const EdgePoint& x,
                           bool report = false);
bool query_at_least_k(const Graph& g, const TreeIndex& ti, const CoverageArrays& ca, const EdgePoint& x, int k);

}  // namespace ckoc
