#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ckoc/rational.hpp"

namespace ckoc {

// Vertices are 0-based internally; the text format and JSON output use 1..n.
struct Edge {
  int u;  // smaller endpoint
  int v;  // larger endpoint
  Rational length;
};

struct Adjacent {
  int vertex;
  int edge;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : weights_(n, Rational(1)), adj_(n) {}

  int n() const { return static_cast<int>(weights_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }

  const Rational& weight(int v) const { return weights_[v]; }
  void set_weight(int v, Rational w);

  // Returns the new edge id. Rejects self-loops, parallel edges and
  // nonpositive lengths.
  int add_edge(int a, int b, Rational length);

  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Adjacent>& adj(int v) const { return adj_[v]; }
  std::optional<int> find_edge(int a, int b) const;

  bool connected() const;
  bool is_tree() const { return connected() && m() == n() - 1; }
  bool unit_weights() const;
  bool uniform_weights() const;

 private:
  std::vector<Rational> weights_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Adjacent>> adj_;
};

struct Instance {
  Graph graph;
  int k = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Instance parse_instance(std::string_view text);
std::string write_instance(const Graph& g, int k);

// n x n exact shortest-path distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n) {}
  int n() const { return n_; }
  const Rational& operator()(int a, int b) const { return d_[idx(a, b)]; }
  Rational& at(int a, int b) { return d_[idx(a, b)]; }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }
  int n_ = 0;
  std::vector<Rational> d_;
};

std::vector<Rational> single_source_distances(const Graph& g, int source);
DistanceMatrix all_pairs_distances(const Graph& g);

// Point on edge e at offset t from the smaller endpoint.
struct EdgePoint {
  int edge = 0;
  Rational t;
};

// Offset 0 and offset l(e) are vertex points; a vertex point is represented
// on its smallest incident edge id.
EdgePoint canonical(const Graph& g, const EdgePoint& p);
EdgePoint vertex_point(const Graph& g, int v);
std::optional<int> point_vertex(const Graph& g, const EdgePoint& p);
bool same_point(const Graph& g, const EdgePoint& a, const EdgePoint& b);
Rational point_distance(const Graph& g, const DistanceMatrix& dm, int v, const EdgePoint& p);

enum class Shape { Increasing, Decreasing, Peak };

// Weighted distance D(v, x) along one edge.
struct EdgeDistanceFn {
  int vertex = 0;
  int edge = 0;
  Shape shape = Shape::Peak;
  // Offset of the semicircular point, when v has one on this edge (always for
  // Peak; at an endpoint for a monotone shape when v keeps a shortest path to
  // that endpoint avoiding the opposite one).
  std::optional<Rational> peak;
  Rational at_r;  // w_v * d(v, r)
  Rational at_s;  // w_v * d(v, s)

  Rational weight;
  Rational dist_r;  // d(v, r)
  Rational dist_s;  // d(v, s)
  Rational length;

  Rational eval(const Rational& t) const;
};

// All functions of one edge, indexed by vertex.
std::vector<EdgeDistanceFn> edge_distance_fns(const Graph& g, const DistanceMatrix& dm, int e);
EdgeDistanceFn edge_distance_fn(const Graph& g, const DistanceMatrix& dm, int v, int e);

struct VertexPartition {
  std::vector<int> neutral;
  std::vector<int> by_r;
  std::vector<int> by_s;
};

VertexPartition classify_at_point(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x);

}  // namespace ckoc
