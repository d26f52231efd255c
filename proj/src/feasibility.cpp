#include "ckoc/feasibility.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace ckoc {

std::shared_ptr<const ShortestPathDag> build_shortest_path_dag(const Graph& g, const DistanceMatrix& dm,
                                                               const EdgePoint& x0) {
  EdgePoint x = canonical(g, x0);
  auto dag = std::make_shared<ShortestPathDag>();
  const int n = g.n();
  auto vertex = point_vertex(g, x);
  dag->node_count = vertex ? n : n + 1;
  dag->root = vertex ? *vertex : n;
  dag->dist.resize(dag->node_count);
  dag->pred.assign(dag->node_count, {});
  dag->succ.assign(dag->node_count, {});
  for (int v = 0; v < n; ++v) dag->dist[v] = vertex ? dm(*vertex, v) : point_distance(g, dm, v, x);
  auto link = [&](int a, int b, const Rational& len) {
    if (dag->dist[a] + len == dag->dist[b]) {
      dag->pred[b].push_back(a);
      dag->succ[a].push_back(b);
    } else if (dag->dist[b] + len == dag->dist[a]) {
      dag->pred[a].push_back(b);
      dag->succ[b].push_back(a);
    }
  };
  for (int id = 0; id < g.m(); ++id) {
    if (!vertex && id == x.edge) continue;
    const Edge& e = g.edge(id);
    link(e.u, e.v, e.length);
  }
  if (!vertex) {
    const Edge& e = g.edge(x.edge);
    dag->dist[n] = 0;
    link(n, e.u, x.t);
    link(n, e.v, e.length - x.t);
  }
  for (auto& list : dag->pred) std::sort(list.begin(), list.end());
  for (auto& list : dag->succ) std::sort(list.begin(), list.end());
  return dag;
}

PredecessorStructure fresh_state(std::shared_ptr<const ShortestPathDag> dag, const EdgePoint& source, int n) {
  PredecessorStructure ps;
  ps.source = source;
  ps.dummy = dag->node_count > n ? n : -1;
  ps.live_pred.resize(dag->node_count);
  for (int v = 0; v < dag->node_count; ++v) ps.live_pred[v] = static_cast<int>(dag->pred[v].size());
  ps.removed.assign(dag->node_count, 0);
  ps.dag = std::move(dag);
  return ps;
}

PredecessorStructure build_predecessor_structure(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x) {
  return fresh_state(build_shortest_path_dag(g, dm, x), canonical(g, x), g.n());
}

std::vector<int> PredecessorStructure::residual_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < node_count(); ++v)
    if (!removed[v] && v != dummy) out.push_back(v);
  return out;
}

std::vector<int> remove_set_and_descendants(PredecessorStructure& ps, const std::vector<int>& S) {
  std::deque<int> queue;
  for (int v : S) {
    if (!ps.removed[v]) {
      ps.removed[v] = 1;
      queue.push_back(v);
    }
  }
  std::vector<int> found;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int c : ps.succ(v)) {
      if (ps.removed[c]) continue;
      if (--ps.live_pred[c] == 0) {
        ps.removed[c] = 1;
        found.push_back(c);
        queue.push_back(c);
      }
    }
  }
  return found;
}

int CoverageProfile::value_at(const Rational& t) const {
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t,
                             [](const ProfileBreakpoint& b, const Rational& x) { return b.t < x; });
  if (it == breakpoints.end()) throw std::out_of_range("offset beyond the edge");
  return it->t == t ? it->at_point : it->left_open;
}

int CoverageProfile::max_value() const {
  int best = 0;
  for (const auto& b : breakpoints) best = std::max({best, b.at_point, b.left_open});
  return best;
}

GraphFeasibility::GraphFeasibility(const Graph& g, const DistanceMatrix& dm) : g_(g), dm_(dm) {
  from_vertex_.resize(g.n());
  for (int v = 0; v < g.n(); ++v) from_vertex_[v] = build_shortest_path_dag(g, dm, vertex_point(g, v));
  semicircle_.resize(g.m());
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    semicircle_[e].resize(g.n());
    for (int v = 0; v < g.n(); ++v) semicircle_[e][v] = (dm(v, ed.v) + ed.length - dm(v, ed.u)) / 2;
  }
}

GraphFeasibility::SideSweep GraphFeasibility::sweep(int e, bool from_r, const Rational& lambda) const {
  const Edge& ed = g_.edge(e);
  const int a = from_r ? ed.u : ed.v;
  const int n = g_.n();
  SideSweep out;
  out.leave.assign(n, Rational(-1));
  out.never.assign(n, 0);
  std::vector<Rational> turn(n);
  for (int v = 0; v < n; ++v) {
    Rational reach = lambda / g_.weight(v) - dm_(v, a);
    Rational semi = from_r ? semicircle_[e][v] : ed.length - semicircle_[e][v];
    if (reach.sign() < 0) {
      turn[v] = -1;
      out.never[v] = 1;
    } else {
      turn[v] = min(semi, reach);
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return turn[x] < turn[y]; });
  PredecessorStructure ps = fresh_state(from_vertex_[a], vertex_point(g_, a), n);
  int alive = n;
  std::vector<int> group;
  for (std::size_t i = 0; i < order.size();) {
    const Rational& y = turn[order[i]];
    group.clear();
    std::size_t j = i;
    for (; j < order.size() && turn[order[j]] == y; ++j)
      if (!ps.removed[order[j]]) group.push_back(order[j]);
    out.turning.push_back(y);
    out.before.push_back(alive);
    auto found = remove_set_and_descendants(ps, group);
    for (int v : group) out.leave[v] = y;
    for (int v : found) out.leave[v] = y;
    alive -= static_cast<int>(group.size() + found.size());
    i = j;
  }
  return out;
}

namespace {

int side_value(const GraphFeasibility::SideSweep& s, const Rational& offset) {
  auto it = std::lower_bound(s.turning.begin(), s.turning.end(), offset);
  if (it == s.turning.end()) return 0;
  return s.before[it - s.turning.begin()];
}

}  // namespace

CoverageProfile GraphFeasibility::profile(int e, const Rational& lambda) const {
  const Edge& ed = g_.edge(e);
  const Rational& len = ed.length;
  SideSweep sr = sweep(e, true, lambda);
  SideSweep ss = sweep(e, false, lambda);

  // Vertices light from both sides at once; only possible at their own
  // semicircular point.
  std::vector<Rational> both;
  for (int v = 0; v < g_.n(); ++v) {
    const Rational& p = semicircle_[e][v];
    if (!sr.never[v] && !ss.never[v] && sr.leave[v] == p && ss.leave[v] == len - p) both.push_back(p);
  }
  std::sort(both.begin(), both.end());

  std::vector<Rational> ts{Rational(0), len};
  for (const auto& y : sr.turning)
    if (y.sign() >= 0 && y <= len) ts.push_back(y);
  for (const auto& y : ss.turning)
    if (y.sign() >= 0 && y <= len) ts.push_back(len - y);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  CoverageProfile prof;
  prof.edge = e;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Rational& t = ts[i];
    auto [lo, hi] = std::equal_range(both.begin(), both.end(), t);
    int at = side_value(sr, t) + side_value(ss, len - t) - static_cast<int>(hi - lo);
    int open = at;
    if (i > 0) {
      Rational mid = (ts[i - 1] + t) / 2;
      open = side_value(sr, mid) + side_value(ss, len - mid);
    }
    prof.breakpoints.push_back({t, open, at});
  }
  return prof;
}

std::vector<int> GraphFeasibility::light_vertices(const EdgePoint& x, const Rational& lambda) const {
  PredecessorStructure ps = build_predecessor_structure(g_, dm_, x);
  std::vector<int> heavy;
  for (int v = 0; v < g_.n(); ++v)
    if (g_.weight(v) * ps.dag->dist[v] > lambda) heavy.push_back(v);
  remove_set_and_descendants(ps, heavy);
  return ps.residual_vertices();
}

std::vector<int> closest_k(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x, std::vector<int> light,
                           int k) {
  std::vector<Rational> d(g.n());
  for (int v : light) d[v] = point_distance(g, dm, v, x);
  std::sort(light.begin(), light.end(), [&](int a, int b) { return d[a] != d[b] ? d[a] < d[b] : a < b; });
  if (static_cast<int>(light.size()) < k) throw std::logic_error("fewer light vertices than requested");
  light.resize(k);
  std::sort(light.begin(), light.end());
  return light;
}

FeasibilityResult GraphFeasibility::test(int k, const Rational& lambda) const {
  FeasibilityResult res;
  if (lambda.sign() < 0) return res;
  for (int e = 0; e < g_.m(); ++e) {
    CoverageProfile prof = profile(e, lambda);
    for (std::size_t i = 0; i < prof.breakpoints.size(); ++i) {
      const auto& b = prof.breakpoints[i];
      std::optional<Rational> t;
      if (i > 0 && b.left_open >= k && b.left_open > b.at_point) {
        t = (prof.breakpoints[i - 1].t + b.t) / 2;
      } else if (b.at_point >= k) {
        t = b.t;
      }
      if (!t) continue;
      EdgePoint x = canonical(g_, {e, *t});
      auto light = light_vertices(x, lambda);
      if (static_cast<int>(light.size()) < k) throw std::logic_error("coverage profile disagrees with witness");
      res.feasible = true;
      res.witness = Witness{x, closest_k(g_, dm_, x, std::move(light), k)};
      return res;
    }
  }
  return res;
}

CoverageProfile coverage_profile(const Graph& g, const DistanceMatrix& dm, int e, const Rational& lambda) {
  return GraphFeasibility(g, dm).profile(e, lambda);
}

FeasibilityResult is_feasible_graph(const Graph& g, const DistanceMatrix& dm, int k, const Rational& lambda) {
  return GraphFeasibility(g, dm).test(k, lambda);
}

}  // namespace ckoc
