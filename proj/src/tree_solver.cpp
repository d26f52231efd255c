#include "ckoc/tree_solver.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

namespace ckoc {

std::vector<EdgePoint> critical_points(const Graph& g, const RootedTree& rt, const Rational& lambda) {
  const int n = g.n();
  std::vector<EdgePoint> out(n);
  std::vector<int> path;
  const EdgePoint root = vertex_point(g, rt.root);
  for (int v : rt.preorder) {
    while (!path.empty() && path.back() != rt.parent[v]) path.pop_back();
    path.push_back(v);
    const Rational& w = g.weight(v);
    if (w * rt.depth[v] <= lambda) {
      out[v] = root;
      continue;
    }
    Rational target = rt.depth[v] - lambda / w;
    auto it = std::upper_bound(path.begin(), path.end(), target,
                               [&](const Rational& t, int y) { return t < rt.depth[y]; });
    int y = *(it - 1);
    if (rt.depth[y] == target) {
      out[v] = vertex_point(g, y);
      continue;
    }
    int z = *it;
    const int e = rt.parent_edge[z];
    const Edge& ed = g.edge(e);
    Rational from_z = rt.depth[z] - target;
    out[v] = EdgePoint{e, ed.u == z ? from_z : ed.length - from_z};
  }
  return out;
}

TreeFeasibility::TreeFeasibility(const Graph& g) : g_(g), oracle_(g, 0), index_(build_tree_index(g)) {}

FeasibilityResult TreeFeasibility::test(int k, const Rational& lambda) const {
  FeasibilityResult res;
  if (lambda.sign() < 0) return res;
  CoverageArrays ca = build_coverage_arrays(index_, lambda, k);
  auto points = critical_points(g_, index_.rooted, lambda);
  for (const EdgePoint& x : points) {
    if (!query_at_least_k(g_, index_, ca, x, k)) continue;
    auto covered = *query_count(g_, index_, ca, x, true).reported;
    std::vector<Rational> d(g_.n());
    for (int v : covered) d[v] = oracle_.point_distance(v, x);
    std::sort(covered.begin(), covered.end(), [&](int a, int b) { return d[a] != d[b] ? d[a] < d[b] : a < b; });
    covered.resize(k);
    std::sort(covered.begin(), covered.end());
    res.feasible = true;
    res.witness = Witness{canonical(g_, x), std::move(covered)};
    return res;
  }
  return res;
}

FeasibilityResult is_feasible_tree(const Graph& g, int k, const Rational& lambda) {
  return TreeFeasibility(g).test(k, lambda);
}

std::vector<CentroidPart> centroid_decomposition(const Graph& g) {
  const int n = g.n();
  std::vector<CentroidPart> parts;
  std::vector<char> removed(n, 0);
  std::vector<int> parent(n, -1), size(n, 0), comp;
  std::vector<int> pending{0};
  while (!pending.empty()) {
    int start = pending.back();
    pending.pop_back();
    comp.assign(1, start);
    parent[start] = -1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      int v = comp[i];
      for (const Adjacent& a : g.adj(v)) {
        if (removed[a.vertex] || a.vertex == parent[v]) continue;
        parent[a.vertex] = v;
        comp.push_back(a.vertex);
      }
    }
    const int total = static_cast<int>(comp.size());
    for (int v : comp) size[v] = 1;
    for (auto it = comp.rbegin(); it != comp.rend(); ++it)
      if (parent[*it] >= 0) size[parent[*it]] += size[*it];
    int centroid = -1;
    for (int v : comp) {
      int worst = total - size[v];
      for (const Adjacent& a : g.adj(v))
        if (!removed[a.vertex] && a.vertex != parent[v]) worst = std::max(worst, size[a.vertex]);
      if (2 * worst <= total && (centroid < 0 || v < centroid)) centroid = v;
    }

    CentroidPart part;
    part.centroid = centroid;
    part.members.push_back(centroid);
    part.branch.push_back(-1);
    removed[centroid] = 1;
    std::vector<int> nbrs;
    for (const Adjacent& a : g.adj(centroid))
      if (!removed[a.vertex]) nbrs.push_back(a.vertex);
    std::sort(nbrs.begin(), nbrs.end());
    for (int b = 0; b < static_cast<int>(nbrs.size()); ++b) {
      std::vector<int> queue{nbrs[b]};
      parent[nbrs[b]] = centroid;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        int v = queue[i];
        part.members.push_back(v);
        part.branch.push_back(b);
        for (const Adjacent& a : g.adj(v)) {
          if (removed[a.vertex] || a.vertex == parent[v]) continue;
          parent[a.vertex] = v;
          queue.push_back(a.vertex);
        }
      }
      pending.push_back(nbrs[b]);
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

LineSet centroid_lines(const Graph& g, const TreeDistanceOracle& oracle) {
  LineSet lines;
  for (const CentroidPart& part : centroid_decomposition(g)) {
    for (int v : part.members) {
      const Rational& w = g.weight(v);
      Rational wd = w * oracle.distance(part.centroid, v);
      lines.push_back(Line::sloped(w, wd, v));
      lines.push_back(Line::sloped(-w, wd, v));
    }
  }
  return lines;
}

Solution solve_weighted_tree(const Graph& g, int k, SearchStrategy strategy) {
  if (k < 1 || k > g.n()) throw std::invalid_argument("k out of range");
  if (!g.is_tree()) throw std::invalid_argument("graph is not a tree");
  if (k == 1) return {Rational(0), vertex_point(g, 0), {0}};
  TreeFeasibility feas(g);
  auto lines = centroid_lines(g, feas.distances());
  auto ans = lowest_feasible_vertex(
      lines, [&](const Rational& lam) { return feas.test(k, lam).feasible; }, strategy);
  auto res = feas.test(k, ans.v1.y);
  if (!res.feasible || !res.witness) throw std::logic_error("feasibility changed at the optimum");
  return {ans.v1.y, res.witness->point, res.witness->vertices};
}

namespace {

std::int64_t half(std::int64_t v) { return v / 2; }
Rational half(const Rational& v) { return v / 2; }

// Unit-weight tree search over pairwise distances. Distances are carried as
// T: scaled int64 when every depth fits, Rational otherwise.
template <class T>
class UnitTreeSearch {
 public:
  UnitTreeSearch(const Graph& g, const TreeDistanceOracle& oracle, std::vector<T> depth, std::vector<T> length)
      : g_(g), oracle_(oracle), rt_(oracle.rooted()), n_(g.n()), depth_(std::move(depth)), len_(std::move(length)) {
    index_vertices();
    index_parts();
  }

  // Smallest candidate 2r with a ball of radius r holding k vertices.
  T optimal_diameter(int k, std::uint64_t seed) {
    std::vector<T> from_root(n_);
    for (int v = 0; v < n_; ++v) from_root[v] = dist(0, v);
    std::nth_element(from_root.begin(), from_root.begin() + (k - 1), from_root.end());
    T hi = from_root[k - 1] + from_root[k - 1];
    std::optional<T> lo;
    std::mt19937_64 rng(seed);
    const std::uint64_t enumerate_below = std::max<std::uint64_t>(4 * static_cast<std::uint64_t>(n_), 4096);
    auto feasible = [&](const T& c) { return decide(half(c), k).has_value(); };
    for (;;) {
      std::uint64_t total = count_between(lo, hi);
      if (total == 0) return hi;
      std::vector<std::uint64_t> wanted;
      if (total <= enumerate_below) {
        wanted.resize(total);
        std::iota(wanted.begin(), wanted.end(), std::uint64_t{0});
      } else {
        std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
        for (int i = 0; i < 31; ++i) wanted.push_back(pick(rng));
        std::sort(wanted.begin(), wanted.end());
        wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
      }
      std::vector<T> vals = pick_between(lo, hi, wanted);
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      std::size_t a = 0, b = vals.size();
      while (a < b) {
        std::size_t mid = (a + b) / 2;
        if (feasible(vals[mid])) b = mid;
        else a = mid + 1;
      }
      if (a < vals.size()) hi = vals[a];
      if (a > 0) lo = vals[a - 1];
      if (total <= enumerate_below) return hi;
    }
  }

  struct Center {
    int child = -1;  // -1 for a vertex point
    int vertex = -1;
    T up{};          // distance from child
  };

  // Test points for radius r; returns the first (by vertex id) whose ball
  // holds at least k vertices.
  std::optional<Center> decide(const T& r, int k) {
    std::vector<Center> centers(n_);
    std::vector<int> path;
    for (int v : rt_.preorder) {
      while (!path.empty() && path.back() != rt_.parent[v]) path.pop_back();
      path.push_back(v);
      if (depth_[v] <= r) {
        centers[v] = Center{-1, rt_.root, T{}};
        continue;
      }
      T target = depth_[v] - r;
      auto it = std::upper_bound(path.begin(), path.end(), target,
                                 [&](const T& t, int y) { return t < depth_[y]; });
      int y = *(it - 1);
      if (depth_[y] == target) centers[v] = Center{-1, y, T{}};
      else centers[v] = Center{*it, -1, depth_[*it] - target};
    }

    std::vector<std::int64_t> count(n_, 0);
    struct Query {
      T limit;
      int owner;
      int sign;
      int vertex;
    };
    std::vector<Query> queries;
    for (int v = 0; v < n_; ++v) {
      const Center& c = centers[v];
      if (c.child < 0) {
        count[v] += ball(c.vertex, r);
        continue;
      }
      const int p = rt_.parent[c.child];
      const T& l = len_[c.child];
      count[v] += ball(p, r - l + c.up);
      queries.push_back({r - c.up + depth_[c.child], v, +1, c.child});
      queries.push_back({r - l - l + c.up + depth_[c.child], v, -1, c.child});
    }
    std::sort(queries.begin(), queries.end(), [](const Query& a, const Query& b) { return a.limit < b.limit; });
    std::vector<int> fenwick(n_ + 1, 0);
    std::size_t next = 0;
    for (const Query& q : queries) {
      while (next < by_depth_.size() && depth_[by_depth_[next]] <= q.limit) {
        for (int i = tin_[by_depth_[next]] + 1; i <= n_; i += i & -i) ++fenwick[i];
        ++next;
      }
      auto prefix = [&](int i) {
        int s = 0;
        for (; i > 0; i -= i & -i) s += fenwick[i];
        return s;
      };
      count[q.owner] += q.sign * (prefix(tout_[q.vertex] + 1) - prefix(tin_[q.vertex]));
    }
    for (int v = 0; v < n_; ++v)
      if (count[v] >= k) return centers[v];
    return std::nullopt;
  }

  T dist(int a, int b) const { return depth_[a] + depth_[b] - depth_[oracle_.lca(a, b)] * 2; }

 private:
  struct Ancestor {
    int part;
    int branch;
    T dist;
  };

  void index_vertices() {
    tin_.assign(n_, 0);
    tout_.assign(n_, 0);
    std::vector<int> size(n_, 1);
    for (int i = n_ - 1; i >= 0; --i) {
      int v = rt_.preorder[i];
      tin_[v] = i;
      if (rt_.parent[v] >= 0) size[rt_.parent[v]] += size[v];
    }
    for (int v = 0; v < n_; ++v) tout_[v] = tin_[v] + size[v] - 1;
    by_depth_.resize(n_);
    std::iota(by_depth_.begin(), by_depth_.end(), 0);
    std::sort(by_depth_.begin(), by_depth_.end(), [&](int a, int b) { return depth_[a] < depth_[b]; });
  }

  void index_parts() {
    auto parts = centroid_decomposition(g_);
    anc_.assign(n_, {});
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const CentroidPart& part = parts[p];
      std::vector<T> all;
      std::vector<std::vector<T>> branches;
      for (std::size_t i = 0; i < part.members.size(); ++i) {
        int v = part.members[i];
        int b = part.branch[i];
        T d = dist(part.centroid, v);
        all.push_back(d);
        if (b >= 0) {
          if (static_cast<int>(branches.size()) <= b) branches.resize(b + 1);
          branches[b].push_back(d);
        }
        anc_[v].push_back({static_cast<int>(p), b, d});
      }
      std::sort(all.begin(), all.end());
      for (auto& br : branches) std::sort(br.begin(), br.end());
      all_.push_back(std::move(all));
      branches_.push_back(std::move(branches));
    }
  }

  static std::int64_t at_most(const std::vector<T>& a, const T& s) {
    return std::upper_bound(a.begin(), a.end(), s) - a.begin();
  }

  std::int64_t ball(int p, const T& s) const {
    std::int64_t c = 0;
    for (const Ancestor& a : anc_[p]) {
      T rest = s - a.dist;
      if (rest < T{}) continue;
      c += at_most(all_[a.part], rest);
      if (a.branch >= 0) c -= at_most(branches_[a.part][a.branch], rest);
    }
    return c;
  }

  // Pairs i < j of one sorted array with a[i] + a[j] inside (lo, hi).
  static std::uint64_t pairs_between(const std::vector<T>& a, const std::optional<T>& lo, const T& hi) {
    auto below = [&](auto pred) {
      std::uint64_t c = 0;
      std::size_t j = a.size();
      for (std::size_t i = 0; i < a.size(); ++i) {
        while (j > 0 && !pred(a[i] + a[j - 1])) --j;
        if (j <= i + 1) break;
        c += j - i - 1;
      }
      return c;
    };
    std::uint64_t under_hi = below([&](const T& s) { return s < hi; });
    std::uint64_t upto_lo = lo ? below([&](const T& s) { return s <= *lo; }) : 0;
    return under_hi - upto_lo;
  }

  std::uint64_t count_between(const std::optional<T>& lo, const T& hi) const {
    std::uint64_t total = 0;
    for (const auto& a : all_) total += pairs_between(a, lo, hi);
    return total;
  }

  // Values of the given ranks (sorted) in the enumeration of count_between.
  std::vector<T> pick_between(const std::optional<T>& lo, const T& hi, const std::vector<std::uint64_t>& ranks) const {
    std::vector<T> out;
    std::uint64_t base = 0;
    std::size_t r = 0;
    for (const auto& a : all_) {
      if (r >= ranks.size()) break;
      const std::size_t s = a.size();
      // For each i, partners j > i lie in [first, last).
      std::size_t last = s, first = s;
      for (std::size_t i = 0; i < s && r < ranks.size(); ++i) {
        while (last > 0 && !(a[i] + a[last - 1] < hi)) --last;
        if (lo) {
          while (first > 0 && *lo < a[i] + a[first - 1]) --first;
        } else {
          first = 0;
        }
        std::size_t from = std::max(first, i + 1);
        if (last <= from) continue;
        std::uint64_t here = last - from;
        while (r < ranks.size() && ranks[r] < base + here) {
          out.push_back(a[i] + a[from + (ranks[r] - base)]);
          ++r;
        }
        base += here;
      }
    }
    return out;
  }

  const Graph& g_;
  const TreeDistanceOracle& oracle_;
  const RootedTree& rt_;
  int n_;
  std::vector<T> depth_;
  std::vector<T> len_;  // length of the edge above each vertex
  std::vector<int> tin_, tout_, by_depth_;
  std::vector<std::vector<Ancestor>> anc_;
  std::vector<std::vector<T>> all_;
  std::vector<std::vector<std::vector<T>>> branches_;
};

// Solution for a ball center given in tree coordinates.
template <class T>
Solution finish_unit(const Graph& g, const TreeDistanceOracle& oracle, UnitTreeSearch<T>& search, const T& diameter,
                     int k, const std::function<Rational(const T&)>& to_rational, const Rational& weight) {
  const RootedTree& rt = oracle.rooted();
  auto center = search.decide(half(diameter), k);
  if (!center) throw std::logic_error("optimal radius is infeasible");
  EdgePoint x;
  if (center->child < 0) {
    x = vertex_point(g, center->vertex);
  } else {
    const int e = rt.parent_edge[center->child];
    Rational up = to_rational(center->up);
    x = EdgePoint{e, g.edge(e).u == center->child ? up : g.edge(e).length - up};
  }
  std::vector<int> ids(g.n());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<Rational> d(g.n());
  for (int v = 0; v < g.n(); ++v) d[v] = oracle.point_distance(v, x);
  auto by_dist = [&](int a, int b) { return d[a] != d[b] ? d[a] < d[b] : a < b; };
  std::sort(ids.begin(), ids.end(), by_dist);
  ids.resize(k);

  // Recentre on the midpoint of a longest path among the chosen vertices.
  auto farthest = [&](int from) {
    int best = from;
    for (int v : ids)
      if (search.dist(from, v) > search.dist(from, best)) best = v;
    return best;
  };
  int a = farthest(ids.front());
  int b = farthest(a);
  const Rational span = to_rational(search.dist(a, b));
  const Rational mid = span / 2;
  const int top = oracle.lca(a, b);
  int low = oracle.distance(a, top) >= mid ? a : b;
  Rational climb = low == a ? mid : span - mid;
  // Walk up from `low` until the remaining climb fits in one edge.
  int v = low;
  while (climb.sign() > 0 && g.edge(rt.parent_edge[v]).length <= climb) {
    climb -= g.edge(rt.parent_edge[v]).length;
    v = rt.parent[v];
  }
  EdgePoint c;
  if (climb.sign() == 0) {
    c = vertex_point(g, v);
  } else {
    const int e = rt.parent_edge[v];
    c = EdgePoint{e, g.edge(e).u == v ? climb : g.edge(e).length - climb};
  }
  c = canonical(g, c);
  for (int u = 0; u < g.n(); ++u) d[u] = oracle.point_distance(u, c);
  ids.resize(g.n());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), by_dist);
  ids.resize(k);
  std::sort(ids.begin(), ids.end());
  return Solution{weight * mid, c, ids};
}

}  // namespace

Solution solve_unweighted_tree(const Graph& g, int k) {
  if (k < 1 || k > g.n()) throw std::invalid_argument("k out of range");
  if (!g.uniform_weights()) throw std::invalid_argument("vertex weights are not uniform");
  TreeDistanceOracle oracle(g, 0);
  if (k == 1) return {Rational(0), vertex_point(g, 0), {0}};
  const RootedTree& rt = oracle.rooted();
  const Rational weight = g.weight(0);

  mpz_class scale = 1;
  for (const Edge& e : g.edges()) {
    mpq_class q = e.length.to_mpq();
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
  }
  scale *= 2;
  mpq_class total = 0;
  for (const Edge& e : g.edges()) total += e.length.to_mpq();
  const bool fits = mpq_class(total * scale) < mpq_class(mpz_class(1) << 60) && scale.fits_slong_p();

  std::vector<int> above(g.n(), -1);
  for (int v = 0; v < g.n(); ++v)
    if (rt.parent_edge[v] >= 0) above[v] = rt.parent_edge[v];

  if (fits) {
    const std::int64_t s = scale.get_si();
    auto to_int = [&](const Rational& r) {
      mpq_class q = r.to_mpq() * s;
      return static_cast<std::int64_t>(mpz_class(q.get_num() / q.get_den()).get_si());
    };
    std::vector<std::int64_t> depth(g.n()), len(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) {
      depth[v] = to_int(rt.depth[v]);
      if (above[v] >= 0) len[v] = to_int(g.edge(above[v]).length);
    }
    UnitTreeSearch<std::int64_t> search(g, oracle, std::move(depth), std::move(len));
    std::int64_t best = search.optimal_diameter(k, 1);
    return finish_unit<std::int64_t>(
        g, oracle, search, best, k, [&](const std::int64_t& v) { return Rational(v, s); }, weight);
  }
  std::vector<Rational> len(g.n(), Rational(0));
  for (int v = 0; v < g.n(); ++v)
    if (above[v] >= 0) len[v] = g.edge(above[v]).length;
  UnitTreeSearch<Rational> search(g, oracle, rt.depth, std::move(len));
  Rational best = search.optimal_diameter(k, 1);
  return finish_unit<Rational>(
      g, oracle, search, best, k, [](const Rational& v) { return v; }, weight);
}

}  // namespace ckoc
