#include "ckoc/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace ckoc::oracle {

DistanceMatrix floyd_warshall(const Graph& g) {
  const int n = g.n();
  std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
  for (int v = 0; v < n; ++v) d[v][v] = Rational(0);
  for (const Edge& e : g.edges()) {
    if (!d[e.u][e.v] || e.length < *d[e.u][e.v]) d[e.u][e.v] = d[e.v][e.u] = e.length;
  }
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a) {
      if (!d[a][m]) continue;
      for (int b = 0; b < n; ++b) {
        if (!d[m][b]) continue;
        Rational via = *d[a][m] + *d[m][b];
        if (!d[a][b] || via < *d[a][b]) d[a][b] = via;
      }
    }
  DistanceMatrix out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!d[a][b]) throw std::invalid_argument("graph is disconnected");
      out.at(a, b) = *d[a][b];
    }
  return out;
}

std::vector<int> brute_covered(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x, const Rational& lambda) {
  const int n = g.n();
  const Edge& ex = g.edge(x.edge);
  const Rational& l = ex.length;
  const bool at_u = x.t.sign() == 0;
  const bool at_v = x.t == l;
  std::vector<Rational> dx(n);
  for (int v = 0; v < n; ++v) dx[v] = min(dm(v, ex.u) + x.t, dm(v, ex.v) + l - x.t);
  std::vector<char> gone(n, 0);
  for (int v = 0; v < n; ++v) gone[v] = g.weight(v) * dx[v] > lambda;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      bool supported = false;
      if (at_u || at_v) {
        supported = v == (at_u ? ex.u : ex.v);
      } else {
        supported = (v == ex.u && dx[v] == x.t) || (v == ex.v && dx[v] == l - x.t);
      }
      for (const Adjacent& a : g.adj(v)) {
        if (supported) break;
        if (!at_u && !at_v && a.edge == x.edge) continue;
        if (!gone[a.vertex] && dx[a.vertex] + g.edge(a.edge).length == dx[v]) supported = true;
      }
      if (!supported) {
        gone[v] = 1;
        changed = true;
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (!gone[v]) out.push_back(v);
  return out;
}

int brute_coverage_count(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x, const Rational& lambda) {
  return static_cast<int>(brute_covered(g, dm, x, lambda).size());
}

namespace {

struct Piece {
  Rational slope;
  Rational at_zero;
};

// Both linear pieces of every weighted distance function on edge e.
std::vector<Piece> pieces(const Graph& g, const DistanceMatrix& dm, int e) {
  const Edge& ed = g.edge(e);
  std::vector<Piece> out;
  for (int v = 0; v < g.n(); ++v) {
    const Rational& w = g.weight(v);
    out.push_back({w, w * dm(v, ed.u)});
    out.push_back({-w, w * (dm(v, ed.v) + ed.length)});
  }
  return out;
}

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<Rational> probe_offsets(const Graph& g, const DistanceMatrix& dm, int e, const Rational& lambda) {
  const Edge& ed = g.edge(e);
  const Rational& l = ed.length;
  std::vector<Rational> ts{Rational(0), l};
  auto keep = [&](const Rational& t) {
    if (t.sign() >= 0 && t <= l) ts.push_back(t);
  };
  for (int v = 0; v < g.n(); ++v) {
    const Rational& w = g.weight(v);
    const Rational da = dm(v, ed.u), db = dm(v, ed.v);
    keep((db + l - da) / 2);
    keep(lambda / w - da);
    keep(db + l - lambda / w);
  }
  sort_unique(ts);
  const std::size_t base = ts.size();
  for (std::size_t i = 0; i + 1 < base; ++i) ts.push_back((ts[i] + ts[i + 1]) / 2);
  sort_unique(ts);
  return ts;
}

bool brute_feasible(const Graph& g, const DistanceMatrix& dm, int k, const Rational& lambda) {
  if (lambda.sign() < 0) return false;
  for (int e = 0; e < g.m(); ++e)
    for (const Rational& t : probe_offsets(g, dm, e, lambda))
      if (brute_coverage_count(g, dm, EdgePoint{e, t}, lambda) >= k) return true;
  return false;
}

int brute_max_coverage(const Graph& g, const DistanceMatrix& dm, const Rational& lambda) {
  if (lambda.sign() < 0) return 0;
  int best = 0;
  for (int e = 0; e < g.m(); ++e)
    for (const Rational& t : probe_offsets(g, dm, e, lambda))
      best = std::max(best, brute_coverage_count(g, dm, EdgePoint{e, t}, lambda));
  return best;
}

bool brute_feasible(const Graph& g, int k, const Rational& lambda) {
  return brute_feasible(g, floyd_warshall(g), k, lambda);
}

std::vector<Rational> candidate_set(const Graph& g, const DistanceMatrix& dm) {
  std::vector<Rational> out{Rational(0)};
  for (int e = 0; e < g.m(); ++e) {
    const Rational& l = g.edge(e).length;
    auto ps = pieces(g, dm, e);
    for (const Piece& p : ps) {
      out.push_back(p.at_zero);
      out.push_back(p.at_zero + p.slope * l);
    }
    // Every weighted distance at every semicircular point of the edge.
    const Edge& ed = g.edge(e);
    for (int u = 0; u < g.n(); ++u) {
      Rational t = (dm(u, ed.v) + l - dm(u, ed.u)) / 2;
      if (t.sign() < 0 || t > l) continue;
      for (int v = 0; v < g.n(); ++v)
        out.push_back(g.weight(v) * min(dm(v, ed.u) + t, dm(v, ed.v) + l - t));
    }
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        if (ps[i].slope == ps[j].slope) continue;
        Rational t = (ps[j].at_zero - ps[i].at_zero) / (ps[i].slope - ps[j].slope);
        if (t.sign() < 0 || t > l) continue;
        out.push_back(ps[i].at_zero + ps[i].slope * t);
      }
  }
  sort_unique(out);
  return out;
}

namespace {

std::size_t first_feasible(const Graph& g, const DistanceMatrix& dm, int k, const std::vector<Rational>& cands,
                           std::size_t lo) {
  std::size_t hi = cands.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (brute_feasible(g, dm, k, cands[mid])) hi = mid;
    else lo = mid + 1;
  }
  if (lo == cands.size()) throw std::logic_error("no candidate value is feasible");
  return lo;
}

void check_cap(const Graph& g, int cap) {
  if (g.n() > cap) throw std::invalid_argument("instance exceeds the brute-force size cap");
}

}  // namespace

Rational brute_lambda(const Graph& g, int k, int cap) {
  check_cap(g, cap);
  if (k < 1 || k > g.n()) throw std::invalid_argument("k out of range");
  DistanceMatrix dm = floyd_warshall(g);
  auto cands = candidate_set(g, dm);
  return cands[first_feasible(g, dm, k, cands, 0)];
}

std::vector<Rational> brute_lambda_all(const Graph& g, int cap) {
  check_cap(g, cap);
  DistanceMatrix dm = floyd_warshall(g);
  auto cands = candidate_set(g, dm);
  const int n = g.n();
  std::vector<std::size_t> answer(n + 1, cands.size());
  // Each probe settles every k at once: k is feasible at a value exactly
  // when the best coverage there reaches k.
  std::function<void(std::size_t, std::size_t, int, int)> split = [&](std::size_t lo, std::size_t hi, int klo,
                                                                      int khi) {
    if (klo > khi) return;
    if (lo == hi) {
      for (int k = klo; k <= khi; ++k) answer[k] = lo;
      return;
    }
    std::size_t mid = (lo + hi) / 2;
    int reach = brute_max_coverage(g, dm, cands[mid]);
    split(lo, mid, klo, std::min(khi, reach));
    split(mid + 1, hi, std::max(klo, reach + 1), khi);
  };
  split(0, cands.size(), 1, n);
  std::vector<Rational> out;
  for (int k = 1; k <= n; ++k) {
    if (answer[k] == cands.size()) throw std::logic_error("no candidate value is feasible");
    out.push_back(cands[answer[k]]);
  }
  return out;
}

Rational brute_kth_level(const ChainSet& cs, int k, const Rational& x) {
  if (x.sign() < 0 || x > cs.length) throw std::invalid_argument("abscissa outside the edge");
  if (k < 1 || k > static_cast<int>(cs.chains.size())) throw std::invalid_argument("k out of range");
  std::vector<Rational> vals;
  for (const Chain& c : cs.chains) vals.push_back(min(c.left + x, c.right + cs.length - x));
  std::sort(vals.begin(), vals.end());
  return vals[k - 1];
}

DiameterSubtree brute_min_diameter_ksubtree(const Graph& g, int k, int max_n, int max_k) {
  const int n = g.n();
  if (n > max_n || k > max_k) throw std::invalid_argument("instance exceeds the enumeration cap");
  if (k < 1 || k > n) throw std::invalid_argument("k out of range");
  if (k == 1) return {Rational(0), {0}};

  std::optional<DiameterSubtree> best;
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(chosen.size()) == k - 1) {
      std::vector<int> verts;
      for (int id : chosen) {
        verts.push_back(g.edge(id).u);
        verts.push_back(g.edge(id).v);
      }
      std::sort(verts.begin(), verts.end());
      verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
      if (static_cast<int>(verts.size()) != k) return;
      // k vertices and k - 1 edges: a tree exactly when connected.
      auto local = [&](int v) { return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()); };
      std::vector<std::vector<std::optional<Rational>>> d(k, std::vector<std::optional<Rational>>(k));
      for (int i = 0; i < k; ++i) d[i][i] = Rational(0);
      for (int id : chosen) {
        int a = local(g.edge(id).u), b = local(g.edge(id).v);
        d[a][b] = d[b][a] = g.edge(id).length;
      }
      for (int m = 0; m < k; ++m)
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b)
            if (d[a][m] && d[m][b] && (!d[a][b] || *d[a][m] + *d[m][b] < *d[a][b])) d[a][b] = *d[a][m] + *d[m][b];
      Rational worst(0);
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
          if (!d[a][b]) return;
          const Rational& wa = g.weight(verts[a]);
          const Rational& wb = g.weight(verts[b]);
          worst = max(worst, wa * wb * *d[a][b] / (wa + wb));
        }
      if (!best || worst < best->diameter || (worst == best->diameter && verts < best->vertices))
        best = DiameterSubtree{worst, verts};
      return;
    }
    for (int id = from; id < g.m(); ++id) {
      chosen.push_back(id);
      rec(id + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  if (!best) throw std::invalid_argument("graph has no k-vertex subtree");
  return *best;
}

}  // namespace ckoc::oracle
