#include <algorithm>
#include <functional>
#include <stdexcept>

#include "ckoc/tree.hpp"

namespace ckoc {

RootedTree root_tree(const Graph& g, int root) {
  if (!g.is_tree()) throw std::invalid_argument("graph is not a tree");
  const int n = g.n();
  RootedTree rt;
  rt.root = root;
  rt.parent.assign(n, -1);
  rt.parent_edge.assign(n, -1);
  rt.depth.assign(n, Rational(0));
  rt.children.assign(n, {});
  std::vector<int> stack{root};
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    rt.preorder.push_back(v);
    for (const Adjacent& a : g.adj(v)) {
      if (seen[a.vertex]) continue;
      seen[a.vertex] = 1;
      rt.parent[a.vertex] = v;
      rt.parent_edge[a.vertex] = a.edge;
      rt.depth[a.vertex] = rt.depth[v] + g.edge(a.edge).length;
      rt.children[v].push_back(a.vertex);
    }
    std::sort(rt.children[v].begin(), rt.children[v].end());
    for (auto it = rt.children[v].rbegin(); it != rt.children[v].rend(); ++it) stack.push_back(*it);
  }
  return rt;
}

TreeDistanceOracle::TreeDistanceOracle(const Graph& g, int root) : g_(&g), rt_(root_tree(g, root)) {
  const int n = g.n();
  first_.assign(n, -1);
  level_.assign(n, 0);
  for (int v : rt_.preorder)
    if (rt_.parent[v] >= 0) level_[v] = level_[rt_.parent[v]] + 1;
  // Iterative Euler tour: each vertex is written on entry and after each child.
  std::vector<std::pair<int, std::size_t>> stack{{rt_.root, 0}};
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (first_[v] < 0) first_[v] = static_cast<int>(euler_.size());
    euler_.push_back(v);
    if (i < rt_.children[v].size()) {
      int c = rt_.children[v][i++];
      stack.push_back({c, 0});
    } else {
      stack.pop_back();
    }
  }
  const int len = static_cast<int>(euler_.size());
  table_.push_back(euler_);
  for (int span = 1; 2 * span <= len; span *= 2) {
    const auto& prev = table_.back();
    std::vector<int> next(len - 2 * span + 1);
    for (int i = 0; i + 2 * span <= len; ++i) {
      int a = prev[i], b = prev[i + span];
      next[i] = level_[a] <= level_[b] ? a : b;
    }
    table_.push_back(std::move(next));
  }
}

int TreeDistanceOracle::lca(int a, int b) const {
  int l = first_[a], r = first_[b];
  if (l > r) std::swap(l, r);
  int span = r - l + 1;
  int j = 31 - __builtin_clz(static_cast<unsigned>(span));
  int x = table_[j][l], y = table_[j][r - (1 << j) + 1];
  return level_[x] <= level_[y] ? x : y;
}

Rational TreeDistanceOracle::distance(int a, int b) const {
  return rt_.depth[a] + rt_.depth[b] - rt_.depth[lca(a, b)] * 2;
}

Rational TreeDistanceOracle::point_distance(int v, const EdgePoint& x) const {
  const Edge& e = g_->edge(x.edge);
  return min(distance(v, e.u) + x.t, distance(v, e.v) + e.length - x.t);
}

BinaryTransform binarize(const Graph& g, const RootedTree& rt) {
  const int n = g.n();
  BinaryTransform bt;
  bt.original_count = n;
  bt.root = rt.root;
  bt.origin.resize(n);
  for (int v = 0; v < n; ++v) bt.origin[v] = v;
  bt.marked.assign(n, 1);
  bt.weight.resize(n);
  for (int v = 0; v < n; ++v) bt.weight[v] = g.weight(v);
  bt.parent.assign(n, -1);
  bt.parent_length.assign(n, Rational(0));
  bt.depth.assign(n, Rational(0));
  bt.children.assign(n, {});
  bt.edge_child.assign(g.m(), -1);

  auto attach = [&](int child, int par, const Rational& len) {
    bt.parent[child] = par;
    bt.parent_length[child] = len;
    bt.depth[child] = bt.depth[par] + len;
    bt.children[par].push_back(child);
  };
  auto copy_of = [&](int v) {
    int id = bt.size();
    bt.origin.push_back(v);
    bt.marked.push_back(0);
    bt.weight.push_back(g.weight(v));
    bt.parent.push_back(-1);
    bt.parent_length.emplace_back(0);
    bt.depth.emplace_back(0);
    bt.children.emplace_back();
    return id;
  };

  for (int v : rt.preorder) {
    const auto& kids = rt.children[v];
    for (int c : kids) bt.edge_child[rt.parent_edge[c]] = c;
    auto len = [&](int c) { return g.edge(rt.parent_edge[c]).length; };
    const int t = static_cast<int>(kids.size());
    if (t <= 2) {
      for (int c : kids) attach(c, v, len(c));
      continue;
    }
    int cur = v;
    for (int i = 0; i + 2 < t; ++i) {
      attach(kids[i], cur, len(kids[i]));
      int u = copy_of(v);
      attach(u, cur, Rational(0));
      cur = u;
    }
    attach(kids[t - 2], cur, len(kids[t - 2]));
    attach(kids[t - 1], cur, len(kids[t - 1]));
  }
  return bt;
}

TreePoint map_point(const Graph& g, const RootedTree& rt, const BinaryTransform& bt, const EdgePoint& x) {
  const Edge& e = g.edge(x.edge);
  int child = bt.edge_child[x.edge];
  Rational up = child == e.v ? e.length - x.t : x.t;
  if (up == e.length) return TreePoint{rt.parent[child], Rational(0)};
  return TreePoint{child, up};
}

int SpineTree::height() const {
  if (root < 0) return 0;
  int best = 0;
  std::vector<std::pair<int, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto [u, h] = stack.back();
    stack.pop_back();
    best = std::max(best, h);
    const GammaNode& nd = nodes[u];
    for (int c : {nd.lower, nd.upper, nd.hang})
      if (c >= 0) stack.push_back({c, h + 1});
  }
  return best;
}

SpineTree spine_decompose(const BinaryTransform& bt) {
  const int n = bt.size();
  std::vector<int> order{bt.root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : bt.children[order[i]]) order.push_back(c);
  std::vector<int> size(n, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (bt.parent[*it] >= 0) size[bt.parent[*it]] += size[*it];

  std::vector<int> heavy(n, -1), light(n, -1);
  for (int v = 0; v < n; ++v) {
    const auto& ch = bt.children[v];
    if (ch.empty()) continue;
    if (ch.size() == 1) {
      heavy[v] = ch[0];
      continue;
    }
    int a = ch[0], b = ch[1];
    bool a_heavy = size[a] > size[b] || (size[a] == size[b] && a < b);
    heavy[v] = a_heavy ? a : b;
    light[v] = a_heavy ? b : a;
  }

  SpineTree st;
  st.leaf_of.assign(n, -1);

  std::function<int(int)> build_spine;
  std::function<int(const std::vector<int>&, const std::vector<int>&, int, int, int)> build_range;

  build_range = [&](const std::vector<int>& sp, const std::vector<int>& prefix, int lo, int hi, int spine_id) {
    GammaNode nd;
    nd.top = sp[lo];
    nd.bottom = sp[hi];
    nd.spine = spine_id;
    nd.size = prefix[hi + 1] - prefix[lo];
    if (lo == hi) {
      int v = sp[lo];
      if (light[v] >= 0) {
        nd.kind = GammaKind::OneChild;
        nd.hang = build_spine(light[v]);
      }
      int id = static_cast<int>(st.nodes.size());
      st.nodes.push_back(nd);
      if (nd.hang >= 0) st.nodes[nd.hang].parent = id;
      st.leaf_of[v] = id;
      return id;
    }
    // Weighted split: upper part [lo, mid], lower part [mid + 1, hi].
    int total = prefix[hi + 1] - prefix[lo];
    int best_mid = lo, best_cost = INT_MAX;
    auto half = std::lower_bound(prefix.begin() + lo + 1, prefix.begin() + hi + 1, prefix[lo] + (total + 1) / 2);
    int guess = static_cast<int>(half - prefix.begin()) - 1;
    for (int mid = std::max(lo, guess - 1); mid <= std::min(hi - 1, guess + 1); ++mid) {
      int upper = prefix[mid + 1] - prefix[lo];
      int cost = std::max(upper, total - upper);
      if (cost < best_cost) {
        best_cost = cost;
        best_mid = mid;
      }
    }
    nd.kind = GammaKind::TwoChild;
    nd.upper = build_range(sp, prefix, lo, best_mid, spine_id);
    nd.lower = build_range(sp, prefix, best_mid + 1, hi, spine_id);
    int id = static_cast<int>(st.nodes.size());
    st.nodes.push_back(nd);
    st.nodes[nd.upper].parent = id;
    st.nodes[nd.lower].parent = id;
    return id;
  };

  build_spine = [&](int head) {
    std::vector<int> sp;
    for (int v = head; v >= 0; v = heavy[v]) sp.push_back(v);
    int spine_id = static_cast<int>(st.spines.size());
    st.spines.push_back(sp);
    std::vector<int> prefix(sp.size() + 1, 0);
    for (std::size_t i = 0; i < sp.size(); ++i)
      prefix[i + 1] = prefix[i] + 1 + (light[sp[i]] >= 0 ? size[light[sp[i]]] : 0);
    return build_range(sp, prefix, 0, static_cast<int>(sp.size()) - 1, spine_id);
  };

  st.root = build_spine(bt.root);
  return st;
}

int CoverageArray::find(const Rational& dist) const {
  // x[0] is +infinity, so the answer is at least 0.
  int lo = 0, hi = size() - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (x[mid] >= dist) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

namespace {

CoverageArray start_array() {
  CoverageArray a;
  a.x.emplace_back(0);
  a.y.push_back(0);
  a.z.push_back(0);
  a.q_start.push_back(0);
  return a;
}

void push_tuple(CoverageArray& a, const Rational& x, int y, int z) {
  a.x.push_back(x);
  a.y.push_back(y);
  a.z.push_back(z);
  a.q_start.push_back(static_cast<int>(a.q.size()));
}

void close_array(CoverageArray& a) {
  if (a.size() > 1 && a.x.back().sign() > 0) push_tuple(a, Rational(0), a.y.back(), a.z.back());
  a.q_start.push_back(static_cast<int>(a.q.size()));
}

void append_q(CoverageArray& dst, const CoverageArray& src, int i) {
  dst.q.insert(dst.q.end(), src.q.begin() + src.q_start[i], src.q.begin() + src.q_start[i + 1]);
}

// C(d) = A(d) + [d <= reach] * B(d + shift) for d >= 0.
CoverageArray combine(const CoverageArray& a, const std::optional<Rational>& reach, const CoverageArray& b,
                      const Rational& shift) {
  struct Shifted {
    Rational x;
    int index;
  };
  std::vector<Shifted> bs;
  if (reach) {
    for (int j = 1; j < b.size(); ++j) {
      Rational x = min(b.x[j] - shift, *reach);
      if (x.sign() < 0) break;
      bs.push_back({std::move(x), j});
    }
  }
  CoverageArray c = start_array();
  int ia = 1, ib = 0;
  int ya = 0, za = 0, yb = 0, zb = 0;
  const int na = a.size(), nb = static_cast<int>(bs.size());
  while (ia < na || ib < nb) {
    const Rational* x;
    if (ib >= nb || (ia < na && a.x[ia] >= bs[ib].x)) x = &a.x[ia];
    else x = &bs[ib].x;
    Rational at = *x;
    push_tuple(c, at, 0, 0);
    if (ia < na && a.x[ia] == at) {
      ya = a.y[ia];
      za = a.z[ia];
      append_q(c, a, ia);
      ++ia;
    }
    while (ib < nb && bs[ib].x == at) {
      yb = b.y[bs[ib].index];
      zb = b.z[bs[ib].index];
      append_q(c, b, bs[ib].index);
      ++ib;
    }
    c.y.back() = ya + yb;
    c.z.back() = za + zb;
  }
  close_array(c);
  return c;
}

std::vector<int> steps_of(const CoverageArray& a, int limit) {
  std::vector<int> steps;
  for (int i = 1; i < a.size(); ++i) {
    if (a.z[i] > a.z[i - 1]) {
      steps.push_back(i);
      if (a.z[i] >= limit) break;
    }
  }
  return steps;
}

int index_of(const CoverageArray& a, const std::optional<Rational>& x) {
  if (!x) return 0;
  int i = a.find(*x);
  return a.x[i] == *x && i > 0 ? i : 0;
}

}  // namespace

TreeIndex build_tree_index(const Graph& g) {
  TreeIndex ti;
  ti.rooted = root_tree(g, 0);
  ti.binary = binarize(g, ti.rooted);
  ti.spines = spine_decompose(ti.binary);
  return ti;
}

CoverageArrays build_coverage_arrays(const TreeIndex& ti, const Rational& lambda, int limit) {
  if (lambda.sign() < 0) throw std::invalid_argument("negative lambda");
  const BinaryTransform& bt = ti.binary;
  const SpineTree& st = ti.spines;
  CoverageArrays ca;
  ca.lambda = lambda;
  ca.limit = limit;
  ca.nodes.resize(st.nodes.size());
  // Children always precede their parent in node order.
  for (std::size_t id = 0; id < st.nodes.size(); ++id) {
    const GammaNode& nd = st.nodes[id];
    NodeCoverage& out = ca.nodes[id];
    if (nd.kind == GammaKind::TwoChild) {
      const NodeCoverage& lo = ca.nodes[nd.lower];
      const NodeCoverage& up = ca.nodes[nd.upper];
      const GammaNode& lnd = st.nodes[nd.lower];
      const GammaNode& und = st.nodes[nd.upper];
      Rational dt = bt.depth[lnd.top] - bt.depth[und.top];
      Rational db = bt.depth[lnd.bottom] - bt.depth[und.bottom];
      out.top = combine(up.top, up.full_top, lo.top, dt);
      out.bottom = combine(lo.bottom, lo.full_bottom, up.bottom, db);
      if (up.full_top && lo.full_top && *lo.full_top >= dt) out.full_top = min(*up.full_top, *lo.full_top - dt);
      if (lo.full_bottom && up.full_bottom && *up.full_bottom >= db)
        out.full_bottom = min(*lo.full_bottom, *up.full_bottom - db);
    } else {
      const int v = nd.top;
      Rational reach = lambda / bt.weight[v];
      CoverageArray leaf = start_array();
      push_tuple(leaf, reach, 1, bt.marked[v] ? 1 : 0);
      if (bt.marked[v]) leaf.q.push_back(bt.origin[v]);
      close_array(leaf);
      if (nd.kind == GammaKind::OneChild) {
        const NodeCoverage& h = ca.nodes[nd.hang];
        out.top = combine(leaf, reach, h.top, bt.parent_length[st.nodes[nd.hang].top]);
      } else {
        out.top = std::move(leaf);
      }
      out.bottom = out.top;
      out.full_top = reach;
      out.full_bottom = reach;
    }
    out.top_index = index_of(out.top, out.full_top);
    out.bottom_index = index_of(out.bottom, out.full_bottom);
    out.top_steps = steps_of(out.top, limit);
    out.bottom_steps = steps_of(out.bottom, limit);
  }
  return ca;
}

namespace {

// Shared walk for counting, reporting and the at-least-k test.
struct Walker {
  const TreeIndex& ti;
  const CoverageArrays& ca;
  bool use_steps;
  int target;
  int count = 0;
  std::vector<int>* report = nullptr;

  bool done() const { return use_steps && count >= target; }

  void add_array(const CoverageArray& a, const std::vector<int>& steps, const Rational& dist) {
    if (use_steps) {
      int lo = 0, hi = static_cast<int>(steps.size());
      while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (a.x[steps[mid]] >= dist) lo = mid + 1;
        else hi = mid;
      }
      if (lo > 0) count += a.z[steps[lo - 1]];
      return;
    }
    int i = a.find(dist);
    count += a.z[i];
    if (report) report->insert(report->end(), a.q.begin(), a.q.begin() + a.q_start[i + 1]);
  }

  void run(const TreePoint& p) {
    const BinaryTransform& bt = ti.binary;
    const SpineTree& st = ti.spines;
    const Rational& lambda = ca.lambda;
    const int b = p.child;
    const Rational depth_x = bt.depth[b] - p.up;

    int cur = st.leaf_of[b];
    const NodeCoverage& start = ca.nodes[cur];
    add_array(start.top, start.top_steps, p.up);
    bool down = p.up <= *start.full_top;
    Rational down_base = p.up - bt.depth[b];
    bool up = true;
    while (!done()) {
      int par = st.nodes[cur].parent;
      if (par < 0) break;
      const GammaNode& nd = st.nodes[par];
      if (nd.kind == GammaKind::TwoChild) {
        if (cur == nd.upper) {
          if (down) {
            const NodeCoverage& lc = ca.nodes[nd.lower];
            Rational d = bt.depth[st.nodes[nd.lower].top] + down_base;
            add_array(lc.top, lc.top_steps, d);
            down = lc.full_top && d <= *lc.full_top;
          }
        } else if (up) {
          const NodeCoverage& uc = ca.nodes[nd.upper];
          Rational d = depth_x - bt.depth[st.nodes[nd.upper].bottom];
          add_array(uc.bottom, uc.bottom_steps, d);
          up = uc.full_bottom && d <= *uc.full_bottom;
        }
        if (!up && !down) break;
      } else {
        const int q = nd.top;
        if (!up) break;
        Rational d = depth_x - bt.depth[q];
        if (bt.weight[q] * d > lambda) break;
        if (bt.marked[q]) {
          ++count;
          if (report) report->push_back(bt.origin[q]);
        }
        down = true;
        down_base = d - bt.depth[q];
      }
      cur = par;
    }
  }
};

}  // namespace

CoverageAnswer query_count(const Graph& g, const TreeIndex& ti, const CoverageArrays& ca, const EdgePoint& x,
                           bool report) {
  Walker w{ti, ca, false, 0};
  std::vector<int> found;
  if (report) w.report = &found;
  w.run(map_point(g, ti.rooted, ti.binary, x));
  CoverageAnswer ans;
  ans.count = w.count;
  if (report) {
    std::sort(found.begin(), found.end());
    ans.reported = std::move(found);
  }
  return ans;
}

bool query_at_least_k(const Graph& g, const TreeIndex& ti, const CoverageArrays& ca, const EdgePoint& x, int k) {
  if (k > ca.limit) throw std::invalid_argument("coverage arrays truncated below k");
  Walker w{ti, ca, true, k};
  w.run(map_point(g, ti.rooted, ti.binary, x));
  return w.count >= k;
}

}  // namespace ckoc
