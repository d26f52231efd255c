#include "ckoc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <sstream>

namespace ckoc {

void Graph::set_weight(int v, Rational w) {
  if (w.sign() <= 0) throw std::invalid_argument("vertex weight must be positive");
  weights_.at(v) = std::move(w);
}

int Graph::add_edge(int a, int b, Rational length) {
  if (a < 0 || b < 0 || a >= n() || b >= n()) throw std::out_of_range("edge endpoint out of range");
  if (a == b) throw std::invalid_argument("self-loop");
  if (length.sign() <= 0) throw std::invalid_argument("edge length must be positive");
  if (find_edge(a, b)) throw std::invalid_argument("parallel edge");
  if (a > b) std::swap(a, b);
  int id = m();
  edges_.push_back({a, b, std::move(length)});
  adj_[a].push_back({b, id});
  adj_[b].push_back({a, id});
  return id;
}

std::optional<int> Graph::find_edge(int a, int b) const {
  const auto& list = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
  int other = adj_[a].size() <= adj_[b].size() ? b : a;
  for (const auto& x : list)
    if (x.vertex == other) return x.edge;
  return std::nullopt;
}

bool Graph::connected() const {
  if (n() == 0) return true;
  std::vector<char> seen(n(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& a : adj_[v]) {
      if (!seen[a.vertex]) {
        seen[a.vertex] = 1;
        ++count;
        stack.push_back(a.vertex);
      }
    }
  }
  return count == n();
}

bool Graph::unit_weights() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w == 1; });
}

bool Graph::uniform_weights() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](const Rational& w) { return w == weights_.front(); });
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

int parse_int(const std::string& s, int line, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + s + "'");
  }
  return v;
}

Rational parse_value(const std::string& s, int line, const char* what) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("malformed ") + what + " '" + s + "'");
  }
}

std::string plain(const Rational& r) {
  std::string s = r.str();
  if (s.size() > 2 && s.compare(s.size() - 2, 2, "/1") == 0) s.resize(s.size() - 2);
  return s;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  bool have_header = false, weighted = false;
  int n = 0, m = 0, line_no = 0;
  std::vector<char> weight_seen;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    auto tok = tokens(raw);
    if (tok.empty() || tok[0] == "c") continue;
    const std::string& kind = tok[0];
    if (kind == "p") {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      if (tok.size() != 6 || tok[1] != "ckoc")
        throw ParseError(line_no, "expected 'p ckoc <n> <m> <k> <weighted>'");
      n = parse_int(tok[2], line_no, "n");
      m = parse_int(tok[3], line_no, "m");
      inst.k = parse_int(tok[4], line_no, "k");
      int w = parse_int(tok[5], line_no, "weighted flag");
      if (w != 0 && w != 1) throw ParseError(line_no, "weighted flag must be 0 or 1");
      if (n < 2) throw ParseError(line_no, "at least 2 vertices required");
      if (m < 0) throw ParseError(line_no, "negative edge count");
      if (inst.k < 1 || inst.k > n) throw ParseError(line_no, "k out of range [1, n]");
      weighted = w == 1;
      inst.graph = Graph(n);
      weight_seen.assign(n, 0);
      have_header = true;
    } else if (kind == "v") {
      if (!have_header) throw ParseError(line_no, "vertex line before problem line");
      if (!weighted) throw ParseError(line_no, "vertex weight given for an unweighted instance");
      if (tok.size() != 3) throw ParseError(line_no, "expected 'v <id> <weight>'");
      int id = parse_int(tok[1], line_no, "vertex id");
      if (id < 1 || id > n) throw ParseError(line_no, "vertex id out of range");
      if (weight_seen[id - 1]) throw ParseError(line_no, "duplicate weight for vertex " + tok[1]);
      Rational w = parse_value(tok[2], line_no, "weight");
      if (w.sign() <= 0) throw ParseError(line_no, "nonpositive weight");
      inst.graph.set_weight(id - 1, std::move(w));
      weight_seen[id - 1] = 1;
    } else if (kind == "e") {
      if (!have_header) throw ParseError(line_no, "edge line before problem line");
      if (tok.size() != 4) throw ParseError(line_no, "expected 'e <u> <v> <length>'");
      int a = parse_int(tok[1], line_no, "vertex id");
      int b = parse_int(tok[2], line_no, "vertex id");
      if (a < 1 || a > n || b < 1 || b > n) throw ParseError(line_no, "vertex id out of range");
      if (a == b) throw ParseError(line_no, "self-loop rejected");
      Rational len = parse_value(tok[3], line_no, "length");
      if (len.sign() <= 0) throw ParseError(line_no, "nonpositive edge length");
      if (inst.graph.find_edge(a - 1, b - 1)) throw ParseError(line_no, "parallel edge rejected");
      inst.graph.add_edge(a - 1, b - 1, std::move(len));
    } else {
      throw ParseError(line_no, "unknown record type '" + kind + "'");
    }
  }
  if (!have_header) throw ParseError(0, "missing problem line");
  if (inst.graph.m() != m)
    throw ParseError(0, "edge count " + std::to_string(inst.graph.m()) + " does not match header " +
                            std::to_string(m));
  if (weighted) {
    for (int v = 0; v < n; ++v)
      if (!weight_seen[v]) throw ParseError(0, "missing weight for vertex " + std::to_string(v + 1));
  }
  if (!inst.graph.connected()) throw ParseError(0, "graph is disconnected");
  return inst;
}

std::string write_instance(const Graph& g, int k) {
  std::ostringstream out;
  bool weighted = !g.unit_weights();
  out << "p ckoc " << g.n() << ' ' << g.m() << ' ' << k << ' ' << (weighted ? 1 : 0) << '\n';
  if (weighted)
    for (int v = 0; v < g.n(); ++v) out << "v " << v + 1 << ' ' << plain(g.weight(v)) << '\n';
  for (const auto& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << plain(e.length) << '\n';
  return out.str();
}

std::vector<Rational> single_source_distances(const Graph& g, int source) {
  std::vector<Rational> dist(g.n());
  std::vector<char> done(g.n(), 0), reached(g.n(), 0);
  using Item = std::pair<Rational, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0;
  reached[source] = 1;
  pq.emplace(Rational(0), source);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (const auto& a : g.adj(v)) {
      Rational nd = d + g.edge(a.edge).length;
      if (!reached[a.vertex] || nd < dist[a.vertex]) {
        reached[a.vertex] = 1;
        dist[a.vertex] = nd;
        pq.emplace(std::move(nd), a.vertex);
      }
    }
  }
  return dist;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
  DistanceMatrix dm(g.n());
  for (int s = 0; s < g.n(); ++s) {
    auto row = single_source_distances(g, s);
    for (int v = 0; v < g.n(); ++v) dm.at(s, v) = std::move(row[v]);
  }
  return dm;
}

EdgePoint canonical(const Graph& g, const EdgePoint& p) {
  const Edge& e = g.edge(p.edge);
  if (p.t.sign() < 0 || p.t > e.length) throw std::out_of_range("edge offset outside [0, l(e)]");
  if (auto v = point_vertex(g, p)) return vertex_point(g, *v);
  return p;
}

EdgePoint vertex_point(const Graph& g, int v) {
  int best = -1;
  for (const auto& a : g.adj(v))
    if (best < 0 || a.edge < best) best = a.edge;
  if (best < 0) throw std::logic_error("isolated vertex has no point representation");
  const Edge& e = g.edge(best);
  return {best, e.u == v ? Rational(0) : e.length};
}

std::optional<int> point_vertex(const Graph& g, const EdgePoint& p) {
  const Edge& e = g.edge(p.edge);
  if (p.t.sign() == 0) return e.u;
  if (p.t == e.length) return e.v;
  return std::nullopt;
}

bool same_point(const Graph& g, const EdgePoint& a, const EdgePoint& b) {
  EdgePoint ca = canonical(g, a), cb = canonical(g, b);
  return ca.edge == cb.edge && ca.t == cb.t;
}

Rational point_distance(const Graph& g, const DistanceMatrix& dm, int v, const EdgePoint& p) {
  const Edge& e = g.edge(p.edge);
  return min(dm(v, e.u) + p.t, dm(v, e.v) + e.length - p.t);
}

Rational EdgeDistanceFn::eval(const Rational& t) const {
  return weight * min(dist_r + t, dist_s + length - t);
}

namespace {

// Vertices that keep a shortest path to `source` avoiding `blocked`.
std::vector<char> reachable_avoiding(const Graph& g, const DistanceMatrix& dm, int source, int blocked) {
  std::vector<int> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return dm(source, a) < dm(source, b); });
  std::vector<char> ok(g.n(), 0);
  for (int v : order) {
    if (v == blocked) continue;
    if (v == source) {
      ok[v] = 1;
      continue;
    }
    for (const auto& a : g.adj(v)) {
      if (a.vertex != blocked && ok[a.vertex] &&
          dm(source, a.vertex) + g.edge(a.edge).length == dm(source, v)) {
        ok[v] = 1;
        break;
      }
    }
  }
  return ok;
}

}  // namespace

std::vector<EdgeDistanceFn> edge_distance_fns(const Graph& g, const DistanceMatrix& dm, int e) {
  const Edge& ed = g.edge(e);
  const int r = ed.u, s = ed.v;
  std::vector<char> via_r, via_s;
  std::vector<EdgeDistanceFn> out(g.n());
  for (int v = 0; v < g.n(); ++v) {
    EdgeDistanceFn& f = out[v];
    f.vertex = v;
    f.edge = e;
    f.weight = g.weight(v);
    f.dist_r = dm(v, r);
    f.dist_s = dm(v, s);
    f.length = ed.length;
    f.at_r = f.weight * f.dist_r;
    f.at_s = f.weight * f.dist_s;
    if (f.dist_s == f.dist_r + ed.length) {
      f.shape = Shape::Increasing;
      if (via_s.empty()) via_s = reachable_avoiding(g, dm, s, r);
      if (via_s[v]) f.peak = ed.length;
    } else if (f.dist_r == f.dist_s + ed.length) {
      f.shape = Shape::Decreasing;
      if (via_r.empty()) via_r = reachable_avoiding(g, dm, r, s);
      if (via_r[v]) f.peak = Rational(0);
    } else {
      f.shape = Shape::Peak;
      f.peak = (f.dist_s + ed.length - f.dist_r) / 2;
    }
  }
  return out;
}

EdgeDistanceFn edge_distance_fn(const Graph& g, const DistanceMatrix& dm, int v, int e) {
  return edge_distance_fns(g, dm, e).at(v);
}

VertexPartition classify_at_point(const Graph& g, const DistanceMatrix& dm, const EdgePoint& x) {
  const Edge& e = g.edge(x.edge);
  VertexPartition part;
  std::vector<char> clear_r, clear_s;
  for (int v = 0; v < g.n(); ++v) {
    Rational via_r = dm(v, e.u) + x.t;
    Rational via_s = dm(v, e.v) + e.length - x.t;
    bool tie = via_r == via_s;
    // Both routes must exist without passing through the opposite endpoint.
    if (tie) {
      if (clear_r.empty()) {
        clear_r = reachable_avoiding(g, dm, e.u, e.v);
        clear_s = reachable_avoiding(g, dm, e.v, e.u);
      }
      if (!clear_r[v]) {
        part.by_s.push_back(v);
        continue;
      }
      if (!clear_s[v]) {
        part.by_r.push_back(v);
        continue;
      }
    }
    if (tie) {
      part.neutral.push_back(v);
    } else if (via_r < via_s) {
      part.by_r.push_back(v);
    } else {
      part.by_s.push_back(v);
    }
  }
  return part;
}

}  // namespace ckoc
