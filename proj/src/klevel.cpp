#include "ckoc/klevel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ckoc/feasibility.hpp"

namespace ckoc {

Rational Chain::eval(const Rational& t) const { return min(left + t, fall_intercept() - t); }

namespace {

Chain make_chain(int vertex, const Rational& length, Rational left, Rational right) {
  Chain c;
  c.vertex = vertex;
  c.length = length;
  c.left = std::move(left);
  c.right = std::move(right);
  if (c.right == c.left + length) {
    c.shape = Shape::Increasing;
  } else if (c.left == c.right + length) {
    c.shape = Shape::Decreasing;
  } else {
    c.shape = Shape::Peak;
    c.apex = (c.right + length - c.left) / 2;
  }
  return c;
}

}  // namespace

ChainSet build_chains(const Graph& g, const DistanceMatrix& dm, int e) {
  if (!g.unit_weights()) throw std::invalid_argument("chains need unit vertex weights");
  const Edge& ed = g.edge(e);
  ChainSet cs;
  cs.edge = e;
  cs.length = ed.length;
  for (int v = 0; v < g.n(); ++v) cs.chains.push_back(make_chain(v, ed.length, dm(v, ed.u), dm(v, ed.v)));
  return cs;
}

ChainSet make_chain_set(const Rational& length, const std::vector<std::pair<Rational, Rational>>& ends) {
  ChainSet cs;
  cs.length = length;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const auto& [l, r] = ends[i];
    if (abs(l - r) > length) throw std::invalid_argument("chain ends differ by more than the edge length");
    cs.chains.push_back(make_chain(static_cast<int>(i), length, l, r));
  }
  return cs;
}

SegmentSequences build_segment_sequences(const ChainSet& cs) {
  std::map<Rational, std::vector<int>> rise, fall;
  for (int i = 0; i < static_cast<int>(cs.chains.size()); ++i) {
    const Chain& c = cs.chains[i];
    if (c.shape != Shape::Decreasing) rise[c.rise_intercept()].push_back(i);
    if (c.shape != Shape::Increasing) fall[c.fall_intercept()].push_back(i);
  }
  SegmentSequences out;
  // Right endpoint of an x-segment sits at height (a + b) / 2, so descending
  // endpoint height within a sequence is descending fall intercept.
  for (auto it = rise.rbegin(); it != rise.rend(); ++it) {
    auto members = it->second;
    std::stable_sort(members.begin(), members.end(), [&](int x, int y) {
      return cs.chains[x].fall_intercept() > cs.chains[y].fall_intercept();
    });
    out.rising.push_back({it->first, std::move(members)});
  }
  for (auto& [line, members0] : fall) {
    auto members = members0;
    std::stable_sort(members.begin(), members.end(), [&](int x, int y) {
      return cs.chains[x].rise_intercept() > cs.chains[y].rise_intercept();
    });
    out.falling.push_back({line, std::move(members)});
  }
  return out;
}

Rational LevelChain::value_at(const Rational& x) const {
  if (vertices.empty() || x < vertices.front().x || x > vertices.back().x)
    throw std::out_of_range("abscissa outside the level");
  auto it = std::lower_bound(vertices.begin(), vertices.end(), x,
                             [](const PlanePoint& p, const Rational& v) { return p.x < v; });
  if (it->x == x) return it->y;
  const PlanePoint& hi = *it;
  const PlanePoint& lo = *(it - 1);
  return hi.y > lo.y ? lo.y + (x - lo.x) : lo.y - (x - lo.x);
}

PlanePoint LevelChain::lowest() const {
  const PlanePoint* best = &vertices.front();
  for (const auto& p : vertices)
    if (p.y < best->y) best = &p;
  return *best;
}

LevelChain kth_level(const ChainSet& cs, int k) {
  const int n = static_cast<int>(cs.chains.size());
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in 1..number of chains");
  const Rational& len = cs.length;
  SegmentSequences seq = build_segment_sequences(cs);
  auto a_of = [&](int i) -> const Rational& { return cs.chains[i].left; };
  auto b_of = [&](int i) { return cs.chains[i].fall_intercept(); };

  std::vector<Rational> starts;
  starts.reserve(n);
  for (const auto& c : cs.chains) starts.push_back(c.left);
  std::nth_element(starts.begin(), starts.begin() + (k - 1), starts.end());
  const Rational y1 = starts[k - 1];

  int below = 0, pinned = 0;
  for (int i = 0; i < n; ++i) {
    if (a_of(i) < y1) ++below;
    else if (a_of(i) == y1 && b_of(i) == y1) ++pinned;
  }

  LevelChain level;
  level.vertices.push_back({Rational(0), y1});

  // The walk alternates between a rising line y = x + a and a falling line
  // y = b - x. `count` is the number of chains not above the current line
  // just after the last turn.
  bool rising = below + pinned < k;
  Rational line = y1;
  int count = below + pinned;

  auto first_falling_after = [&](const Rational& b) {
    return std::upper_bound(seq.falling.begin(), seq.falling.end(), b,
                            [](const Rational& v, const SegmentSequence& s) { return v < s.line; }) -
           seq.falling.begin();
  };
  auto first_rising_below = [&](const Rational& a) {
    return std::upper_bound(seq.rising.begin(), seq.rising.end(), a,
                            [](const Rational& v, const SegmentSequence& s) { return v > s.line; }) -
           seq.rising.begin();
  };

  std::size_t cursor = rising ? first_falling_after(line) : first_rising_below(line);
  Rational last_x = 0;
  while (true) {
    bool turned = false;
    if (rising) {
      for (; cursor < seq.falling.size(); ++cursor) {
        const SegmentSequence& s = seq.falling[cursor];
        Rational x = (s.line - line) / 2;
        if (x >= len) break;
        for (int i : s.members) {
          if (a_of(i) < line) break;
          ++count;
        }
        if (count >= k) {
          if (x <= last_x) throw std::logic_error("k-level walk lost x-monotonicity");
          level.vertices.push_back({x, line + x});
          last_x = x;
          Rational a = line;
          line = s.line;
          rising = false;
          cursor = first_rising_below(a);
          turned = true;
          break;
        }
      }
    } else {
      for (; cursor < seq.rising.size(); ++cursor) {
        const SegmentSequence& s = seq.rising[cursor];
        Rational x = (line - s.line) / 2;
        if (x >= len) break;
        for (int i : s.members) {
          if (b_of(i) <= line) break;
          --count;
        }
        if (count < k) {
          if (x <= last_x) throw std::logic_error("k-level walk lost x-monotonicity");
          level.vertices.push_back({x, line - x});
          last_x = x;
          Rational b = line;
          line = s.line;
          rising = true;
          cursor = first_falling_after(b);
          turned = true;
          break;
        }
      }
    }
    if (!turned) break;
  }
  level.vertices.push_back({len, rising ? line + len : line - len});
  return level;
}

Solution solve_unweighted_graph(const Graph& g, int k) {
  if (k < 1 || k > g.n()) throw std::invalid_argument("k must lie in 1..n");
  if (!g.uniform_weights()) throw std::invalid_argument("vertex weights are not uniform");
  const Rational w = g.weight(0);
  if (k == 1) return Solution{Rational(0), vertex_point(g, 0), {0}};

  Graph unit = g;
  for (int v = 0; v < unit.n(); ++v) unit.set_weight(v, Rational(1));
  DistanceMatrix dm = all_pairs_distances(unit);

  std::optional<Rational> best_y;
  EdgePoint best{};
  for (int e = 0; e < unit.m(); ++e) {
    PlanePoint p = kth_level(build_chains(unit, dm, e), k).lowest();
    if (!best_y || p.y < *best_y) {
      best_y = p.y;
      best = EdgePoint{e, p.x};
    }
  }
  EdgePoint center = canonical(unit, best);
  std::vector<int> all(unit.n());
  for (int v = 0; v < unit.n(); ++v) all[v] = v;
  return Solution{w * *best_y, center, closest_k(unit, dm, center, std::move(all), k)};
}

}  // namespace ckoc
