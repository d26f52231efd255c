#include "ckoc/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ckoc/feasibility.hpp"

namespace ckoc {

Line Line::sloped(Rational a, Rational b, int vertex, int edge) {
  Line l;
  l.slope = std::move(a);
  l.intercept = std::move(b);
  l.vertex = vertex;
  l.edge = edge;
  return l;
}

Line Line::at(Rational x, int edge) {
  Line l;
  l.vertical = true;
  l.x = std::move(x);
  l.edge = edge;
  return l;
}

LineSet candidate_lines(const Graph& g, const DistanceMatrix& dm) {
  LineSet out;
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    out.push_back(Line::at(0, e));
    out.push_back(Line::at(ed.length, e));
    for (const auto& f : edge_distance_fns(g, dm, e)) {
      if (f.shape != Shape::Decreasing) out.push_back(Line::sloped(f.weight, f.weight * f.dist_r, f.vertex, e));
      if (f.shape != Shape::Increasing)
        out.push_back(Line::sloped(-f.weight, f.weight * (f.dist_s + ed.length), f.vertex, e));
      // Coverage can spike at a single semicircular point; the optimum is then
      // another vertex's distance there, which no two sloped lines produce.
      if (f.shape == Shape::Peak) out.push_back(Line::at(*f.peak, e));
    }
  }
  return out;
}

std::optional<PlanePoint> intersect(const Line& a, const Line& b) {
  if (a.vertical && b.vertical) return std::nullopt;
  if (a.vertical) return PlanePoint{a.x, b.slope * a.x + b.intercept};
  if (b.vertical) return PlanePoint{b.x, a.slope * b.x + a.intercept};
  if (a.slope == b.slope) return std::nullopt;
  Rational x = (b.intercept - a.intercept) / (a.slope - b.slope);
  Rational y = a.slope * x + a.intercept;
  return PlanePoint{std::move(x), std::move(y)};
}

namespace {

bool by_yx(const PlanePoint& p, const PlanePoint& q) { return p.y != q.y ? p.y < q.y : p.x < q.x; }

// Sorted by (y, x); keeps the smallest x per ordinate.
void unique_ordinates(std::vector<PlanePoint>& pts) {
  std::sort(pts.begin(), pts.end(), by_yx);
  pts.erase(std::unique(pts.begin(), pts.end(), [](const PlanePoint& p, const PlanePoint& q) { return p.y == q.y; }),
            pts.end());
}

// Index of the first feasible entry of an ascending list, if any.
std::optional<std::size_t> first_feasible(const std::vector<PlanePoint>& pts, const LambdaOracle& feasible) {
  std::size_t lo = 0, hi = pts.size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(pts[mid].y)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (lo == pts.size()) return std::nullopt;
  return lo;
}

struct Bound {
  int inf = 0;  // -1: minus infinity, +1: plus infinity
  Rational y;
  bool open = false;  // order just below y instead of just above
};

Bound bound_of(const std::optional<Rational>& v, int inf, bool open = false) {
  return v ? Bound{0, *v, open} : Bound{inf, {}, false};
}

// Sloped lines (deduplicated) and distinct vertical positions.
class PreparedLines {
 public:
  explicit PreparedLines(const LineSet& lines) {
    std::vector<std::pair<Rational, Rational>> ab;
    for (const auto& l : lines) {
      if (l.vertical) {
        xs_.push_back(l.x);
      } else {
        ab.emplace_back(l.slope, l.intercept);
      }
    }
    std::sort(xs_.begin(), xs_.end());
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
    std::sort(ab.begin(), ab.end());
    ab.erase(std::unique(ab.begin(), ab.end()), ab.end());
    for (auto& [a, b] : ab) {
      inv_.push_back(Rational(1) / a);
      offset_.push_back(-b / a);
      a_.push_back(std::move(a));
      b_.push_back(std::move(b));
    }
  }

  std::size_t sloped() const { return a_.size(); }

  // Line order along the horizontal line y = bound (just above it).
  std::vector<int> order(const Bound& bd) const {
    std::vector<int> idx(a_.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (bd.inf != 0) {
      std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        if (inv_[i] != inv_[j]) return bd.inf < 0 ? inv_[j] < inv_[i] : inv_[i] < inv_[j];
        return offset_[i] < offset_[j];
      });
      return idx;
    }
    std::vector<Rational> key(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) key[i] = inv_[i] * bd.y + offset_[i];
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
      if (key[i] != key[j]) return key[i] < key[j];
      return bd.open ? inv_[j] < inv_[i] : inv_[i] < inv_[j];
    });
    return idx;
  }

  PlanePoint crossing(int i, int j) const {
    Rational x = (b_[j] - b_[i]) / (a_[i] - a_[j]);
    Rational y = a_[i] * x + b_[i];
    return {std::move(x), std::move(y)};
  }

  // Range of vertical positions whose crossing with line i lies in (lo, hi],
  // or in (lo, hi) when hi is open.
  std::pair<std::size_t, std::size_t> vertical_range(int i, const Bound& lo, const Bound& hi) const {
    const Rational& a = a_[i];
    const Rational& b = b_[i];
    auto ub = [&](const Rational& v) { return std::size_t(std::upper_bound(xs_.begin(), xs_.end(), v) - xs_.begin()); };
    auto lb = [&](const Rational& v) { return std::size_t(std::lower_bound(xs_.begin(), xs_.end(), v) - xs_.begin()); };
    std::size_t first, last;
    if (a.sign() > 0) {
      first = lo.inf ? 0 : ub((lo.y - b) / a);
      last = hi.inf ? xs_.size() : (hi.open ? lb((hi.y - b) / a) : ub((hi.y - b) / a));
    } else {
      first = hi.inf ? 0 : (hi.open ? ub((hi.y - b) / a) : lb((hi.y - b) / a));
      last = lo.inf ? xs_.size() : lb((lo.y - b) / a);
    }
    if (last < first) last = first;
    return {first, last};
  }

  PlanePoint vertical_crossing(int i, std::size_t j) const { return {xs_[j], a_[i] * xs_[j] + b_[i]}; }

 private:
  std::vector<Rational> a_, b_, inv_, offset_;
  std::vector<Rational> xs_;
};

// Merge-sort inversion counter that also reports the inversions whose
// enumeration index appears in `wanted` (ascending).
class InversionWalk {
 public:
  InversionWalk(std::vector<int> seq, const std::vector<std::uint64_t>& wanted)
      : seq_(std::move(seq)), buf_(seq_.size()), wanted_(wanted) {}

  std::uint64_t run() {
    sort(0, seq_.size());
    return total_;
  }
  const std::vector<std::pair<int, int>>& hits() const { return hits_; }

 private:
  void sort(std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return;
    std::size_t mid = lo + (hi - lo) / 2;
    sort(lo, mid);
    sort(mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid || j < hi) {
      if (j == hi || (i < mid && seq_[i] < seq_[j])) {
        buf_[k++] = seq_[i++];
      } else {
        std::uint64_t c = mid - i;
        while (next_ < wanted_.size() && wanted_[next_] < total_ + c) {
          hits_.emplace_back(seq_[j], seq_[i + (wanted_[next_] - total_)]);
          ++next_;
        }
        total_ += c;
        buf_[k++] = seq_[j++];
      }
    }
    std::copy(buf_.begin() + lo, buf_.begin() + hi, seq_.begin() + lo);
  }

  std::vector<int> seq_, buf_;
  const std::vector<std::uint64_t>& wanted_;
  std::size_t next_ = 0;
  std::uint64_t total_ = 0;
  std::vector<std::pair<int, int>> hits_;
};

class IntersectionCounter {
 public:
  IntersectionCounter(const PreparedLines& p, Bound lo, Bound hi) : p_(p), lo_(std::move(lo)), hi_(std::move(hi)) {
    auto lo_order = p_.order(lo_);
    auto hi_order = p_.order(hi_);
    std::vector<int> rank(lo_order.size());
    for (std::size_t r = 0; r < lo_order.size(); ++r) rank[lo_order[r]] = static_cast<int>(r);
    seq_.resize(hi_order.size());
    for (std::size_t q = 0; q < hi_order.size(); ++q) seq_[q] = rank[hi_order[q]];
    line_at_rank_ = std::move(lo_order);
    static const std::vector<std::uint64_t> none;
    inversions_ = InversionWalk(seq_, none).run();
    vertical_.resize(p_.sloped());
    for (std::size_t i = 0; i < p_.sloped(); ++i) {
      auto [f, l] = p_.vertical_range(static_cast<int>(i), lo_, hi_);
      vertical_[i] = {f, l};
      vertical_total_ += l - f;
    }
  }

  std::uint64_t total() const { return inversions_ + vertical_total_; }

  // Intersections with the given enumeration indices (ascending, < total()).
  std::vector<PlanePoint> pick(const std::vector<std::uint64_t>& wanted) const {
    std::vector<PlanePoint> out;
    std::vector<std::uint64_t> inv_part, vert_part;
    for (auto w : wanted) (w < inversions_ ? inv_part : vert_part).push_back(w);
    if (!inv_part.empty()) {
      InversionWalk walk(seq_, inv_part);
      walk.run();
      for (auto [r1, r2] : walk.hits()) out.push_back(p_.crossing(line_at_rank_[r1], line_at_rank_[r2]));
    }
    std::uint64_t cum = inversions_;
    std::size_t next = 0;
    for (std::size_t i = 0; i < vertical_.size() && next < vert_part.size(); ++i) {
      auto [f, l] = vertical_[i];
      while (next < vert_part.size() && vert_part[next] < cum + (l - f)) {
        out.push_back(p_.vertical_crossing(static_cast<int>(i), f + (vert_part[next] - cum)));
        ++next;
      }
      cum += l - f;
    }
    return out;
  }

 private:
  const PreparedLines& p_;
  Bound lo_, hi_;
  std::vector<int> seq_;
  std::vector<int> line_at_rank_;
  std::uint64_t inversions_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> vertical_;
  std::uint64_t vertical_total_ = 0;
};

ArrangementAnswer explicit_search(const LineSet& lines, const LambdaOracle& feasible) {
  auto pts = all_intersections(lines);
  unique_ordinates(pts);
  auto idx = first_feasible(pts, feasible);
  if (!idx) throw std::runtime_error("no intersection has a feasible ordinate");
  ArrangementAnswer ans{pts[*idx], std::nullopt};
  if (*idx > 0) ans.v2 = pts[*idx - 1];
  return ans;
}

ArrangementAnswer counting_search(const LineSet& lines, const LambdaOracle& feasible, std::uint64_t seed) {
  PreparedLines prep(lines);
  std::mt19937_64 rng(seed);
  const std::uint64_t enumerate_below = std::max<std::uint64_t>(4 * lines.size(), 4096);
  const int samples = 31;
  std::optional<PlanePoint> lo, hi;
  for (;;) {
    IntersectionCounter counter(prep, bound_of(lo ? std::optional(lo->y) : std::nullopt, -1),
                                bound_of(hi ? std::optional(hi->y) : std::nullopt, +1, true));
    const std::uint64_t total = counter.total();
    if (total == 0) break;
    std::vector<std::uint64_t> wanted;
    if (total <= enumerate_below) {
      wanted.resize(total);
      std::iota(wanted.begin(), wanted.end(), std::uint64_t{0});
    } else {
      std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
      for (int i = 0; i < samples; ++i) wanted.push_back(pick(rng));
      std::sort(wanted.begin(), wanted.end());
      wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    }
    auto pts = counter.pick(wanted);
    unique_ordinates(pts);
    auto idx = first_feasible(pts, feasible);
    if (idx) hi = pts[*idx];
    std::size_t below = idx ? *idx : pts.size();
    if (below > 0) lo = pts[below - 1];
    if (total <= enumerate_below) break;
  }
  if (!hi) throw std::runtime_error("no intersection has a feasible ordinate");
  return {*hi, lo};
}

}  // namespace

std::vector<PlanePoint> all_intersections(const LineSet& lines) {
  std::vector<PlanePoint> pts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (auto p = intersect(lines[i], lines[j])) pts.push_back(std::move(*p));
  std::sort(pts.begin(), pts.end(), by_yx);
  return pts;
}

std::uint64_t count_intersections(const LineSet& lines, const std::optional<Rational>& lo,
                                  const std::optional<Rational>& hi) {
  PreparedLines prep(lines);
  return IntersectionCounter(prep, bound_of(lo, -1), bound_of(hi, +1)).total();
}

ArrangementAnswer lowest_feasible_vertex(const LineSet& lines, const LambdaOracle& feasible,
                                         SearchStrategy strategy, std::uint64_t seed) {
  if (strategy == SearchStrategy::Auto)
    strategy = lines.size() <= 2000 ? SearchStrategy::Explicit : SearchStrategy::Counting;
  if (strategy == SearchStrategy::Explicit) return explicit_search(lines, feasible);
  return counting_search(lines, feasible, seed);
}

Solution solve_weighted_graph(const Graph& g, int k, SearchStrategy strategy) {
  if (k < 1 || k > g.n()) throw std::invalid_argument("k out of range");
  if (k == 1) return {Rational(0), vertex_point(g, 0), {0}};
  DistanceMatrix dm = all_pairs_distances(g);
  GraphFeasibility feas(g, dm);
  auto lines = candidate_lines(g, dm);
  auto ans = lowest_feasible_vertex(
      lines, [&](const Rational& lam) { return feas.test(k, lam).feasible; }, strategy);
  auto res = feas.test(k, ans.v1.y);
  if (!res.feasible || !res.witness) throw std::logic_error("feasibility changed at the optimum");
  return {ans.v1.y, res.witness->point, res.witness->vertices};
}

}  // namespace ckoc
