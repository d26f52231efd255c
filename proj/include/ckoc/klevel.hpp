#pragma once

#include <vector>

#include "ckoc/arrangement.hpp"
#include "ckoc/solution.hpp"

namespace ckoc {

// Graph of d(v, x) along one edge: min(left + t, right + length - t).
struct Chain {
  int vertex = -1;
  Rational left;   // value at t = 0
  Rational right;  // value at t = length
  Shape shape = Shape::Peak;
  Rational apex;   // meaningful for Peak only
  Rational length;

  Rational eval(const Rational& t) const;
  // Intercept of the slope +1 line and of the slope -1 line carrying the chain.
  const Rational& rise_intercept() const { return left; }
  Rational fall_intercept() const { return right + length; }
};

struct ChainSet {
  int edge = -1;
  Rational length;
  std::vector<Chain> chains;
};

ChainSet build_chains(const Graph& g, const DistanceMatrix& dm, int e);
// Chain set from explicit (left value, right value) pairs on [0, length].
ChainSet make_chain_set(const Rational& length, const std::vector<std::pair<Rational, Rational>>& ends);

// Collinear segment groups. Rising sequences hold x-segments on y = x + line,
// falling ones y-segments on y = line - x.
struct SegmentSequence {
  Rational line;
  std::vector<int> members;  // chain indices
};

struct SegmentSequences {
  std::vector<SegmentSequence> rising;   // by descending line (ascending x-intercept)
  std::vector<SegmentSequence> falling;  // by ascending line (ascending x-intercept)
};

SegmentSequences build_segment_sequences(const ChainSet& cs);

struct LevelChain {
  std::vector<PlanePoint> vertices;  // x strictly increasing, from 0 to length

  Rational value_at(const Rational& x) const;
  PlanePoint lowest() const;  // smallest y, then smallest x
};

LevelChain kth_level(const ChainSet& cs, int k);

// Unit or uniform vertex weights only.
Solution solve_unweighted_graph(const Graph& g, int k);

}  // namespace ckoc
