#pragma once

#include <vector>

#include "ckoc/graph.hpp"

namespace ckoc {

struct Solution {
  Rational lambda_star;
  EdgePoint center;
  std::vector<int> subtree;  // sorted 0-based ids, exactly k of them
};

}  // namespace ckoc
