#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ckoc/graph.hpp"

namespace ckoc {

struct GeneratorOptions {
  std::uint64_t seed = 1;
  int n = 5;
  double density = 0.0;         // share of the non-tree vertex pairs that get an edge
  std::optional<int> edges;     // exact edge count; overrides density
  bool weighted = false;
  bool tree_only = false;
  int max_denominator = 16;
};

// Random connected instance: a random spanning tree plus extra edges.
// Lengths and weights are small positive rationals.
Graph generate_graph(const GeneratorOptions& opt);
std::string generate_instance(const GeneratorOptions& opt, int k);

}  // namespace ckoc
