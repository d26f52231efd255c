#include "ckoc/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ckoc {

namespace {

Rational small_rational(std::mt19937_64& rng, int max_den, int max_value) {
  std::uniform_int_distribution<int> den_pick(1, max_den);
  int den = den_pick(rng);
  std::uniform_int_distribution<int> num_pick(1, max_value * den);
  return Rational(num_pick(rng), den);
}

}  // namespace

Graph generate_graph(const GeneratorOptions& opt) {
  const int n = opt.n;
  if (n < 2) throw std::invalid_argument("generator needs n >= 2");
  if (opt.max_denominator < 1) throw std::invalid_argument("max denominator must be positive");
  const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  const long long spare = pairs - (n - 1);
  long long extra = 0;
  if (!opt.tree_only) {
    if (opt.edges) {
      if (*opt.edges < n - 1 || *opt.edges > pairs) throw std::invalid_argument("impossible edge count");
      extra = *opt.edges - (n - 1);
    } else {
      if (!(opt.density >= 0.0 && opt.density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
      extra = static_cast<long long>(opt.density * static_cast<double>(spare) + 0.5);
    }
  }

  std::mt19937_64 rng(opt.seed);
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);

  Graph g(n);
  for (int v = 0; v < n; ++v)
    g.set_weight(v, opt.weighted ? small_rational(rng, opt.max_denominator, 4) : Rational(1));
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    g.add_edge(label[i], label[pick(rng)], small_rational(rng, opt.max_denominator, 3));
  }
  if (extra > 0) {
    std::vector<std::pair<int, int>> free;
    if (extra * 4 < spare) {
      std::uniform_int_distribution<int> pick(0, n - 1);
      while (extra > 0) {
        int a = pick(rng), b = pick(rng);
        if (a == b || g.find_edge(a, b)) continue;
        g.add_edge(a, b, small_rational(rng, opt.max_denominator, 3));
        --extra;
      }
    } else {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (!g.find_edge(a, b)) free.emplace_back(a, b);
      std::shuffle(free.begin(), free.end(), rng);
      for (long long i = 0; i < extra; ++i)
        g.add_edge(free[i].first, free[i].second, small_rational(rng, opt.max_denominator, 3));
    }
  }
  return g;
}

std::string generate_instance(const GeneratorOptions& opt, int k) { return write_instance(generate_graph(opt), k); }

}  // namespace ckoc
