#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "ckoc/arrangement.hpp"
#include "ckoc/feasibility.hpp"
#include "ckoc/generator.hpp"
#include "ckoc/klevel.hpp"
#include "ckoc/oracle.hpp"
#include "ckoc/tree_solver.hpp"

using namespace ckoc;
using nlohmann::json;

namespace {

enum class Algo { Auto, WeightedGraph, UnweightedGraph, WeightedTree, UnweightedTree };

const std::map<std::string, Algo> kAlgoNames{{"auto", Algo::Auto},
                                             {"weighted-graph", Algo::WeightedGraph},
                                             {"unweighted-graph", Algo::UnweightedGraph},
                                             {"weighted-tree", Algo::WeightedTree},
                                             {"unweighted-tree", Algo::UnweightedTree}};

const std::map<std::string, SearchStrategy> kSearchNames{
    {"explicit", SearchStrategy::Explicit}, {"counting", SearchStrategy::Counting}, {"auto", SearchStrategy::Auto}};

std::string algo_name(Algo a) {
  for (const auto& [name, value] : kAlgoNames)
    if (value == a) return name;
  return "?";
}

// Thrown for divergences found by `verify`.
struct Divergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Algo resolve(Algo a, const Graph& g) {
  if (a != Algo::Auto) return a;
  if (g.is_tree()) return g.uniform_weights() ? Algo::UnweightedTree : Algo::WeightedTree;
  return g.uniform_weights() ? Algo::UnweightedGraph : Algo::WeightedGraph;
}

Solution run_solver(Algo a, const Graph& g, int k, SearchStrategy search) {
  switch (resolve(a, g)) {
    case Algo::WeightedGraph: return solve_weighted_graph(g, k, search);
    case Algo::UnweightedGraph: return solve_unweighted_graph(g, k);
    case Algo::WeightedTree: return solve_weighted_tree(g, k, search == SearchStrategy::Auto ? SearchStrategy::Explicit : search);
    case Algo::UnweightedTree: return solve_unweighted_tree(g, k);
    case Algo::Auto: break;
  }
  throw std::logic_error("unresolved algorithm");
}

json point_json(const Graph& g, const EdgePoint& p) {
  const Edge& e = g.edge(p.edge);
  return {{"edge", {e.u + 1, e.v + 1}}, {"t", p.t.str()}};
}

json ids_json(const std::vector<int>& ids) {
  json out = json::array();
  for (int v : ids) out.push_back(v + 1);
  return out;
}

json solution_json(const Graph& g, const Solution& s) {
  return {{"lambda_star", s.lambda_star.str()}, {"center", point_json(g, s.center)}, {"subtree", ids_json(s.subtree)}};
}

Instance load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError(0, "cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void dump_divergence(const Graph& g, int k, const std::string& what) {
  std::cerr << "divergence: " << what << "\n" << write_instance(g, k);
}

// Compares every applicable solver with the oracle; returns instances checked.
int verify(std::uint64_t seed, int count, int n_max) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    GeneratorOptions opt;
    opt.seed = rng();
    opt.n = std::uniform_int_distribution<int>(2, n_max)(rng);
    opt.tree_only = i % 2 == 1;
    opt.weighted = i % 3 != 0;
    if (!opt.tree_only) {
      int pairs = opt.n * (opt.n - 1) / 2;
      opt.edges = std::uniform_int_distribution<int>(opt.n - 1, std::min(pairs, 2 * n_max))(rng);
    }
    Graph g = generate_graph(opt);
    auto want = oracle::brute_lambda_all(g, std::max(oracle::kDefaultCap, n_max));
    std::vector<Algo> algos{Algo::WeightedGraph};
    if (g.uniform_weights()) algos.push_back(Algo::UnweightedGraph);
    if (g.is_tree()) algos.push_back(Algo::WeightedTree);
    if (g.is_tree() && g.uniform_weights()) algos.push_back(Algo::UnweightedTree);
    for (int k = 1; k <= g.n(); ++k)
      for (Algo a : algos) {
        Rational got = run_solver(a, g, k, SearchStrategy::Auto).lambda_star;
        if (got != want[k - 1]) {
          std::ostringstream os;
          os << algo_name(a) << " k=" << k << " gave " << got << ", oracle " << want[k - 1];
          dump_divergence(g, k, os.str());
          throw Divergence(os.str());
        }
      }
  }
  return count;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial one-center (k-subtree center) solver"};
  app.require_subcommand(1);

  std::string algo_text = "auto", search_text = "auto", input, output, lambda_text;
  std::optional<int> k_flag;
  std::uint64_t seed = 1;
  int count = 50, n_max = 10, n = 10, edge = 1, repeats = 1;
  std::optional<int> edges;
  double density = 0.0;
  bool weighted = false, tree = false, timing = false, dump = false;

  auto add_k = [&](CLI::App* c) { c->add_option("-k", k_flag, "Subtree size (default: from the instance)")->check(CLI::PositiveNumber); };
  auto add_algo = [&](CLI::App* c) {
    c->add_option("--algo", algo_text, "Solver")->check(CLI::IsMember(kAlgoNames));
    c->add_option("--search", search_text, "Arrangement search strategy")->check(CLI::IsMember(kSearchNames));
  };

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", input)->required();
  add_k(solve);
  add_algo(solve);
  solve->add_option("-o", output, "Output file");
  solve->add_flag("--timing", timing, "Add wall time to the output");

  auto* feasible = app.add_subcommand("feasible", "Decide feasibility at a given lambda");
  feasible->add_option("instance", input)->required();
  feasible->add_option("--lambda", lambda_text)->required();
  add_k(feasible);
  feasible->add_option("-o", output, "Output file");

  auto* ver = app.add_subcommand("verify", "Check solvers against the brute-force oracle");
  ver->add_option("--seed", seed);
  ver->add_option("--count", count)->check(CLI::PositiveNumber);
  ver->add_option("--n-max", n_max)->check(CLI::Range(2, 12));

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--seed", seed);
  gen->add_option("--n", n)->check(CLI::Range(2, 10000000));
  gen->add_option("--density", density)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--edges", edges);
  gen->add_flag("--weighted", weighted);
  gen->add_flag("--tree", tree);
  add_k(gen);
  gen->add_option("-o", output, "Output file");

  auto* bench = app.add_subcommand("bench", "Time a solver on a generated instance; prints CSV");
  bench->add_option("--seed", seed);
  bench->add_option("--n", n)->check(CLI::Range(2, 10000000));
  bench->add_option("--edges", edges);
  bench->add_flag("--weighted", weighted);
  bench->add_flag("--tree", tree);
  bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
  add_k(bench);
  add_algo(bench);

  auto* klevel = app.add_subcommand("klevel", "k-th level of the distance chains on one edge");
  klevel->add_option("instance", input)->required();
  klevel->add_option("--edge", edge, "1-based edge index in input order")->check(CLI::PositiveNumber);
  klevel->add_flag("--dump", dump, "Print the level vertices as JSON")->required();
  add_k(klevel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Algo algo = kAlgoNames.at(algo_text);
    const SearchStrategy search = kSearchNames.at(search_text);

    if (solve->parsed()) {
      Instance inst = load(input);
      int k = k_flag.value_or(inst.k);
      auto t0 = std::chrono::steady_clock::now();
      Solution s = run_solver(algo, inst.graph, k, search);
      json out = solution_json(inst.graph, s);
      if (timing) out["seconds"] = seconds_since(t0);
      Output(output).get() << out.dump() << "\n";
    } else if (feasible->parsed()) {
      Instance inst = load(input);
      int k = k_flag.value_or(inst.k);
      Rational lambda;
      try {
        lambda = Rational::parse(lambda_text);
      } catch (const std::exception&) {
        throw ParseError(0, "bad --lambda value");
      }
      FeasibilityResult r;
      if (inst.graph.is_tree()) {
        r = is_feasible_tree(inst.graph, k, lambda);
      } else {
        DistanceMatrix dm = all_pairs_distances(inst.graph);
        r = is_feasible_graph(inst.graph, dm, k, lambda);
      }
      json out{{"feasible", r.feasible}, {"witness", nullptr}};
      if (r.witness) out["witness"] = {{"center", point_json(inst.graph, r.witness->point)}, {"subtree", ids_json(r.witness->vertices)}};
      Output(output).get() << out.dump() << "\n";
    } else if (ver->parsed()) {
      int checked = verify(seed, count, n_max);
      std::cout << "verified " << checked << " instances\n";
    } else if (gen->parsed()) {
      GeneratorOptions opt;
      opt.seed = seed;
      opt.n = n;
      opt.density = density;
      opt.edges = edges;
      opt.weighted = weighted;
      opt.tree_only = tree;
      Output(output).get() << generate_instance(opt, k_flag.value_or(1));
    } else if (bench->parsed()) {
      GeneratorOptions opt;
      opt.seed = seed;
      opt.n = n;
      opt.edges = edges;
      opt.weighted = weighted;
      opt.tree_only = tree;
      Graph g = generate_graph(opt);
      int k = k_flag.value_or(std::max(1, n / 4));
      if (k > g.n()) throw ParseError(0, "k exceeds n");
      std::cout << "n,m,k,algo,seconds\n";
      for (int r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        run_solver(algo, g, k, search);
        std::cout << g.n() << "," << g.m() << "," << k << "," << algo_name(resolve(algo, g)) << ","
                  << seconds_since(t0) << "\n";
      }
    } else if (klevel->parsed()) {
      Instance inst = load(input);
      int k = k_flag.value_or(inst.k);
      if (edge > inst.graph.m()) throw ParseError(0, "edge index out of range");
      DistanceMatrix dm = all_pairs_distances(inst.graph);
      ChainSet cs = build_chains(inst.graph, dm, edge - 1);
      LevelChain level = kth_level(cs, k);
      json verts = json::array();
      for (const auto& p : level.vertices) verts.push_back({p.x.str(), p.y.str()});
      json chains = json::array();
      for (const auto& c : cs.chains) chains.push_back({{"vertex", c.vertex + 1}, {"left", c.left.str()}, {"right", c.right.str()}});
      PlanePoint low = level.lowest();
      const Edge& e = inst.graph.edge(edge - 1);
      std::cout << json{{"edge", {e.u + 1, e.v + 1}}, {"length", cs.length.str()}, {"k", k}, {"chains", chains},
                        {"level", verts}, {"lowest", {low.x.str(), low.y.str()}}}
                       .dump()
                << "\n";
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Divergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
