// rigidcheck: local and global g-rigidity of hypergraphs and completability
// of partially observed symmetric tensors.
//
// Exit codes: 0 globally rigid, 10 locally rigid only, 20 flexible,
// 30 locally rigid with an inconclusive global test, 2 input error.
// `packing` exits 0 when every condition holds, 1 otherwise; `examples`
// exits 1 on any failing case.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rigidcheck/engine.hpp"
#include "rigidcheck/error.hpp"
#include "rigidcheck/example_suite.hpp"
#include "rigidcheck/tensor.hpp"

using namespace rigidcheck;

namespace {

enum Exit : int {
  kGloballyRigid = 0,
  kPackingFails = 1,
  kInputError = 2,
  kLocallyRigidOnly = 10,
  kFlexible = 20,
  kGlobalInconclusive = 30,
};

struct Options {
  std::uint64_t seed = SamplingConfig{}.seed;
  bool seed_given = false;
  int trials = 3;
  std::string domain = "modp";
  bool json = false;
};

SamplingConfig sampling(const Options& o) {
  SamplingConfig cfg;
  cfg.seed = o.seed;
  if (!o.seed_given) {
    if (const char* env = std::getenv("RIGIDCHECK_SEED"); env != nullptr && *env != '\0') {
      std::size_t used = 0;
      try {
        cfg.seed = std::stoull(env, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != std::string(env).size()) throw InputError(std::string("RIGIDCHECK_SEED is not an unsigned integer: ") + env);
    }
  }
  cfg.trials = o.trials;
  try {
    cfg.domain = parse_domain(o.domain);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  if (cfg.domain == Domain::Float64) throw InputError("--domain must be exact or modp");
  return cfg;
}

PolyMap parse_map(const std::string& spec, int k, std::optional<int> dim) {
  if (spec == "prod") {
    if (dim && *dim != 1) throw InputError("the product map is scalar; use --rank for sums of copies");
    return h_prod(k);
  }
  if (spec == "sqdist" || spec == "inner") {
    if (k != 2) throw InputError("map '" + spec + "' needs a 2-uniform hypergraph, got k=" + std::to_string(k));
    if (!dim) throw InputError("map '" + spec + "' requires --dim");
    return spec == "sqdist" ? sq_euclid(*dim) : inner_product(*dim);
  }
  if (spec.rfind("poly:", 0) == 0) return parse_poly(spec.substr(5), k, dim.value_or(1));
  throw InputError("unknown map '" + spec + "' (expected prod, sqdist, inner or poly:<expr>)");
}

int exit_code(const RigidityReport& r) {
  if (r.globally_rigid == GlobalVerdict::Rigid) return kGloballyRigid;
  if (r.locally_rigid != LocalVerdict::Rigid) return kFlexible;
  return r.globally_rigid == GlobalVerdict::Inconclusive ? kGlobalInconclusive : kLocallyRigidOnly;
}

void emit(const Options& o, const RigidityReport& r) {
  if (o.json) {
    std::cout << to_json(r).dump(2) << '\n';
  } else {
    std::cout << to_text(r);
  }
}

int cmd_analyze(const Options& o, const std::string& path, const std::string& map_spec, std::optional<int> rank_d,
                std::optional<int> dim) {
  const SamplingConfig cfg = sampling(o);
  const Hypergraph G = load_hypergraph(path);
  const int d = rank_d.value_or(1);
  if (d < 1) throw InputError("--rank must be >= 1");
  if (map_spec == "prod" && G.k() >= 2) {
    if (dim && *dim != 1) throw InputError("the product map is scalar; use --rank for sums of copies");
    const RigidityReport r = global_rigidity_prod(G, d, cfg);
    emit(o, r);
    return exit_code(r);
  }
  const PolyMap base = parse_map(map_spec, G.k(), dim);
  const RigidityReport r = analyze_local(d == 1 ? base : sum_copies(base, d), G, cfg);
  emit(o, r);
  return exit_code(r);
}

Json fit_json(const CompletionResult& fit, const PartialSymmetricTensor& T) {
  Json factors = Json::array();
  for (Eigen::Index c = 0; c < fit.factors.rows(); ++c) {
    Json row = Json::array();
    for (Eigen::Index v = 0; v < fit.factors.cols(); ++v) row.push_back(fit.factors(c, v));
    factors.push_back(std::move(row));
  }
  Json hidden = Json::array();
  // Every entry of the completed tensor that was not observed.
  const Hypergraph full = complete_hypergraph(static_cast<std::size_t>(T.n), T.k);
  for (const auto& e : full.edges()) {
    if (T.entries.count(e.entries()) != 0) continue;
    Json idx = Json::array();
    for (VertexId v : e.entries()) idx.push_back(v + 1);
    hidden.push_back(Json{{"index", std::move(idx)}, {"value", model_entry(fit.factors, e.entries())}});
  }
  return Json{{"residual", fit.residual},
              {"converged", fit.converged},
              {"iterations", fit.iterations},
              {"best_start", fit.best_start},
              {"factors", std::move(factors)},
              {"completed_entries", std::move(hidden)}};
}

int cmd_tensor(const Options& o, const std::string& path, bool fit, int starts) {
  const SamplingConfig cfg = sampling(o);
  const PartialSymmetricTensor T = load_tensor(path);
  if (fit && !T.has_values()) throw InputError("fit requires values");
  const CompletabilityReport report = analyze_completability(T, cfg);
  std::optional<Json> fitted;
  if (fit) {
    FitConfig fc;
    fc.seed = cfg.seed;
    fc.starts = starts;
    fitted = fit_json(fit_completion(T, fc), T);
  }
  if (o.json) {
    Json out = to_json(report.rigidity);
    out["completability"] = to_string(report.completability);
    if (fitted) out["fit"] = *fitted;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << to_text(report.rigidity) << "completion: " << to_string(report.completability) << '\n';
    if (fitted) {
      std::cout << "fit:       residual " << (*fitted)["residual"].get<double>() << ", "
                << ((*fitted)["converged"].get<bool>() ? "converged" : "not converged") << " after "
                << (*fitted)["iterations"].get<int>() << " iterations\n";
      for (const auto& h : (*fitted)["completed_entries"]) std::cout << "  T" << h["index"].dump() << " = " << h["value"].get<double>() << '\n';
    }
  }
  return exit_code(report.rigidity);
}

std::vector<std::vector<VertexId>> load_partition(const std::string& path, const Hypergraph& G) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<std::vector<VertexId>> blocks;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<VertexId> block;
    for (std::string name; words >> name;) {
      try {
        block.push_back(G.index_of(name));
      } catch (const InputError& e) {
        throw InputError("partition line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (block.empty()) continue;
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    blocks.push_back(std::move(block));
  }
  if (blocks.empty()) throw InputError("partition file lists no vertex subsets");
  return blocks;
}

int cmd_packing(const Options& o, const std::string& graph_path, const std::string& partition_path, const std::string& map_spec,
                std::optional<int> dim, std::size_t min_block) {
  const SamplingConfig cfg = sampling(o);
  const Hypergraph G = load_hypergraph(graph_path);
  const auto blocks = load_partition(partition_path, G);
  const PolyMap h = parse_map(map_spec, G.k(), dim);
  if (!h.is_multilinear()) throw InputError("packing condition requires a multilinear map");
  const int t = static_cast<int>(blocks.size());
  const PackingReport r = packing_check(h, t, G, blocks, cfg, min_block);
  if (o.json) {
    Json conditions = Json::array();
    for (const auto& c : r.conditions) conditions.push_back({{"name", c.name}, {"holds", c.holds}, {"witness", c.witness}});
    const std::string instance =
        std::to_string(G.k()) + "-uniform, |V|=" + std::to_string(G.num_vertices()) + ", |E|=" + std::to_string(G.num_edges());
    Json out{{"instance", instance}, {"map", sum_copies(h, t).name()}, {"t", t}, {"holds", r.holds},
             {"conditions", std::move(conditions)}, {"notes", r.notes}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "map:       " << sum_copies(h, t).name() << " (t=" << t << ")\n";
    for (const auto& c : r.conditions) {
      std::cout << "  [" << (c.holds ? "x" : " ") << "] " << c.name;
      if (!c.holds) std::cout << "  " << c.witness.dump();
      std::cout << '\n';
    }
    for (const auto& n : r.notes) std::cout << "note:      " << n << '\n';
    std::cout << "verdict:   " << (r.holds ? "packing condition holds: locally g-rigid" : "packing condition fails") << '\n';
  }
  return r.holds ? 0 : kPackingFails;
}

int cmd_examples(const Options& o, const std::string& only) {
  const SamplingConfig cfg = sampling(o);
  const auto results = run_examples(cfg, only);
  if (o.json) {
    std::cout << to_json(results, cfg).dump(2) << '\n';
  } else {
    std::cout << to_table(results);
  }
  const bool all = std::all_of(results.begin(), results.end(), [](const ExampleResult& r) { return r.pass(); });
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local and global rigidity of hypergraph frameworks and symmetric tensor completability"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  auto* seed = app.add_option("--seed", o.seed, "Root seed for all random choices (fallback: RIGIDCHECK_SEED)");
  app.add_option("--trials", o.trials, "Random points per rank test")->check(CLI::PositiveNumber);
  app.add_option("--domain", o.domain, "Arithmetic for rank tests")->check(CLI::IsMember({"exact", "modp"}));
  app.add_flag("--json", o.json, "Machine-readable output");

  std::string path, partition, map_spec = "prod", case_id;
  std::optional<int> rank_d, dim;
  bool fit = false;
  int starts = 8;
  std::size_t min_block = 1;

  auto* analyze = app.add_subcommand("analyze", "Rigidity of a hypergraph under a measurement map");
  analyze->add_option("hypergraph", path, "Hypergraph JSON file")->required();
  analyze->add_option("--map", map_spec, "prod | sqdist | inner | poly:<expr>");
  analyze->add_option("--rank", rank_d, "Number of summed copies of the map (symmetric rank for prod)");
  analyze->add_option("--dim", dim, "Point dimension for sqdist, inner and poly maps");

  auto* tensor = app.add_subcommand("tensor", "Completability of a partially observed symmetric tensor");
  tensor->add_option("tensor", path, "Tensor file")->required();
  tensor->add_flag("--fit", fit, "Fit a rank-d completion to the observed values");
  tensor->add_option("--starts", starts, "Random starts for --fit")->check(CLI::PositiveNumber);

  auto* packing = app.add_subcommand("packing", "Packing-type sufficient condition for local rigidity");
  packing->add_option("hypergraph", path, "Hypergraph JSON file")->required();
  packing->add_option("partition", partition, "One vertex subset per line")->required();
  packing->add_option("--map", map_spec, "Multilinear base map: prod | inner | poly:<expr>");
  packing->add_option("--dim", dim, "Point dimension of the base map");
  packing->add_option("--min-block-size", min_block, "Lower bound on each subset size");

  auto* examples = app.add_subcommand("examples", "Run the embedded regression cases");
  examples->add_option("--case", case_id, "Run a single case, e.g. ex4.17");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  o.seed_given = seed->count() > 0;

  try {
    if (*analyze) return cmd_analyze(o, path, map_spec, rank_d, dim);
    if (*tensor) return cmd_tensor(o, path, fit, starts);
    if (*packing) return cmd_packing(o, path, partition, map_spec, dim, min_block);
    if (*examples) return cmd_examples(o, case_id);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
