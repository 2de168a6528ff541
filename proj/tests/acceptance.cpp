// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rigidcheck/engine.hpp"
#include "rigidcheck/example_suite.hpp"
#include "rigidcheck/tensor.hpp"

using namespace rigidcheck;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

const SamplingConfig kExact{20240917, 3, Domain::Exact};

Outcome example_passes(const std::string& id, double limit) {
  Outcome o;
  const auto start = Clock::now();
  const ExampleResult r = run_example(id, kExact);
  const double t = seconds_since(start);
  for (const auto& c : r.checks) o.require(c.pass, c.name);
  o.require(t < limit, id + " took " + std::to_string(t) + " s");
  return o;
}

Outcome quartic_rigid() {
  Outcome o = example_passes("ex4.17", 1.0);
  const auto start = Clock::now();
  const Hypergraph G = compact_hypergraph("ab", "aaaa aaab bbbb");
  const RigidityReport r = global_rigidity_prod(G, 1, kExact);
  o.require(generic_rank(h_prod(4), G, kExact).rank == 2, "Jacobian rank != 2");
  o.require(r.shadow_size == 3, "shadow size != 3");
  o.require(r.kernel_dims && r.kernel_dims->right == 1, "kernel dim != 1");
  o.require(r.globally_rigid == GlobalVerdict::Rigid, "verdict " + r.verdict());
  o.require(seconds_since(start) < 1.0, "slow");
  return o;
}

Outcome quartic_inconclusive() {
  Outcome o = example_passes("ex4.18", 1.0);
  const auto start = Clock::now();
  const Hypergraph G = compact_hypergraph("ab", "aaaa abbb aaab");
  const RigidityReport r = global_rigidity_prod(G, 1, kExact);
  o.require(generic_rank(h_prod(4), G, kExact).rank == 2, "Jacobian rank != 2");
  o.require(r.conditions.size() == 3 && !r.conditions[2].holds, "kernel condition did not fail");
  o.require(r.globally_rigid == GlobalVerdict::Inconclusive, "verdict " + r.verdict());
  o.require(seconds_since(start) < 1.0, "slow");
  return o;
}

Outcome euclidean_classics() {
  Outcome o;
  auto graph = [](std::size_t n, const std::string& edges) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    std::string vertices;
    for (const auto& s : names) vertices += s;
    return compact_hypergraph(vertices, edges);
  };
  struct Case {
    std::string name;
    Hypergraph G;
    int dim;
    Index rank;
    bool rigid;
  };
  const std::vector<Case> cases = {
      {"square+diagonal in dim 2", graph(4, "ab bc cd ad ac"), 2, 5, true},
      {"square+diagonal in dim 3", graph(4, "ab bc cd ad ac"), 3, 5, false},
      {"4-cycle in dim 2", graph(4, "ab bc cd ad"), 2, 4, false},
      {"triangle in dim 2", graph(3, "ab bc ac"), 2, 3, true},
  };
  for (const auto& c : cases) {
    const auto start = Clock::now();
    const LocalRigidity r = is_locally_rigid(sq_euclid(c.dim), c.G, kExact);
    const double t = seconds_since(start);
    o.require(r.jacobian_rank == c.rank, c.name + ": rank " + std::to_string(r.jacobian_rank));
    o.require(r.rigid == c.rigid, c.name + ": wrong verdict");
    o.require(t < 1.0, c.name + ": " + std::to_string(t) + " s");
  }
  return o;
}

Outcome jacobian_finite_differences() {
  Outcome o;
  std::mt19937_64 rng = derive_stream(kExact.seed, 0x4644, 0);
  const std::vector<PolyMap> maps = {h_prod(2), h_prod(3), h_prod(4), sq_euclid(1), sq_euclid(2),
                                     sq_euclid(3), inner_product(1), inner_product(2), inner_product(3)};
  double worst = 0;
  for (const auto& g : maps) {
    for (int instance = 0; instance < 20; ++instance) {
      const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 5));
      const Hypergraph full = complete_hypergraph(n, g.k());
      EdgeSet edges;
      for (const auto& e : full.edges())
        if (rng() % 3 != 0) edges.push_back(e);
      if (edges.empty()) edges.push_back(full.edges().front());
      const Hypergraph G = full.with_edges(edges);
      PointConfig<double> p(g.d(), static_cast<Index>(n));
      for (Index i = 0; i < p.size(); ++i) p(i) = uniform_real(rng, -2.0, 2.0);
      const Matrix<double> J = jacobian(g, G, p);
      const double h = 1e-6;
      for (Index c = 0; c < p.size(); ++c) {
        PointConfig<double> up = p, down = p;
        up(c) += h;
        down(c) -= h;
        const Vector<double> fd = (measurement(g, G, up) - measurement(g, G, down)) / (2 * h);
        // p(c) is coordinate c % d of vertex c / d, i.e. Jacobian column c.
        for (Index e = 0; e < fd.size(); ++e) worst = std::max(worst, std::abs(fd(e) - J(e, c)) / std::max(1.0, std::abs(J(e, c))));
      }
    }
  }
  std::ostringstream s;
  s << "max relative discrepancy " << worst;
  o.require(worst <= 1e-6, s.str());
  if (o.pass) o.detail = s.str();
  return o;
}

Outcome rank_identities() {
  Outcome o;
  std::mt19937_64 rng = derive_stream(kExact.seed, 0x524b, 0);
  auto random_matrix = [&](Index rows, Index cols) {
    Matrix<Rational> m(rows, cols);
    for (Index i = 0; i < m.size(); ++i) m(i) = Rational(uniform_int(rng, -30, 30), uniform_int(rng, 1, 7));
    return m;
  };
  int agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index r = uniform_int(rng, 1, 8);
    const Matrix<Rational> m = random_matrix(8, r) * random_matrix(r, 10);
    const Index exact = rank(m);
    o.require(exact + right_kernel_basis(m).dimension() == 10, "right rank identity");
    o.require(exact + left_kernel_basis(m).dimension() == 8, "left rank identity");
    const std::uint64_t prime = random_prime62(rng);
    PrimeFieldScope scope(prime);
    Matrix<ModP> mp(8, 10);
    for (Index i = 0; i < m.size(); ++i) mp(i) = scalar_cast<ModP>(m(i));
    const Index modular = rank(mp);
    o.require(modular + right_kernel_basis(mp).dimension() == 10, "prime-field rank identity");
    o.require(modular <= exact, "prime-field rank exceeds the rational rank");
    if (modular == exact) ++agree;
  }
  o.require(agree >= 99, "agreement " + std::to_string(agree) + "/100");
  if (o.pass) o.detail = "prime-field agreement " + std::to_string(agree) + "/100";
  return o;
}

Outcome planted_recovery() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng = derive_stream(kExact.seed, 0x504c, 0);
  const SamplingConfig cfg{kExact.seed, 3, Domain::ModP};
  int instances = 0, attempts = 0, hidden = 0;
  double worst = 0;
  while (instances < 20 && attempts < 2000) {
    ++attempts;
    const int n = static_cast<int>(uniform_int(rng, 2, 4));
    const Hypergraph full = complete_hypergraph(static_cast<std::size_t>(n), 4);
    EdgeSet observed;
    for (const auto& e : full.edges())
      if (rng() % 2 == 0) observed.push_back(e);
    if (observed.empty() || observed.size() == full.num_edges()) continue;
    PartialSymmetricTensor T;
    T.n = n;
    T.k = 4;
    T.d = 1;
    for (const auto& e : observed) T.entries[e.entries()] = std::nullopt;
    if (analyze_completability(T, cfg).completability != Completability::Unique) continue;

    Eigen::MatrixXd planted(1, n);
    for (int v = 0; v < n; ++v) planted(0, v) = (rng() % 2 ? 1 : -1) * uniform_real(rng, 0.5, 1.5);
    for (auto& [e, value] : T.entries) value = model_entry(planted, e);
    const CompletionResult fit = fit_completion(T, FitConfig{cfg.seed + static_cast<std::uint64_t>(instances), 500, 1e-10, 8});
    for (const auto& e : full.edges()) {
      if (T.entries.count(e.entries())) continue;
      ++hidden;
      const double truth = model_entry(planted, e.entries());
      const double err = std::abs(model_entry(fit.factors, e.entries()) - truth) / std::abs(truth);
      worst = std::max(worst, err);
      o.require(err <= 1e-6, "instance " + std::to_string(instances) + " hidden entry off by " + std::to_string(err));
    }
    ++instances;
  }
  const double t = seconds_since(start);
  o.require(instances == 20, "only " + std::to_string(instances) + " certified patterns found");
  o.require(t < 30.0, "took " + std::to_string(t) + " s");
  if (o.pass) {
    std::ostringstream s;
    s << instances << " instances, " << hidden << " hidden entries, worst relative error " << worst << ", " << t << " s";
    o.detail = s.str();
  }
  return o;
}

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

Outcome determinism() {
  Outcome o;
  const std::string cmd = std::string(RIGIDCHECK_CLI) + " examples --json --seed 4242";
  const std::string a = capture(cmd), b = capture(cmd);
  o.require(!a.empty(), "no output");
  o.require(a == b, "outputs differ");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"quartic pattern {aaaa,aaab,bbbb} certified globally rigid", quartic_rigid},
      {"quartic pattern {aaaa,aaab,abbb} inconclusive", quartic_inconclusive},
      {"4-cycle squared distance: alpha-Jacobian is a weighted Laplacian", [] { return example_passes("ex4.11", 1.0); }},
      {"inner-product triangle: alpha-Jacobian is the weighted adjacency", [] { return example_passes("ex4.12", 1.0); }},
      {"cubic pattern {aaa,aab,abc,bcd}: displayed Hessian", [] { return example_passes("ex4.14", 1.0); }},
      {"Euclidean classics", euclidean_classics},
      {"Jacobian vs finite differences", jacobian_finite_differences},
      {"rank identities and prime-field agreement", rank_identities},
      {"planted rank-one completion recovery", planted_recovery},
      {"examples --json is deterministic", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << (o.detail.empty() ? "" : "  (" + o.detail + ")") << '\n';
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
