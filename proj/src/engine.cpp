#include "rigidcheck/engine.hpp"

#include <algorithm>
#include <set>
#include <type_traits>

namespace rigidcheck {

namespace {

// Stream purposes; distinct operations draw independent points.
constexpr std::uint64_t kRankPoints = 0x52414e4b;
constexpr std::uint64_t kGlobalPoints = 0x474c4f42;
constexpr std::uint64_t kContactPoints = 0x434f4e54;

constexpr int kMaxPrimeAttempts = 8;

// Runs `fn(std::type_identity<Scalar>{}, rng)` in the configured domain. In
// prime-field mode a fresh prime is drawn per trial and recorded; primes that
// annihilate a coefficient denominator are resampled.
template <class Fn>
auto run_trial(const SamplingConfig& cfg, std::uint64_t purpose, int trial, std::vector<std::uint64_t>& primes, Fn&& fn) {
  if (cfg.domain == Domain::Float64) throw std::invalid_argument("float64 is diagnostic only and cannot certify a verdict");
  auto rng = derive_stream(cfg.seed, purpose, static_cast<std::uint64_t>(trial));
  if (cfg.domain == Domain::Exact) return fn(std::type_identity<Rational>{}, rng);
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t prime = random_prime62(rng);
    auto point_rng = rng;
    try {
      PrimeFieldScope scope(prime);
      auto result = fn(std::type_identity<ModP>{}, point_rng);
      primes.push_back(prime);
      return result;
    } catch (const BadPrimeError&) {
      if (attempt + 1 >= kMaxPrimeAttempts) throw;
    }
  }
}

void require_trials(const SamplingConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
}

template <class Scalar>
Matrix<Scalar> hstack(const std::vector<Matrix<Scalar>>& blocks, Index rows) {
  Index cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  Matrix<Scalar> out(rows, cols);
  Index offset = 0;
  for (const auto& b : blocks) {
    out.middleCols(offset, b.cols()) = b;
    offset += b.cols();
  }
  return out;
}

std::string describe(const Hypergraph& G) {
  return std::to_string(G.k()) + "-uniform, |V|=" + std::to_string(G.num_vertices()) + ", |E|=" + std::to_string(G.num_edges());
}

Certificate make_certificate(const SamplingConfig& cfg, std::vector<std::uint64_t> primes) {
  return Certificate{cfg.seed, cfg.domain, cfg.trials, std::move(primes)};
}

void append(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

}  // namespace

RankResult generic_rank(const PolyMap& g, const Hypergraph& G, const SamplingConfig& cfg) {
  require_trials(cfg);
  RankResult out;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const Index r = run_trial(cfg, kRankPoints, trial, out.primes, [&](auto tag, std::mt19937_64& rng) {
      using Scalar = typename decltype(tag)::type;
      const auto p = sample_point<Scalar>(rng, g.d(), G.num_vertices());
      return rank(jacobian(g, G, p));
    });
    out.trial_ranks.push_back(r);
    out.rank = std::max(out.rank, r);
  }
  return out;
}

RankResult reference_rank(const PolyMap& g, std::size_t num_vertices, const SamplingConfig& cfg) {
  return generic_rank(g, complete_hypergraph(num_vertices, g.k()), cfg);
}

LocalRigidity is_locally_rigid(const PolyMap& g, const Hypergraph& G, const SamplingConfig& cfg) {
  LocalRigidity out;
  const RankResult own = generic_rank(g, G, cfg);
  const RankResult ref = reference_rank(g, G.num_vertices(), cfg);
  out.jacobian_rank = own.rank;
  out.reference_rank = ref.rank;
  out.rigid = own.rank == ref.rank;
  out.primes = own.primes;
  if (G.num_vertices() < static_cast<std::size_t>(G.k()))
    out.notes.push_back("small instance (|V| < k): verdict uses the complete-hypergraph reference-rank convention");
  return out;
}

PackingReport packing_check(const PolyMap& h, int t, const Hypergraph& G, const std::vector<std::vector<VertexId>>& blocks,
                            const SamplingConfig& cfg, std::size_t min_block_size) {
  if (!h.is_multilinear()) throw std::invalid_argument("packing condition requires multilinear form");
  if (t < 1 || blocks.size() != static_cast<std::size_t>(t))
    throw std::invalid_argument("packing_check: expected " + std::to_string(t) + " vertex subsets, got " + std::to_string(blocks.size()));
  PackingReport out;
  if (min_block_size <= 1)
    out.notes.push_back("minimum block size defaults to 1; the stabilizer threshold n_Gamma is not computed");

  std::vector<std::set<VertexId>> block_sets;
  for (const auto& X : blocks) {
    for (VertexId v : X)
      if (v >= G.num_vertices()) throw std::invalid_argument("vertex subset is not contained in the vertex set");
    block_sets.emplace_back(X.begin(), X.end());
    out.neighbor_sets.push_back(closed_neighbor_set(G, induced_edges(G, X)));
  }

  bool all = true;
  Condition size_cond{"block sizes >= " + std::to_string(min_block_size), true, Json::array()};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    size_cond.witness.push_back(block_sets[i].size());
    if (block_sets[i].size() < min_block_size) size_cond.holds = false;
  }
  all = all && size_cond.holds;
  out.conditions.push_back(std::move(size_cond));

  Condition p1{"P1: ([n], F_i) locally h-rigid", true, Json::array()};
  Condition p2{"P2: G[X_i] locally h-rigid", true, Json::array()};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const LocalRigidity r1 = is_locally_rigid(h, G.with_edges(out.neighbor_sets[i]), cfg);
    p1.witness.push_back({{"block", i + 1}, {"edges", out.neighbor_sets[i].size()}, {"rank", r1.jacobian_rank},
                          {"reference", r1.reference_rank}});
    p1.holds = p1.holds && r1.rigid;

    const Hypergraph sub = induced_subhypergraph(G, blocks[i]);
    const LocalRigidity r2 = is_locally_rigid(h, sub, cfg);
    p2.witness.push_back({{"block", i + 1}, {"edges", sub.num_edges()}, {"rank", r2.jacobian_rank},
                          {"reference", r2.reference_rank}});
    p2.holds = p2.holds && r2.rigid;
  }

  Condition p3{"P3: supp(e - v) not inside X_j for e in F_i, i != j", true, Json::array()};
  constexpr std::size_t kMaxWitnesses = 32;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (i == j) continue;
      for (const auto& e : out.neighbor_sets[i]) {
        for (VertexId v : support(e)) {
          Multiset rest = e.entries();
          rest.erase(std::find(rest.begin(), rest.end(), v));
          const bool inside = std::all_of(rest.begin(), rest.end(), [&](VertexId u) { return block_sets[j].count(u) != 0; });
          if (!inside) continue;
          p3.holds = false;
          if (p3.witness.size() < kMaxWitnesses)
            p3.witness.push_back({{"i", i + 1}, {"j", j + 1}, {"edge", G.label(e)}, {"vertex", G.vertex_names()[v]}});
        }
      }
    }
  }
  all = all && p1.holds && p2.holds && p3.holds;
  out.conditions.push_back(std::move(p1));
  out.conditions.push_back(std::move(p2));
  out.conditions.push_back(std::move(p3));
  out.holds = all;
  return out;
}

SecantReport secant_dimension(const PolyMap& h, const Hypergraph& G, int t, const SamplingConfig& cfg) {
  if (t < 1) throw std::invalid_argument("secant_dimension requires t >= 1");
  SecantReport out;
  out.dimension = generic_rank(sum_copies(h, t), G, cfg).rank;
  const Index single = generic_rank(h, G, cfg).rank;
  out.expected_dimension = std::min<Index>(t * single, static_cast<Index>(G.num_edges()));
  out.defective = out.dimension < out.expected_dimension;
  return out;
}

std::string to_string(ContactVerdict v) {
  switch (v) {
    case ContactVerdict::WeaklyNonDefective: return "weakly-non-defective";
    case ContactVerdict::WeaklyDefective: return "weakly-defective";
    case ContactVerdict::SecantFills: return "contact locus undefined, secant fills F^E";
  }
  return "?";
}

ContactLocusReport contact_locus(const PolyMap& h, const Hypergraph& G, int t, const SamplingConfig& cfg) {
  require_trials(cfg);
  if (t < 1) throw std::invalid_argument("contact_locus requires t >= 1");
  if (!h.is_homogeneous()) throw std::invalid_argument("contact locus requires a homogeneous map");
  const PolyMap g = sum_copies(h, t);
  const int s = h.d();
  const Index side = static_cast<Index>(s) * static_cast<Index>(G.num_vertices());

  struct Outcome {
    Index kernel_size;
    Index stacked_rank;
  };
  std::optional<Outcome> best;
  ContactLocusReport out;
  out.t = t;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const Outcome o = run_trial(cfg, kContactPoints, trial, out.primes, [&](auto tag, std::mt19937_64& rng) {
      using Scalar = typename decltype(tag)::type;
      const PointConfig<Scalar> p = sample_point<Scalar>(rng, g.d(), G.num_vertices());
      const KernelBasis<Scalar> omegas = left_kernel_basis(jacobian(g, G, p));
      if (omegas.dimension() == 0) return Outcome{0, 0};
      // The first coordinate block of p is a point of the contact locus.
      const PointConfig<Scalar> q1 = p.topRows(s);
      std::vector<Matrix<Scalar>> blocks;
      for (Index i = 0; i < omegas.dimension(); ++i) blocks.push_back(alpha_jacobian<Scalar>(h, G, omegas[i], q1));
      return Outcome{omegas.dimension(), rank(vstack<Scalar>(blocks, side))};
    });
    // Generic behaviour: smallest kernel, then largest stacked rank.
    if (!best || o.kernel_size < best->kernel_size ||
        (o.kernel_size == best->kernel_size && o.stacked_rank > best->stacked_rank))
      best = o;
  }
  out.kernel_size = best->kernel_size;
  if (best->kernel_size == 0) {
    out.verdict = ContactVerdict::SecantFills;
    return out;
  }
  out.stacked_rank = best->stacked_rank;
  out.dimension = side - best->stacked_rank;
  out.verdict = out.dimension == 1 ? ContactVerdict::WeaklyNonDefective : ContactVerdict::WeaklyDefective;
  return out;
}

RigidityReport global_rigidity_prod(const Hypergraph& G, int d, const SamplingConfig& cfg) {
  require_trials(cfg);
  if (G.k() < 2) throw std::invalid_argument("global_rigidity_prod requires k >= 2");
  if (d < 1) throw std::invalid_argument("rank d must be >= 1");
  const PolyMap g = sum_copies(h_prod(G.k()), d);
  const std::size_t n = G.num_vertices();

  RigidityReport rep;
  rep.instance = describe(G);
  rep.map = g.name();
  rep.d = d;
  rep.certifying_criterion = "shadow-adjacency kernel criterion";

  const LocalRigidity local = is_locally_rigid(g, G, cfg);
  rep.reference_rank = local.reference_rank;
  rep.locally_rigid = local.rigid ? LocalVerdict::Rigid : LocalVerdict::Flexible;
  rep.notes = local.notes;
  std::vector<std::uint64_t> primes = local.primes;

  const std::vector<Multiset> columns = shadow(G);
  rep.shadow_size = static_cast<long>(columns.size());
  const bool shadow_ok = columns.size() >= n + static_cast<std::size_t>(d);

  struct Outcome {
    Index jacobian_rank = 0;
    Index kernel_size = 0;
    Index stacked_rank = 0;
    Index side_rank = 0;
  };
  Outcome chosen;
  int chosen_trial = -1;
  bool certified = false;
  std::vector<std::uint64_t> global_primes;
  for (int trial = 0; trial < cfg.trials && !certified; ++trial) {
    const Outcome o = run_trial(cfg, kGlobalPoints, trial, global_primes, [&](auto tag, std::mt19937_64& rng) {
      using Scalar = typename decltype(tag)::type;
      const PointConfig<Scalar> p = sample_point<Scalar>(rng, d, n);
      const Matrix<Scalar> J = jacobian(g, G, p);
      Outcome r;
      r.jacobian_rank = rank(J);
      const KernelBasis<Scalar> omegas = left_kernel_basis(J);
      r.kernel_size = omegas.dimension();
      std::vector<Matrix<Scalar>> blocks;
      for (Index i = 0; i < omegas.dimension(); ++i) blocks.push_back(adjacency_matrix<Scalar>(G, columns, omegas[i]));
      if (!blocks.empty()) {
        r.stacked_rank = rank(vstack<Scalar>(blocks, static_cast<Index>(columns.size())));
        r.side_rank = rank(hstack(blocks, static_cast<Index>(n)));
      }
      return r;
    });
    const bool inf = o.jacobian_rank == local.reference_rank;
    const bool kernel_ok = static_cast<Index>(columns.size()) - o.stacked_rank == d;
    // Keep the most generic-looking trial if nothing certifies.
    if (chosen_trial < 0 || o.jacobian_rank > chosen.jacobian_rank) {
      chosen = o;
      chosen_trial = trial;
    }
    if (inf && shadow_ok && kernel_ok) {
      chosen = o;
      chosen_trial = trial;
      certified = true;
    }
  }
  append(primes, global_primes);

  rep.jacobian_rank = chosen.jacobian_rank;
  rep.infinitesimally_rigid_at_p = chosen.jacobian_rank == local.reference_rank;
  rep.kernel_dims = KernelDims{static_cast<long>(n) - static_cast<long>(chosen.side_rank),
                               static_cast<long>(columns.size()) - static_cast<long>(chosen.stacked_rank)};

  rep.conditions.push_back({"infinitesimally g-rigid at p", rep.infinitesimally_rigid_at_p,
                            Json{{"rank", chosen.jacobian_rank}, {"reference", local.reference_rank}, {"trial", chosen_trial}}});
  rep.conditions.push_back({"|shadow| >= |V| + d", shadow_ok,
                            Json{{"shadow", columns.size()}, {"vertices_plus_d", n + static_cast<std::size_t>(d)}}});
  rep.conditions.push_back({"dim of common adjacency kernel == d", rep.kernel_dims->right == d,
                            Json{{"kernel_basis_size", chosen.kernel_size},
                                 {"stacked_adjacency_rank", chosen.stacked_rank},
                                 {"right_kernel_dim", rep.kernel_dims->right},
                                 {"left_kernel_dim", rep.kernel_dims->left},
                                 {"d", d}}});
  rep.globally_rigid = certified ? GlobalVerdict::Rigid : GlobalVerdict::Inconclusive;
  rep.certificate = make_certificate(cfg, std::move(primes));
  return rep;
}

RigidityReport global_verdict_corollary(const PolyMap& h, const Hypergraph& G, int d, const SamplingConfig& cfg,
                                        std::optional<bool> base_assertion) {
  if (!h.is_homogeneous()) throw std::invalid_argument("global_verdict_corollary requires a homogeneous map");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  RigidityReport rep;
  rep.instance = describe(G);
  rep.map = sum_copies(h, d).name();
  rep.d = d * h.d();
  rep.certifying_criterion = "identifiability via 1-tangential weak non-defectiveness";
  rep.notes.push_back("assumes the stabilizer of (d+1)h has dimension (d+1) times that of h");

  std::vector<std::uint64_t> primes;
  const LocalRigidity own = is_locally_rigid(sum_copies(h, d), G, cfg);
  rep.jacobian_rank = own.jacobian_rank;
  rep.reference_rank = own.reference_rank;
  rep.locally_rigid = own.rigid ? LocalVerdict::Rigid : LocalVerdict::Flexible;
  rep.infinitesimally_rigid_at_p = own.rigid;
  append(primes, own.primes);

  const LocalRigidity next = is_locally_rigid(sum_copies(h, d + 1), G, cfg);
  append(primes, next.primes);
  rep.conditions.push_back({"locally (d+1)h-rigid", next.rigid,
                            Json{{"rank", next.jacobian_rank}, {"reference", next.reference_rank}}});

  const ContactLocusReport contact = contact_locus(h, G, 1, cfg);
  append(primes, contact.primes);
  rep.conditions.push_back({"1-tangentially weakly non-defective", contact.verdict == ContactVerdict::WeaklyNonDefective,
                            Json{{"contact_locus_dim", contact.dimension},
                                 {"kernel_size", contact.kernel_size},
                                 {"stacked_rank", contact.stacked_rank},
                                 {"status", to_string(contact.verdict)}}});

  Condition base{"globally h-rigid", false, Json::object()};
  if (G.k() >= 2 && h == h_prod(h.k())) {
    const RigidityReport prod = global_rigidity_prod(G, 1, cfg);
    append(primes, prod.certificate.primes);
    base.holds = prod.globally_rigid == GlobalVerdict::Rigid;
    base.witness = Json{{"source", "shadow-adjacency kernel criterion"}, {"verdict", prod.verdict()}};
  } else if (base_assertion) {
    base.holds = *base_assertion;
    base.witness = Json{{"source", "user assertion"}};
  } else {
    base.witness = Json{{"source", "not asserted"}};
  }
  rep.conditions.push_back(std::move(base));

  const bool all = std::all_of(rep.conditions.begin(), rep.conditions.end(), [](const Condition& c) { return c.holds; });
  rep.globally_rigid = all ? GlobalVerdict::Rigid : GlobalVerdict::Inconclusive;
  rep.certificate = make_certificate(cfg, std::move(primes));
  return rep;
}

RigidityReport analyze_local(const PolyMap& g, const Hypergraph& G, const SamplingConfig& cfg) {
  RigidityReport rep;
  rep.instance = describe(G);
  rep.map = g.name();
  rep.d = g.d();
  const LocalRigidity local = is_locally_rigid(g, G, cfg);
  rep.jacobian_rank = local.jacobian_rank;
  rep.reference_rank = local.reference_rank;
  rep.locally_rigid = local.rigid ? LocalVerdict::Rigid : LocalVerdict::Flexible;
  rep.infinitesimally_rigid_at_p = local.rigid;
  rep.conditions.push_back({"generic rank equals complete-hypergraph reference rank", local.rigid,
                            Json{{"rank", local.jacobian_rank}, {"reference", local.reference_rank}}});
  rep.notes = local.notes;
  rep.certificate = make_certificate(cfg, local.primes);
  return rep;
}

}  // namespace rigidcheck
