#pragma once

// Measurement maps, their Jacobians, and the rigidity tests built on them.
//
// Column layout of every configuration-space matrix: vertex-major, so the
// coordinate j of vertex v sits at column v*d + j.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rigidcheck/field.hpp"
#include "rigidcheck/hypergraph.hpp"
#include "rigidcheck/linalg.hpp"
#include "rigidcheck/polymap.hpp"
#include "rigidcheck/report.hpp"

namespace rigidcheck {

/// Point configuration p: V -> F^d stored as a d x |V| matrix (column v = p(v)).
template <class Scalar>
using PointConfig = Matrix<Scalar>;

inline constexpr long long kSampleBound = 1LL << 20;

struct SamplingConfig {
  std::uint64_t seed = 20240917;
  int trials = 3;
  Domain domain = Domain::ModP;
};

/// Uniform integer coordinates in [-2^20, 2^20].
template <class Scalar>
PointConfig<Scalar> sample_point(std::mt19937_64& rng, int d, std::size_t n) {
  PointConfig<Scalar> p(d, static_cast<Index>(n));
  for (Index v = 0; v < p.cols(); ++v)
    for (Index j = 0; j < p.rows(); ++j)
      p(j, v) = FieldTraits<Scalar>::from_integer(uniform_int(rng, -kSampleBound, kSampleBound));
  return p;
}

/// The vertex sequence at which g is evaluated on edge e: sorted for
/// symmetric maps, input order otherwise.
inline const std::vector<VertexId>& evaluation_order(const PolyMap& g, const MultisetEdge& e) {
  return g.symmetry() == Symmetry::Symmetric ? e.entries() : e.ordered();
}

namespace detail {

inline void check_shapes(const PolyMap& g, const Hypergraph& G, Index rows, Index cols) {
  if (g.k() != G.k()) throw std::invalid_argument("map arity " + std::to_string(g.k()) + " != hypergraph order " + std::to_string(G.k()));
  if (rows != g.d()) throw std::invalid_argument("point dimension " + std::to_string(rows) + " != map dimension " + std::to_string(g.d()));
  if (cols != static_cast<Index>(G.num_vertices())) throw std::invalid_argument("point configuration does not cover every vertex");
}

template <class Scalar>
Matrix<Scalar> edge_arguments(const std::vector<VertexId>& order, const PointConfig<Scalar>& p) {
  Matrix<Scalar> args(p.rows(), static_cast<Index>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) args.col(static_cast<Index>(i)) = p.col(order[i]);
  return args;
}

}  // namespace detail

/// f_{g,G}(p): one entry per edge, in canonical edge order.
template <class Scalar>
Vector<Scalar> measurement(const PolyMap& g, const Hypergraph& G, const PointConfig<Scalar>& p) {
  detail::check_shapes(g, G, p.rows(), p.cols());
  Vector<Scalar> out(static_cast<Index>(G.num_edges()));
  for (std::size_t e = 0; e < G.num_edges(); ++e)
    out(static_cast<Index>(e)) = g(detail::edge_arguments(evaluation_order(g, G.edges()[e]), p));
  return out;
}

/// |E| x d|V| Jacobian of the measurement map. Positions of an edge that hold
/// the same vertex accumulate into that vertex's columns.
template <class Scalar>
Matrix<Scalar> jacobian(const PolyMap& g, const Hypergraph& G, const PointConfig<Scalar>& p) {
  detail::check_shapes(g, G, p.rows(), p.cols());
  const int k = g.k();
  const int d = g.d();
  std::vector<PolyMap> partials;
  partials.reserve(static_cast<std::size_t>(k * d));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < d; ++j) partials.push_back(g.partial(i, j));

  Matrix<Scalar> J = Matrix<Scalar>::Zero(static_cast<Index>(G.num_edges()), static_cast<Index>(d * G.num_vertices()));
  for (std::size_t e = 0; e < G.num_edges(); ++e) {
    const auto& order = evaluation_order(g, G.edges()[e]);
    const Matrix<Scalar> args = detail::edge_arguments(order, p);
    for (int i = 0; i < k; ++i) {
      const VertexId v = order[static_cast<std::size_t>(i)];
      for (int j = 0; j < d; ++j) {
        const auto& dg = partials[static_cast<std::size_t>(i * d + j)];
        if (dg.polynomial().is_zero()) continue;
        J(static_cast<Index>(e), static_cast<Index>(v) * d + j) += dg(args);
      }
    }
  }
  return J;
}

/// Hessian of w . f_{h,G} at q: the Jacobian of the polynomial system whose
/// zero set is {q : w in ker Jac f_{h,G}(q)^T}. Square of side s|V|, symmetric.
template <class Scalar>
Matrix<Scalar> alpha_jacobian(const PolyMap& h, const Hypergraph& G, const Vector<Scalar>& w, const PointConfig<Scalar>& q) {
  detail::check_shapes(h, G, q.rows(), q.cols());
  if (w.size() != static_cast<Index>(G.num_edges())) throw std::invalid_argument("edge covector has the wrong length");
  const int k = h.k();
  const int s = h.d();
  const std::size_t nv = static_cast<std::size_t>(k * s);
  std::vector<Polynomial> second(nv * nv);
  for (std::size_t a = 0; a < nv; ++a) {
    const Polynomial da = h.polynomial().derivative(a);
    for (std::size_t b = a; b < nv; ++b) {
      second[a * nv + b] = da.derivative(b);
      second[b * nv + a] = second[a * nv + b];
    }
  }

  const Index side = static_cast<Index>(s * G.num_vertices());
  Matrix<Scalar> H = Matrix<Scalar>::Zero(side, side);
  for (std::size_t e = 0; e < G.num_edges(); ++e) {
    const Scalar weight = w(static_cast<Index>(e));
    if (FieldTraits<Scalar>::is_zero(weight)) continue;
    const auto& order = evaluation_order(h, G.edges()[e]);
    const Vector<Scalar> args = detail::edge_arguments(order, q).reshaped();
    for (int i1 = 0; i1 < k; ++i1) {
      for (int a = 0; a < s; ++a) {
        const std::size_t x1 = static_cast<std::size_t>(i1 * s + a);
        const Index row = static_cast<Index>(order[static_cast<std::size_t>(i1)]) * s + a;
        for (int i2 = 0; i2 < k; ++i2) {
          for (int b = 0; b < s; ++b) {
            const Polynomial& poly = second[x1 * nv + static_cast<std::size_t>(i2 * s + b)];
            if (poly.is_zero()) continue;
            const Index col = static_cast<Index>(order[static_cast<std::size_t>(i2)]) * s + b;
            H(row, col) += weight * poly.evaluate(args);
          }
        }
      }
    }
  }
  return H;
}

/// |V| x |shadow| weighted adjacency matrix: entry (v, sigma) is
/// m_e(v) w(e) when e = sigma + v is an edge (times sign_of(e, v) if signed).
template <class Scalar>
Matrix<Scalar> adjacency_matrix(const Hypergraph& G, const std::vector<Multiset>& columns, const Vector<Scalar>& w,
                                bool signed_variant = false) {
  if (w.size() != static_cast<Index>(G.num_edges())) throw std::invalid_argument("edge covector has the wrong length");
  Matrix<Scalar> A = Matrix<Scalar>::Zero(static_cast<Index>(G.num_vertices()), static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (VertexId v = 0; v < G.num_vertices(); ++v) {
      std::vector<VertexId> ids = columns[c];
      ids.insert(std::upper_bound(ids.begin(), ids.end(), v), v);
      const auto idx = G.edge_index(MultisetEdge(ids));
      if (!idx) continue;
      const MultisetEdge& e = G.edges()[*idx];
      Scalar value = FieldTraits<Scalar>::from_integer(multiplicity(e, v)) * w(static_cast<Index>(*idx));
      if (signed_variant && sign_of(e, v) < 0) value = -value;
      A(v, static_cast<Index>(c)) = value;
    }
  }
  return A;
}

template <class Scalar>
Matrix<Scalar> adjacency_matrix(const Hypergraph& G, const Vector<Scalar>& w, bool signed_variant = false) {
  return adjacency_matrix(G, shadow(G), w, signed_variant);
}

// ---------------------------------------------------------------------------
// Randomized, certified rank tests.

struct RankResult {
  Index rank = 0;
  std::vector<Index> trial_ranks;
  std::vector<std::uint64_t> primes;
};

/// Max over trials of rank Jac f_{g,G}(p) at random integer points.
RankResult generic_rank(const PolyMap& g, const Hypergraph& G, const SamplingConfig& cfg);

struct LocalRigidity {
  bool rigid = false;
  Index jacobian_rank = 0;
  Index reference_rank = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::string> notes;
};

/// Compares the generic rank of G against the complete k-uniform hypergraph
/// on the same vertex count.
LocalRigidity is_locally_rigid(const PolyMap& g, const Hypergraph& G, const SamplingConfig& cfg);

/// Generic reference rank of the complete hypergraph with |V| vertices.
RankResult reference_rank(const PolyMap& g, std::size_t num_vertices, const SamplingConfig& cfg);

/// Rank of the Jacobian at an explicit p against the generic reference rank.
template <class Scalar>
bool is_infinitesimally_rigid_at(const PolyMap& g, const Hypergraph& G, const PointConfig<Scalar>& p, Index reference,
                                 Index* gap = nullptr) {
  const Index r = rank(jacobian(g, G, p));
  if (gap != nullptr) *gap = reference - r;
  return r == reference;
}

template <class Scalar>
bool is_infinitesimally_rigid_at(const PolyMap& g, const Hypergraph& G, const PointConfig<Scalar>& p,
                                 const SamplingConfig& cfg = {}) {
  return is_infinitesimally_rigid_at(g, G, p, reference_rank(g, G.num_vertices(), cfg).rank);
}

struct PackingReport {
  bool holds = false;
  std::vector<EdgeSet> neighbor_sets;  // F_i
  std::vector<Condition> conditions;
  std::vector<std::string> notes;
};

/// Packing-type sufficient condition for local rigidity of G under the t-fold
/// sum of a multilinear form h. `min_block_size` lower-bounds |X_i|.
PackingReport packing_check(const PolyMap& h, int t, const Hypergraph& G, const std::vector<std::vector<VertexId>>& blocks,
                            const SamplingConfig& cfg, std::size_t min_block_size = 1);

struct SecantReport {
  Index dimension = 0;
  Index expected_dimension = 0;
  bool defective = false;
};

/// Dimension of the t-th secant of the closure of im f_{h,G}, realized as the
/// generic Jacobian rank of the t-fold sum.
SecantReport secant_dimension(const PolyMap& h, const Hypergraph& G, int t, const SamplingConfig& cfg);

enum class ContactVerdict { WeaklyNonDefective, WeaklyDefective, SecantFills };

std::string to_string(ContactVerdict v);

struct ContactLocusReport {
  int t = 0;
  Index kernel_size = 0;
  Index stacked_rank = 0;
  Index dimension = 0;
  ContactVerdict verdict = ContactVerdict::SecantFills;
  std::vector<std::uint64_t> primes;
};

/// Tangent dimension of the t-tangential contact locus at the first block of a
/// generic decomposition point.
ContactLocusReport contact_locus(const PolyMap& h, const Hypergraph& G, int t, const SamplingConfig& cfg);

/// Sufficient test for global rigidity under the sum of d copies of the
/// product map: infinitesimal rigidity at p, |shadow| >= |V| + d, and the
/// common kernel of the weighted adjacency matrices has dimension d.
RigidityReport global_rigidity_prod(const Hypergraph& G, int d, const SamplingConfig& cfg);

/// Sufficient test for global rigidity under dh: local (d+1)h-rigidity, 1-tangential
/// weak non-defectiveness of h, and global h-rigidity (certified for the
/// product map, otherwise taken from `base_assertion`).
RigidityReport global_verdict_corollary(const PolyMap& h, const Hypergraph& G, int d, const SamplingConfig& cfg,
                                        std::optional<bool> base_assertion = std::nullopt);

/// Local analysis only (no global certificate is attempted).
RigidityReport analyze_local(const PolyMap& g, const Hypergraph& G, const SamplingConfig& cfg);

}  // namespace rigidcheck
