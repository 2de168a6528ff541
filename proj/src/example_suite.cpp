#include "rigidcheck/example_suite.hpp"

#include <functional>
#include <iomanip>
#include <sstream>

#include "rigidcheck/error.hpp"

namespace rigidcheck {

bool ExampleResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.pass; });
}

Matrix<Rational> shadow_monomial_jacobian(const Hypergraph& G, const Vector<Rational>& x) {
  const std::vector<Multiset> rows = shadow(G);
  Matrix<Rational> B = Matrix<Rational>::Zero(static_cast<Index>(rows.size()), static_cast<Index>(G.num_vertices()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Multiset& sigma = rows[r];
    for (std::size_t pos = 0; pos < sigma.size(); ++pos) {
      // Differentiate one occurrence at a time; repeated vertices accumulate.
      Rational term = 1;
      for (std::size_t other = 0; other < sigma.size(); ++other)
        if (other != pos) term *= x(sigma[other]);
      B(static_cast<Index>(r), sigma[pos]) += term;
    }
  }
  return B;
}

namespace {

constexpr std::uint64_t kExamplePoints = 0x4558414d;
constexpr int kSymbolicSamples = 10;

Rational random_rational(std::mt19937_64& rng) {
  for (;;) {
    const Rational q(Integer(uniform_int(rng, -kSampleBound, kSampleBound)), Integer(uniform_int(rng, 1, 1024)));
    if (q != 0) return q;
  }
}

Vector<Rational> random_vector(std::mt19937_64& rng, Index n) {
  Vector<Rational> v(n);
  for (Index i = 0; i < n; ++i) v(i) = random_rational(rng);
  return v;
}

// Empty string when equal, otherwise the first differing entry.
std::string first_mismatch(const Matrix<Rational>& actual, const Matrix<Rational>& expected) {
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols())
    return "shape " + std::to_string(actual.rows()) + "x" + std::to_string(actual.cols()) + " vs " +
           std::to_string(expected.rows()) + "x" + std::to_string(expected.cols());
  for (Index i = 0; i < actual.rows(); ++i)
    for (Index j = 0; j < actual.cols(); ++j)
      if (actual(i, j) != expected(i, j))
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + actual(i, j).str() + " vs " +
               expected(i, j).str();
  return {};
}

Matrix<Rational> rows_of(std::initializer_list<std::initializer_list<Rational>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Matrix<Rational> m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& value : row) m(i, j++) = value;
    ++i;
  }
  return m;
}

class CaseBuilder {
 public:
  CaseBuilder(std::string id, std::string title) {
    result_.id = std::move(id);
    result_.title = std::move(title);
  }

  void equal(const std::string& name, const Json& expected, const Json& actual) {
    result_.checks.push_back({name, expected, actual, expected == actual});
  }

  // Compares `actual(sample)` against `expected(sample)` on several exact
  // random samples; the sample generator draws whatever the formula needs.
  void matrices_agree(const std::string& name, std::mt19937_64& rng,
                      const std::function<std::pair<Matrix<Rational>, Matrix<Rational>>(std::mt19937_64&)>& sample) {
    std::string failure;
    for (int s = 0; s < kSymbolicSamples && failure.empty(); ++s) {
      const auto [actual, expected] = sample(rng);
      const std::string diff = first_mismatch(actual, expected);
      if (!diff.empty()) failure = "sample " + std::to_string(s + 1) + ", " + diff;
    }
    const std::string ok = "agree at " + std::to_string(kSymbolicSamples) + " exact samples";
    equal(name, ok, failure.empty() ? ok : failure);
  }

  void local(const std::string& label, const PolyMap& g, const Hypergraph& G, const SamplingConfig& cfg, Index rank,
             Index reference) {
    const LocalRigidity r = is_locally_rigid(g, G, cfg);
    equal(label + ": generic Jacobian rank", rank, r.jacobian_rank);
    equal(label + ": reference rank", reference, r.reference_rank);
    equal(label + ": locally rigid", rank == reference, r.rigid);
  }

  ExampleResult take() { return std::move(result_); }

 private:
  ExampleResult result_;
};

std::mt19937_64 case_stream(const SamplingConfig& cfg, std::uint64_t index) {
  return derive_stream(cfg.seed, kExamplePoints, index);
}

ExampleResult square_with_diagonal(const SamplingConfig& cfg) {
  CaseBuilder c("ex3.4", "square with one diagonal: rigid in the plane, flexible in space");
  const Hypergraph G = Hypergraph::from_names({"1", "2", "3", "4"}, 2, {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"1", "4"}, {"1", "3"}});
  c.local("dim 2", sq_euclid(2), G, cfg, 5, 5);
  c.local("dim 3", sq_euclid(3), G, cfg, 5, 6);
  return c.take();
}

ExampleResult four_cycle(const SamplingConfig& cfg) {
  CaseBuilder c("ex3.5", "4-cycle in the plane is flexible");
  const Hypergraph G = Hypergraph::from_names({"1", "2", "3", "4"}, 2, {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"1", "4"}});
  c.local("dim 2", sq_euclid(2), G, cfg, 4, 5);
  // The unit square placement is no better than a generic one.
  PointConfig<Rational> p(2, 4);
  p << 0, 0, 1, 1,
       0, 1, 1, 0;
  c.equal("Jacobian rank at the unit square", 4, rank(jacobian(sq_euclid(2), G, p)));
  return c.take();
}

ExampleResult triangle(const SamplingConfig& cfg) {
  CaseBuilder c("ex3.8", "triangle: rigidity matrix and rank");
  const Hypergraph G = Hypergraph::from_names({"1", "2", "3"}, 2, {{"1", "2"}, {"1", "3"}, {"2", "3"}});
  c.local("dim 2", sq_euclid(2), G, cfg, 3, 3);
  auto rng = case_stream(cfg, 3);
  c.matrices_agree("dim 1 Jacobian is twice the rigidity matrix", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 3);
    PointConfig<Rational> p = x.transpose();
    const Rational two(2);
    Matrix<Rational> expected = rows_of({{x(0) - x(1), x(1) - x(0), 0},
                                         {x(0) - x(2), 0, x(2) - x(0)},
                                         {0, x(1) - x(2), x(2) - x(1)}});
    return std::pair{jacobian(sq_euclid(1), G, p), Matrix<Rational>(two * expected)};
  });
  return c.take();
}

ExampleResult weighted_laplacian(const SamplingConfig& cfg) {
  CaseBuilder c("ex4.11", "4-cycle, squared distance: the alpha-Jacobian is a weighted Laplacian");
  const Hypergraph G = Hypergraph::from_names({"1", "2", "3", "4"}, 2, {{"1", "2"}, {"1", "4"}, {"2", "3"}, {"3", "4"}});
  const PolyMap h = sq_euclid(1);
  // Cycle weights v1..v4 on 12, 23, 34, 41; canonical edge order is 12, 14, 23, 34.
  auto laplacian = [](const Vector<Rational>& w) {
    const Rational v1 = w(0), v2 = w(2), v3 = w(3), v4 = w(1);
    return rows_of({{2 * v1 + 2 * v4, -2 * v1, 0, -2 * v4},
                    {-2 * v1, 2 * v1 + 2 * v2, -2 * v2, 0},
                    {0, -2 * v2, 2 * v2 + 2 * v3, -2 * v3},
                    {-2 * v4, 0, -2 * v3, 2 * v3 + 2 * v4}});
  };
  auto rng = case_stream(cfg, 11);
  c.matrices_agree("alpha-Jacobian equals the displayed matrix (arbitrary weights)", rng, [&](std::mt19937_64& r) {
    const PointConfig<Rational> q = random_vector(r, 4).transpose();
    const Vector<Rational> w = random_vector(r, 4);
    return std::pair{alpha_jacobian(h, G, w, q), laplacian(w)};
  });
  c.matrices_agree("alpha-Jacobian equals the displayed matrix (kernel weights)", rng, [&](std::mt19937_64& r) {
    const PointConfig<Rational> q = random_vector(r, 4).transpose();
    const KernelBasis<Rational> stresses = left_kernel_basis(jacobian(h, G, q));
    const Vector<Rational> w = stresses.dimension() == 1 ? Vector<Rational>(stresses[0]) : Vector<Rational>::Zero(4);
    return std::pair{alpha_jacobian(h, G, w, q), laplacian(w)};
  });
  bool rows_zero = true;
  bool kernel_contains_q = true;
  for (int s = 0; s < kSymbolicSamples; ++s) {
    const PointConfig<Rational> q = random_vector(rng, 4).transpose();
    const KernelBasis<Rational> stresses = left_kernel_basis(jacobian(h, G, q));
    if (stresses.dimension() != 1) {
      kernel_contains_q = false;
      continue;
    }
    const Matrix<Rational> H = alpha_jacobian(h, G, Vector<Rational>(stresses[0]), q);
    rows_zero = rows_zero && (H * Vector<Rational>::Ones(4)).isZero();
    kernel_contains_q = kernel_contains_q && (H * q.transpose()).isZero();
  }
  c.equal("row sums vanish", true, rows_zero);
  c.equal("configuration lies in the kernel for stress weights", true, kernel_contains_q);
  return c.take();
}

ExampleResult inner_product_triangle(const SamplingConfig& cfg) {
  CaseBuilder c("ex4.12", "triangle pattern, scalar product: the alpha-Jacobian is the weighted adjacency matrix");
  const Hypergraph G = Hypergraph::from_names({"1", "2", "3"}, 2, {{"1", "2"}, {"1", "3"}, {"2", "3"}});
  const PolyMap h = inner_product(1);
  auto rng = case_stream(cfg, 12);
  c.matrices_agree("alpha-Jacobian equals [[0,v1,v2],[v1,0,v3],[v2,v3,0]]", rng, [&](std::mt19937_64& r) {
    const PointConfig<Rational> q = random_vector(r, 3).transpose();
    const Vector<Rational> w = random_vector(r, 3);
    return std::pair{alpha_jacobian(h, G, w, q), rows_of({{0, w(0), w(1)}, {w(0), 0, w(2)}, {w(1), w(2), 0}})};
  });
  c.matrices_agree("alpha-Jacobian equals A_{G,w}", rng, [&](std::mt19937_64& r) {
    const PointConfig<Rational> q = random_vector(r, 3).transpose();
    const Vector<Rational> w = random_vector(r, 3);
    return std::pair{alpha_jacobian(h, G, w, q), adjacency_matrix(G, w)};
  });
  return c.take();
}

ExampleResult rank_one_cubic(const SamplingConfig& cfg) {
  CaseBuilder c("ex4.13", "cubic rank-one pattern {aaa, aab, abc}: Hessian factors through the adjacency matrix");
  const Hypergraph G = compact_hypergraph("abc", "aaa aab abc");
  const PolyMap h = h_prod(3);
  c.equal("shadow", Json::array({"aa", "ab", "ac", "bc"}), [&] {
    Json j = Json::array();
    for (const auto& s : shadow(G)) j.push_back(G.label(s));
    return j;
  }());
  auto rng = case_stream(cfg, 13);
  c.matrices_agree("measurement is (x_a^3, x_a^2 x_b, x_a x_b x_c)", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 3);
    const Matrix<Rational> f = measurement(h, G, PointConfig<Rational>(x.transpose()));
    return std::pair{f, rows_of({{x(0) * x(0) * x(0)}, {x(0) * x(0) * x(1)}, {x(0) * x(1) * x(2)}})};
  });
  c.matrices_agree("Jacobian matches the displayed matrix", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 3);
    const Rational a = x(0), b = x(1), cc = x(2);
    return std::pair{jacobian(h, G, PointConfig<Rational>(x.transpose())),
                     rows_of({{3 * a * a, 0, 0}, {2 * a * b, a * a, 0}, {b * cc, a * cc, a * b}})};
  });
  c.matrices_agree("adjacency matrix matches [[3v1,2v2,0,v3],[v2,0,v3,0],[0,v3,0,0]]", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> w = random_vector(r, 3);
    return std::pair{adjacency_matrix(G, w), rows_of({{3 * w(0), 2 * w(1), 0, w(2)}, {w(1), 0, w(2), 0}, {0, w(2), 0, 0}})};
  });
  c.matrices_agree("alpha-Jacobian equals adjacency times shadow-monomial Jacobian", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 3);
    const Vector<Rational> w = random_vector(r, 3);
    return std::pair{alpha_jacobian(h, G, w, PointConfig<Rational>(x.transpose())),
                     Matrix<Rational>(adjacency_matrix(G, w) * shadow_monomial_jacobian(G, x))};
  });
  return c.take();
}

ExampleResult four_vertex_cubic(const SamplingConfig& cfg) {
  CaseBuilder c("ex4.14", "cubic pattern {aaa, aab, abc, bcd} at rank two: Hessian factorization");
  const Hypergraph G = compact_hypergraph("abcd", "aaa aab abc bcd");
  const PolyMap h = h_prod(3);
  c.equal("shadow size", 6, shadow(G).size());
  auto rng = case_stream(cfg, 14);
  c.matrices_agree("two-copy measurement on abc is x_a1 x_b1 x_c1 + x_a2 x_b2 x_c2", rng, [&](std::mt19937_64& r) {
    PointConfig<Rational> p(2, 4);
    for (Index v = 0; v < 4; ++v) p.col(v) = random_vector(r, 2);
    const Vector<Rational> f = measurement(sum_copies(h, 2), G, p);
    const Rational expected = p(0, 0) * p(0, 1) * p(0, 2) + p(1, 0) * p(1, 1) * p(1, 2);
    return std::pair{Matrix<Rational>(f.segment(2, 1)), rows_of({{expected}})};
  });
  c.matrices_agree("h-block Jacobian matches the displayed matrix", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 4);
    const Rational a = x(0), b = x(1), cc = x(2), d = x(3);
    return std::pair{jacobian(h, G, PointConfig<Rational>(x.transpose())),
                     rows_of({{3 * a * a, 0, 0, 0},
                              {2 * a * b, a * a, 0, 0},
                              {b * cc, a * cc, a * b, 0},
                              {0, cc * d, b * d, b * cc}})};
  });
  c.matrices_agree("alpha-Jacobian matches the displayed 4x4 matrix", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 4);
    const Vector<Rational> v = random_vector(r, 4);
    const Rational a = x(0), b = x(1), cc = x(2), d = x(3);
    return std::pair{alpha_jacobian(h, G, v, PointConfig<Rational>(x.transpose())),
                     rows_of({{6 * v(0) * a + 2 * v(1) * b, 2 * v(1) * a + v(2) * cc, v(2) * b, 0},
                              {2 * v(1) * a + v(2) * cc, 0, v(2) * a + v(3) * d, v(3) * cc},
                              {v(2) * b, v(2) * a + v(3) * d, 0, v(3) * b},
                              {0, v(3) * cc, v(3) * b, 0}})};
  });
  c.matrices_agree("adjacency matrix matches the displayed 4x6 matrix", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> v = random_vector(r, 4);
    return std::pair{adjacency_matrix(G, v), rows_of({{3 * v(0), 2 * v(1), 0, v(2), 0, 0},
                                                      {v(1), 0, v(2), 0, 0, v(3)},
                                                      {0, v(2), 0, 0, v(3), 0},
                                                      {0, 0, 0, v(3), 0, 0}})};
  });
  c.matrices_agree("alpha-Jacobian equals adjacency times shadow-monomial Jacobian", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 4);
    const Vector<Rational> v = random_vector(r, 4);
    return std::pair{alpha_jacobian(h, G, v, PointConfig<Rational>(x.transpose())),
                     Matrix<Rational>(adjacency_matrix(G, v) * shadow_monomial_jacobian(G, x))};
  });
  const Vector<Rational> x = random_vector(rng, 4);
  c.equal("shadow-monomial Jacobian has full column rank", 4, rank(shadow_monomial_jacobian(G, x)));
  c.equal("left kernel of the h-block Jacobian", 0, left_kernel_basis(jacobian(h, G, PointConfig<Rational>(x.transpose()))).dimension());
  return c.take();
}

// The single kernel covector of the Jacobian at (x_a, x_b), scaled so that
// its entry on `unit_edge` is 1.
Vector<Rational> normalized_stress(const Hypergraph& G, const Vector<Rational>& x, std::size_t unit_edge) {
  const KernelBasis<Rational> kernel = left_kernel_basis(jacobian(h_prod(G.k()), G, PointConfig<Rational>(x.transpose())));
  if (kernel.dimension() != 1) return Vector<Rational>::Zero(static_cast<Index>(G.num_edges()));
  Vector<Rational> w = kernel[0];
  const Rational scale = w(static_cast<Index>(unit_edge));
  if (scale == 0) return Vector<Rational>::Zero(w.size());
  return w / scale;
}

void global_checks(CaseBuilder& c, const Hypergraph& G, const SamplingConfig& cfg, bool expect_rigid, long right_kernel) {
  const RigidityReport rep = global_rigidity_prod(G, 1, cfg);
  c.equal("Jacobian rank", 2, rep.jacobian_rank);
  c.equal("locally rigid", true, rep.locally_rigid == LocalVerdict::Rigid);
  c.equal("|shadow| >= |V| + d", true, rep.conditions.at(1).holds);
  c.equal("common adjacency kernel dimension", right_kernel, rep.kernel_dims ? rep.kernel_dims->right : -1);
  c.equal("verdict", expect_rigid ? "globally g-rigid (shadow-adjacency kernel criterion)" : "locally g-rigid; global rigidity inconclusive",
          rep.verdict());
}

ExampleResult quartic_rigid(const SamplingConfig& cfg) {
  CaseBuilder c("ex4.17", "quartic pattern {aaaa, aaab, bbbb}: certified globally rigid");
  const Hypergraph G = compact_hypergraph("ab", "aaaa aaab bbbb");
  const PolyMap h = h_prod(4);
  auto rng = case_stream(cfg, 17);
  c.matrices_agree("Jacobian matches [[4a^3,0],[3a^2 b,a^3],[0,4b^3]]", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 2);
    const Rational a = x(0), b = x(1);
    return std::pair{jacobian(h, G, PointConfig<Rational>(x.transpose())),
                     rows_of({{4 * a * a * a, 0}, {3 * a * a * b, a * a * a}, {0, 4 * b * b * b}})};
  });
  c.equal("exact Jacobian rank", 2, rank(jacobian(h, G, PointConfig<Rational>(random_vector(rng, 2).transpose()))));
  c.equal("shadow size", 3, shadow(G).size());
  c.matrices_agree("stress normalized on aaab is (-3b/4a, 1, -a^3/4b^3)", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 2);
    const Rational a = x(0), b = x(1);
    return std::pair{Matrix<Rational>(normalized_stress(G, x, 1)),
                     rows_of({{Rational(-3) * b / (4 * a)}, {1}, {-(a * a * a) / (4 * b * b * b)}})};
  });
  c.matrices_agree("A_{G,w} matches [[-3b/a, 3, 0],[1, 0, -a^3/b^3]]", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 2);
    const Rational a = x(0), b = x(1);
    return std::pair{adjacency_matrix(G, normalized_stress(G, x, 1)),
                     rows_of({{Rational(-3) * b / a, 3, 0}, {1, 0, -(a * a * a) / (b * b * b)}})};
  });
  c.equal("rank of A_{G,w}", 2, rank(adjacency_matrix(G, normalized_stress(G, random_vector(rng, 2), 1))));
  global_checks(c, G, cfg, true, 1);
  return c.take();
}

ExampleResult quartic_inconclusive(const SamplingConfig& cfg) {
  CaseBuilder c("ex4.18", "quartic pattern {aaaa, aaab, abbb}: kernel criterion fails");
  const Hypergraph G = compact_hypergraph("ab", "aaaa aaab abbb");
  auto rng = case_stream(cfg, 18);
  c.equal("shadow size", 4, shadow(G).size());
  c.matrices_agree("stress normalized on abbb is (2b^3/a^3, -3b^2/a^2, 1)", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 2);
    const Rational a = x(0), b = x(1);
    return std::pair{Matrix<Rational>(normalized_stress(G, x, 2)),
                     rows_of({{2 * b * b * b / (a * a * a)}, {Rational(-3) * b * b / (a * a)}, {1}})};
  });
  c.matrices_agree("A_{G,w} matches [[8b^3/a^3, -9b^2/a^2, 0, 1],[-3b^2/a^2, 0, 3, 0]]", rng, [&](std::mt19937_64& r) {
    const Vector<Rational> x = random_vector(r, 2);
    const Rational a = x(0), b = x(1);
    return std::pair{adjacency_matrix(G, normalized_stress(G, x, 2)),
                     rows_of({{8 * b * b * b / (a * a * a), Rational(-9) * b * b / (a * a), 0, 1},
                              {Rational(-3) * b * b / (a * a), 0, 3, 0}})};
  });
  c.equal("rank of A_{G,w}", 2, rank(adjacency_matrix(G, normalized_stress(G, random_vector(rng, 2), 2))));
  global_checks(c, G, cfg, false, 2);
  return c.take();
}

struct Entry {
  const char* id;
  ExampleResult (*run)(const SamplingConfig&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"ex3.4", square_with_diagonal},   {"ex3.5", four_cycle},          {"ex3.8", triangle},
      {"ex4.11", weighted_laplacian},    {"ex4.12", inner_product_triangle}, {"ex4.13", rank_one_cubic},
      {"ex4.14", four_vertex_cubic},     {"ex4.17", quartic_rigid},      {"ex4.18", quartic_inconclusive},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.emplace_back(e.id);
    return out;
  }();
  return ids;
}

ExampleResult run_example(const std::string& id, const SamplingConfig& cfg) {
  for (const auto& e : registry())
    if (id == e.id) return e.run(cfg);
  std::string known;
  for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + std::string(e.id);
  throw InputError("unknown example '" + id + "' (known: " + known + ")");
}

std::vector<ExampleResult> run_examples(const SamplingConfig& cfg, const std::string& only) {
  if (!only.empty()) return {run_example(only, cfg)};
  std::vector<ExampleResult> out;
  for (const auto& e : registry()) out.push_back(e.run(cfg));
  return out;
}

Json to_json(const std::vector<ExampleResult>& results, const SamplingConfig& cfg) {
  Json cases = Json::array();
  bool all = true;
  for (const auto& r : results) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
      checks.push_back(Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    cases.push_back(Json{{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"checks", std::move(checks)}});
    all = all && r.pass();
  }
  return Json{{"seed", cfg.seed}, {"domain", to_string(cfg.domain)}, {"trials", cfg.trials}, {"pass", all}, {"cases", std::move(cases)}};
}

std::string to_table(const std::vector<ExampleResult>& results) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : results) {
    os << (r.pass() ? "PASS" : "FAIL") << "  " << std::left << std::setw(7) << r.id << ' ' << r.title << '\n';
    for (const auto& c : r.checks) {
      os << "        " << (c.pass ? "ok  " : "BAD ") << c.name << ": " << c.actual.dump();
      if (!c.pass) os << " (expected " << c.expected.dump() << ")";
      os << '\n';
    }
    if (r.pass()) ++passed;
  }
  os << passed << "/" << results.size() << " cases passed\n";
  return os.str();
}

}  // namespace rigidcheck
