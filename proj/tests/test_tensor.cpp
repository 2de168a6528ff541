#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rigidcheck/error.hpp"
#include "rigidcheck/tensor.hpp"

using namespace rigidcheck;

namespace {

PartialSymmetricTensor parse(const std::string& text) {
  std::istringstream in(text);
  return parse_tensor(in);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("tensor file parsing") {
  const PartialSymmetricTensor T = parse("# comment\n4 2 1\n2 1 1 1 -1.5\n1 1 1 1 1/4\n2 2 2 2 ?\n");
  CHECK(T.k == 4);
  CHECK(T.n == 2);
  CHECK(T.d == 1);
  REQUIRE(T.entries.size() == 3);
  CHECK(T.entries.at(Multiset{0, 0, 0, 1}) == -1.5);
  CHECK(T.entries.at(Multiset{0, 0, 0, 0}) == 0.25);
  CHECK_FALSE(T.entries.at(Multiset{1, 1, 1, 1}).has_value());
  CHECK_FALSE(T.has_values());
  CHECK(parse("2 2 1\n1 2 3\n").has_values());
  CHECK_FALSE(parse("2 2 1\n1 2\n").has_values());

  CHECK(error_of("4 two 1\n").find("line 1") != std::string::npos);
  CHECK(error_of("2 2 1\n1 3 1.0\n").find("line 2") != std::string::npos);
  CHECK(error_of("2 2 1\n1 2 1\n2 1 1\n").find("line 3") != std::string::npos);
  CHECK(error_of("2 2 1\n1 2 x\n").find("line 2") != std::string::npos);
  CHECK(error_of("2 2 1\n1\n").find("line 2") != std::string::npos);
  CHECK_FALSE(error_of("").empty());
  CHECK_THROWS_AS(load_tensor(RIGIDCHECK_TEST_DATA "/bad_header.tns"), InputError);
  CHECK_THROWS_AS(load_tensor(RIGIDCHECK_TEST_DATA "/missing.tns"), InputError);
}

TEST_CASE("observation pattern as a hypergraph") {
  const Hypergraph G = pattern_to_hypergraph(parse("3 3 1\n1 1 1\n2 2 2\n3 3 3\n"));
  CHECK(G.k() == 3);
  CHECK(G.vertex_names() == std::vector<std::string>{"1", "2", "3"});
  CHECK(G.edge_labels() == std::vector<std::string>{"111", "222", "333"});
  // Loops only: x_v^3 pins each coordinate locally, but the shadow {11, 22, 33}
  // is too small for the kernel criterion.
  const SamplingConfig cfg{3, 3, Domain::Exact};
  CHECK(analyze_completability(parse("3 3 1\n1 1 1\n2 2 2\n3 3 3\n"), cfg).completability == Completability::Finite);
  CHECK(analyze_completability(parse("3 3 1\n1 1 1\n2 2 2\n"), cfg).completability == Completability::Infinite);
}

TEST_CASE("completability of the quartic patterns") {
  const SamplingConfig cfg{3, 3, Domain::Exact};
  const CompletabilityReport unique = analyze_completability(load_tensor(RIGIDCHECK_TEST_DATA "/planted_quartic.tns"), cfg);
  CHECK(unique.completability == Completability::Unique);
  CHECK(unique.rigidity.globally_rigid == GlobalVerdict::Rigid);

  const CompletabilityReport finite = analyze_completability(parse("4 2 1\n1 1 1 1\n1 1 1 2\n1 2 2 2\n"), cfg);
  CHECK(finite.completability == Completability::Finite);
  CHECK(finite.rigidity.globally_rigid == GlobalVerdict::Inconclusive);
}

TEST_CASE("completion of a planted rank-one quartic") {
  const PartialSymmetricTensor T = load_tensor(RIGIDCHECK_TEST_DATA "/planted_quartic.tns");
  const CompletionResult fit = fit_completion(T, FitConfig{});
  CHECK(fit.converged);
  CHECK(fit.residual < 1e-9);
  const double a = 1.3, b = -0.7;
  CHECK(model_entry(fit.factors, {0, 0, 1, 1}) == doctest::Approx(a * a * b * b).epsilon(1e-8));
  CHECK(model_entry(fit.factors, {0, 1, 1, 1}) == doctest::Approx(a * b * b * b).epsilon(1e-8));

  // Same seed, same answer.
  const CompletionResult again = fit_completion(T, FitConfig{});
  CHECK(again.factors == fit.factors);
  CHECK(again.best_start == fit.best_start);
}

TEST_CASE("inconsistent observations cannot be fitted") {
  // If every residual were below r then |a|^4, |b|^4 <= 1 + r, so
  // |a^3 b| <= 1 + r, and matching 5 needs r >= 2.
  const CompletionResult fit = fit_completion(load_tensor(RIGIDCHECK_TEST_DATA "/inconsistent.tns"), FitConfig{});
  CHECK(fit.residual >= 2.0);
}

TEST_CASE("fit input validation") {
  CHECK_THROWS_WITH(fit_completion(load_tensor(RIGIDCHECK_TEST_DATA "/pattern_only.tns"), FitConfig{}),
                    doctest::Contains("fit requires values"));
  Eigen::MatrixXd f(2, 2);
  f << 1, 2,
       3, 4;
  CHECK(model_entry(f, {0, 1}) == 1 * 2 + 3 * 4);
  CHECK(model_entry(f, {1, 1}) == 4 + 16);
}
