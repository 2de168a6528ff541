#pragma once

// Embedded regression cases: small worked instances with known ranks,
// matrices and verdicts, rerun on demand.

#include <string>
#include <vector>

#include "rigidcheck/engine.hpp"
#include "rigidcheck/report.hpp"

namespace rigidcheck {

struct ExampleCheck {
  std::string name;
  Json expected;
  Json actual;
  bool pass = false;
};

struct ExampleResult {
  std::string id;
  std::string title;
  std::vector<ExampleCheck> checks;

  bool pass() const;
};

const std::vector<std::string>& example_ids();

/// Throws InputError for an unknown id.
ExampleResult run_example(const std::string& id, const SamplingConfig& cfg);

/// All cases, or only `only` when it is non-empty.
std::vector<ExampleResult> run_examples(const SamplingConfig& cfg, const std::string& only = {});

/// Deterministic given cfg: no timings or host details.
Json to_json(const std::vector<ExampleResult>& results, const SamplingConfig& cfg);
std::string to_table(const std::vector<ExampleResult>& results);

/// Rows indexed by the shadow of G, columns by vertices: the Jacobian of the
/// monomials prod_{u in sigma} x_u at a scalar configuration x.
Matrix<Rational> shadow_monomial_jacobian(const Hypergraph& G, const Vector<Rational>& x);

}  // namespace rigidcheck
