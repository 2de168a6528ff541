#pragma once

// Partially observed symmetric tensors: pattern encoding, completability
// analysis, and a numeric rank-d completion fit.

#include <istream>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "rigidcheck/engine.hpp"
#include "rigidcheck/hypergraph.hpp"

namespace rigidcheck {

/// Order-k tensor of size n with observed entries keyed by sorted 0-based
/// index multisets; d is the target symmetric rank.
struct PartialSymmetricTensor {
  int n = 0;
  int k = 0;
  int d = 1;
  std::map<Multiset, std::optional<double>> entries;

  bool has_values() const;
};

/// Text format: header "k n d", then one line per observed entry
/// "i1 ... ik [value|?]" with 1-based indices in any order; '#' starts a
/// comment line.
PartialSymmetricTensor parse_tensor(std::istream& in);
PartialSymmetricTensor load_tensor(const std::string& path);

/// Vertices "1".."n", one hyperedge per observed multiset.
Hypergraph pattern_to_hypergraph(const PartialSymmetricTensor& T);

enum class Completability { Unique, Finite, Infinite, Undetermined };

std::string to_string(Completability c);

struct CompletabilityReport {
  RigidityReport rigidity;
  Completability completability = Completability::Undetermined;
};

/// Local and global rigidity of the observation pattern under the sum of d
/// copies of the product map. Values are ignored.
CompletabilityReport analyze_completability(const PartialSymmetricTensor& T, const SamplingConfig& cfg);

struct FitConfig {
  std::uint64_t seed = 20240917;
  int max_iter = 500;
  double tol = 1e-10;
  int starts = 8;
};

struct CompletionResult {
  Eigen::MatrixXd factors;  // d x n, row c holds x_c
  double residual = 0;      // max |model - observed| over observed entries
  bool converged = false;
  int iterations = 0;
  int best_start = -1;
};

/// sum_c prod_{v in e} factors(c, v)
double model_entry(const Eigen::MatrixXd& factors, const Multiset& e);

/// Multi-start Levenberg-Marquardt on the factor matrix.
CompletionResult fit_completion(const PartialSymmetricTensor& T, const FitConfig& cfg);

}  // namespace rigidcheck
