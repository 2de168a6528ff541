#include "rigidcheck/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "rigidcheck/error.hpp"

namespace rigidcheck {

bool PartialSymmetricTensor::has_values() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& kv) { return kv.second.has_value(); });
}

namespace {

bool is_comment_or_blank(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

int parse_positive(const std::string& token, const char* what, long line_no) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || value < 1)
    throw InputError(std::string("line ") + std::to_string(line_no) + ": expected positive integer " + what + ", got '" + token + "'");
  return value;
}

double parse_value(const std::string& token, long line_no) {
  const auto slash = token.find('/');
  try {
    if (slash != std::string::npos) {
      const Rational q(token);
      return q.convert_to<double>();
    }
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("line " + std::to_string(line_no) + ": malformed value '" + token + "'");
}

}  // namespace

PartialSymmetricTensor parse_tensor(std::istream& in) {
  PartialSymmetricTensor T;
  std::string line;
  long line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto toks = tokens(line);
    if (!have_header) {
      if (toks.size() != 3) throw InputError("line " + std::to_string(line_no) + ": header must be 'k n d'");
      T.k = parse_positive(toks[0], "k", line_no);
      T.n = parse_positive(toks[1], "n", line_no);
      T.d = parse_positive(toks[2], "d", line_no);
      have_header = true;
      continue;
    }
    const auto k = static_cast<std::size_t>(T.k);
    if (toks.size() != k && toks.size() != k + 1)
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(k) + " indices and an optional value");
    Multiset idx;
    for (std::size_t i = 0; i < k; ++i) {
      const int v = parse_positive(toks[i], "index", line_no);
      if (v > T.n) throw InputError("line " + std::to_string(line_no) + ": index " + toks[i] + " exceeds n");
      idx.push_back(static_cast<VertexId>(v - 1));
    }
    std::sort(idx.begin(), idx.end());
    std::optional<double> value;
    if (toks.size() == k + 1 && toks[k] != "?") value = parse_value(toks[k], line_no);
    if (!T.entries.emplace(std::move(idx), value).second)
      throw InputError("line " + std::to_string(line_no) + ": duplicate entry");
  }
  if (!have_header) throw InputError("missing header 'k n d'");
  return T;
}

PartialSymmetricTensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_tensor(in);
}

Hypergraph pattern_to_hypergraph(const PartialSymmetricTensor& T) {
  std::vector<std::string> names;
  for (int i = 1; i <= T.n; ++i) names.push_back(std::to_string(i));
  EdgeSet edges;
  for (const auto& [idx, value] : T.entries) edges.emplace_back(idx);
  return Hypergraph(std::move(names), T.k, std::move(edges));
}

std::string to_string(Completability c) {
  switch (c) {
    case Completability::Unique: return "unique completion (generic)";
    case Completability::Finite: return "finitely many completions (generic)";
    case Completability::Infinite: return "infinitely many completions (generic)";
    case Completability::Undetermined: return "undetermined";
  }
  return "undetermined";
}

CompletabilityReport analyze_completability(const PartialSymmetricTensor& T, const SamplingConfig& cfg) {
  if (T.d < 1) throw std::invalid_argument("target rank d must be >= 1");
  CompletabilityReport out;
  out.rigidity = global_rigidity_prod(pattern_to_hypergraph(T), T.d, cfg);
  out.rigidity.instance = "tensor k=" + std::to_string(T.k) + " n=" + std::to_string(T.n) + " d=" + std::to_string(T.d) +
                          ", " + std::to_string(T.entries.size()) + " observed";
  if (out.rigidity.globally_rigid == GlobalVerdict::Rigid) {
    out.completability = Completability::Unique;
  } else if (out.rigidity.locally_rigid == LocalVerdict::Rigid) {
    out.completability = Completability::Finite;
  } else {
    out.completability = Completability::Infinite;
  }
  out.rigidity.notes.push_back(to_string(out.completability));
  return out;
}

double model_entry(const Eigen::MatrixXd& factors, const Multiset& e) {
  double total = 0;
  for (Index c = 0; c < factors.rows(); ++c) {
    double prod = 1;
    for (VertexId v : e) prod *= factors(c, v);
    total += prod;
  }
  return total;
}

namespace {

struct Observations {
  std::vector<Multiset> index;
  Eigen::VectorXd value;
};

Eigen::VectorXd residuals(const Observations& obs, const Eigen::MatrixXd& X) {
  Eigen::VectorXd r(static_cast<Index>(obs.index.size()));
  for (std::size_t e = 0; e < obs.index.size(); ++e)
    r(static_cast<Index>(e)) = model_entry(X, obs.index[e]) - obs.value(static_cast<Index>(e));
  return r;
}

// Parameters are vec(X) in column-major order: (c, v) -> v*d + c.
Eigen::MatrixXd residual_jacobian(const Observations& obs, const Eigen::MatrixXd& X) {
  const Index d = X.rows();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Index>(obs.index.size()), X.size());
  for (std::size_t e = 0; e < obs.index.size(); ++e) {
    const Multiset& idx = obs.index[e];
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      if (pos > 0 && idx[pos] == idx[pos - 1]) continue;
      const VertexId v = idx[pos];
      const auto m = static_cast<double>(multiplicity(idx, v));
      for (Index c = 0; c < d; ++c) {
        // m * x_v^(m-1) * prod over the rest of the multiset
        double prod = m;
        bool skipped = false;
        for (VertexId u : idx) {
          if (u == v && !skipped) {
            skipped = true;
            continue;
          }
          prod *= X(c, u);
        }
        J(static_cast<Index>(e), static_cast<Index>(v) * d + c) = prod;
      }
    }
  }
  return J;
}

CompletionResult levenberg_marquardt(const Observations& obs, Eigen::MatrixXd X, const FitConfig& cfg) {
  CompletionResult out;
  double lambda = 1e-3;
  Eigen::VectorXd r = residuals(obs, X);
  double cost = r.squaredNorm();
  int iter = 0;
  for (; iter < cfg.max_iter; ++iter) {
    const Eigen::MatrixXd J = residual_jacobian(obs, X);
    const Eigen::VectorXd grad = J.transpose() * r;
    if (grad.norm() <= cfg.tol || r.cwiseAbs().maxCoeff() < 1e-15) {
      out.converged = true;
      break;
    }
    const Eigen::MatrixXd normal = J.transpose() * J;
    bool accepted = false;
    while (!accepted && lambda < 1e16) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal().array() += lambda * (1.0 + normal.diagonal().array());
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      Eigen::MatrixXd candidate = X + Eigen::Map<const Eigen::MatrixXd>(step.data(), X.rows(), X.cols());
      const Eigen::VectorXd r_new = residuals(obs, candidate);
      const double cost_new = r_new.squaredNorm();
      if (std::isfinite(cost_new) && cost_new < cost) {
        X = std::move(candidate);
        r = r_new;
        cost = cost_new;
        lambda = std::max(lambda * 0.2, 1e-15);
        accepted = true;
      } else {
        lambda *= 8.0;
      }
    }
    if (!accepted) {
      // Stalled: no descent direction left at machine precision.
      out.converged = grad.norm() <= std::sqrt(cfg.tol);
      break;
    }
  }
  out.factors = std::move(X);
  out.iterations = iter;
  out.residual = r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
  return out;
}

}  // namespace

CompletionResult fit_completion(const PartialSymmetricTensor& T, const FitConfig& cfg) {
  if (T.entries.empty()) throw InputError("fit requires at least one observed entry");
  if (!T.has_values()) throw InputError("fit requires values");
  if (cfg.starts < 1) throw std::invalid_argument("fit requires at least one start");
  Observations obs;
  obs.value.resize(static_cast<Index>(T.entries.size()));
  double mean_abs = 0;
  for (const auto& [idx, value] : T.entries) {
    obs.value(static_cast<Index>(obs.index.size())) = *value;
    obs.index.push_back(idx);
    mean_abs += std::abs(*value);
  }
  mean_abs /= static_cast<double>(T.entries.size());
  const double scale = mean_abs > 0 ? std::pow(mean_abs / T.d, 1.0 / T.k) : 1.0;

  std::vector<std::future<CompletionResult>> runs;
  for (int s = 0; s < cfg.starts; ++s) {
    runs.push_back(std::async(std::launch::async, [&, s] {
      auto rng = derive_stream(cfg.seed, 0x46495453, static_cast<std::uint64_t>(s));
      Eigen::MatrixXd X(T.d, T.n);
      for (Index j = 0; j < X.cols(); ++j)
        for (Index i = 0; i < X.rows(); ++i) X(i, j) = scale * standard_normal(rng);
      return levenberg_marquardt(obs, std::move(X), cfg);
    }));
  }
  CompletionResult best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int s = 0; s < cfg.starts; ++s) {
    CompletionResult r = runs[static_cast<std::size_t>(s)].get();
    const double cost = residuals(obs, r.factors).squaredNorm();
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(r);
      best.best_start = s;
    }
  }
  return best;
}

}  // namespace rigidcheck
