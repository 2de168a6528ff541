#pragma once

// Sparse multivariate polynomials with exact rational coefficients, and
// polynomial maps g: (F^d)^k -> F built from them.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rigidcheck/field.hpp"
#include "rigidcheck/linalg.hpp"

namespace rigidcheck {

using Exponents = std::vector<std::uint16_t>;

class Polynomial {
 public:
  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const { return num_vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;

  /// Adds c * x^exponents, dropping the term if the coefficient cancels.
  void add_term(const Exponents& exponents, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(unsigned exponent) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  Polynomial derivative(std::size_t var) const;

  /// Re-embeds into `num_vars` variables with variable i sent to map[i].
  Polynomial remap(std::size_t num_vars, const std::vector<std::size_t>& map) const;

  template <class Scalar>
  Scalar evaluate(const Vector<Scalar>& values) const;

  /// Human-readable form using `name(i)` for variable i.
  std::string to_string(const std::vector<std::string>& var_names) const;

 private:
  std::size_t num_vars_;
  std::map<Exponents, Rational> terms_;
};

template <class Scalar>
Scalar Polynomial::evaluate(const Vector<Scalar>& values) const {
  if (static_cast<std::size_t>(values.size()) != num_vars_)
    throw std::invalid_argument("polynomial evaluated with the wrong number of variables");
  Scalar total(0);
  for (const auto& [exps, coeff] : terms_) {
    Scalar term = scalar_cast<Scalar>(coeff);
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (std::uint16_t e = 0; e < exps[i]; ++e) term *= values(static_cast<Index>(i));
    total += term;
  }
  return total;
}

enum class Symmetry { Symmetric, Antisymmetric, None };

std::string to_string(Symmetry s);

/// g: (F^d)^k -> F. Variable x[i][j] (argument i, coordinate j, both 0-based)
/// has flat index i*d + j. Points are passed as a d x k matrix whose columns
/// are the k arguments.
class PolyMap {
 public:
  PolyMap() = default;
  /// Detects the symmetry flag by randomized argument-swap tests.
  PolyMap(int k, int d, Polynomial poly, std::string name = {});
  PolyMap(int k, int d, Polynomial poly, Symmetry symmetry, std::string name);

  int k() const { return k_; }
  int d() const { return d_; }
  const Polynomial& polynomial() const { return poly_; }
  Symmetry symmetry() const { return symmetry_; }
  const std::string& name() const { return name_; }

  std::size_t var(int arg, int coord) const { return static_cast<std::size_t>(arg * d_ + coord); }

  bool is_multilinear() const;
  bool is_homogeneous() const;
  int degree() const { return poly_.total_degree(); }

  /// d/dx[arg][coord], same (k, d).
  PolyMap partial(int arg, int coord) const;

  template <class Scalar>
  Scalar operator()(const Matrix<Scalar>& points) const {
    if (points.rows() != d_ || points.cols() != k_) throw std::invalid_argument("PolyMap: argument shape mismatch");
    return poly_.evaluate<Scalar>(points.reshaped());
  }

  std::string to_string() const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.k_ == b.k_ && a.d_ == b.d_ && a.poly_ == b.poly_;
  }

 private:
  int k_ = 0;
  int d_ = 0;
  Polynomial poly_;
  Symmetry symmetry_ = Symmetry::None;
  std::string name_;
};

/// Randomized block-swap test over a 62-bit prime field (`trials` points).
Symmetry detect_symmetry(int k, int d, const Polynomial& poly, int trials = 20);

/// x[1][1] * ... * x[k][1], d = 1.
PolyMap h_prod(int k);
/// sum_j (x[1][j] - x[2][j])^2
PolyMap sq_euclid(int d);
/// sum_j x[1][j] * x[2][j]
PolyMap inner_product(int d);
/// sum over copies c of h applied to coordinate block c of every argument;
/// copy c occupies coordinates [c*d_h, (c+1)*d_h).
PolyMap sum_copies(const PolyMap& h, int t);

/// Grammar: variables x<i>_<j> (1-based), literals n or n/m, + - * ^ and
/// parentheses; ^ takes a nonnegative integer literal.
PolyMap parse_poly(const std::string& text, int k, int d);

}  // namespace rigidcheck
