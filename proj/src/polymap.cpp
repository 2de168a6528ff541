#include "rigidcheck/polymap.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rigidcheck {

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw std::out_of_range("variable index out of range");
  Exponents e(num_vars, 0);
  e[index] = 1;
  Polynomial p(num_vars);
  p.add_term(e, Rational(1));
  return p;
}

int Polynomial::total_degree() const {
  int best = -1;
  for (const auto& [exps, coeff] : terms_) best = std::max(best, std::accumulate(exps.begin(), exps.end(), 0));
  return best;
}

int Polynomial::degree_in(std::size_t var) const {
  int best = 0;
  for (const auto& [exps, coeff] : terms_) best = std::max(best, static_cast<int>(exps[var]));
  return best;
}

void Polynomial::add_term(const Exponents& exponents, const Rational& c) {
  if (exponents.size() != num_vars_) throw std::invalid_argument("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [exps, coeff] : out.terms_) coeff = -coeff;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.num_vars_ != num_vars_) throw std::invalid_argument("polynomial variable count mismatch");
  for (const auto& [exps, coeff] : o.terms_) add_term(exps, coeff);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.num_vars_ != num_vars_) throw std::invalid_argument("polynomial variable count mismatch");
  for (const auto& [exps, coeff] : o.terms_) add_term(exps, -coeff);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("polynomial variable count mismatch");
  Polynomial out(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(num_vars_, Rational(1));
  Polynomial base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= num_vars_) throw std::out_of_range("derivative variable out of range");
  Polynomial out(num_vars_);
  for (const auto& [exps, coeff] : terms_) {
    if (exps[var] == 0) continue;
    Exponents e = exps;
    --e[var];
    out.add_term(e, coeff * exps[var]);
  }
  return out;
}

Polynomial Polynomial::remap(std::size_t num_vars, const std::vector<std::size_t>& map) const {
  Polynomial out(num_vars);
  for (const auto& [exps, coeff] : terms_) {
    Exponents e(num_vars, 0);
    for (std::size_t i = 0; i < exps.size(); ++i) e[map[i]] = static_cast<std::uint16_t>(e[map[i]] + exps[i]);
    out.add_term(e, coeff);
  }
  return out;
}

std::string Polynomial::to_string(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest exponents first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [exps, coeff] = *it;
    Rational c = coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    const bool has_vars = std::any_of(exps.begin(), exps.end(), [](auto e) { return e != 0; });
    bool need_star = false;
    if (c != 1 || !has_vars) {
      os << c.str();
      need_star = true;
    }
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (need_star) os << '*';
      os << var_names[i];
      if (exps[i] > 1) os << '^' << exps[i];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::Antisymmetric: return "antisymmetric";
    case Symmetry::None: return "none";
  }
  return "?";
}

namespace {

std::vector<std::string> variable_names(int k, int d) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < d; ++j) names.push_back("x" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  return names;
}

}  // namespace

Symmetry detect_symmetry(int k, int d, const Polynomial& poly, int trials) {
  if (k < 2 || poly.is_zero()) return Symmetry::Symmetric;
  bool symmetric = true;
  bool antisymmetric = true;
  bool saw_nonzero = false;
  auto rng = derive_stream(0x53594d4dULL, static_cast<std::uint64_t>(k * 1000 + d), poly.terms().size());
  for (int trial = 0; trial < trials && (symmetric || antisymmetric); ++trial) {
    PrimeFieldScope scope(random_prime62(rng));
    Vector<ModP> x(k * d);
    for (Index i = 0; i < x.size(); ++i) x(i) = ModP::from_raw(static_cast<std::uint64_t>(uniform_int(rng, 0, static_cast<long long>(ModP::modulus() - 1))));
    const ModP base = poly.evaluate(x);
    if (base != ModP()) saw_nonzero = true;
    // Adjacent transpositions generate the symmetric group.
    for (int i = 0; i + 1 < k; ++i) {
      Vector<ModP> swapped = x;
      swapped.segment(i * d, d).swap(swapped.segment((i + 1) * d, d));
      const ModP value = poly.evaluate(swapped);
      if (value != base) symmetric = false;
      if (value != -base) antisymmetric = false;
    }
  }
  if (symmetric) return Symmetry::Symmetric;
  if (antisymmetric && saw_nonzero) return Symmetry::Antisymmetric;
  return Symmetry::None;
}

PolyMap::PolyMap(int k, int d, Polynomial poly, std::string name)
    : PolyMap(k, d, poly, detect_symmetry(k, d, poly), std::move(name)) {}

PolyMap::PolyMap(int k, int d, Polynomial poly, Symmetry symmetry, std::string name)
    : k_(k), d_(d), poly_(std::move(poly)), symmetry_(symmetry), name_(std::move(name)) {
  if (k_ < 1 || d_ < 1) throw std::invalid_argument("PolyMap requires k >= 1 and d >= 1");
  if (poly_.num_vars() != static_cast<std::size_t>(k_ * d_))
    throw std::invalid_argument("PolyMap: polynomial has the wrong number of variables");
  if (name_.empty()) name_ = to_string();
}

bool PolyMap::is_multilinear() const {
  for (const auto& [exps, coeff] : poly_.terms()) {
    for (int i = 0; i < k_; ++i) {
      int block_degree = 0;
      for (int j = 0; j < d_; ++j) block_degree += exps[var(i, j)];
      if (block_degree > 1) return false;
    }
  }
  return true;
}

bool PolyMap::is_homogeneous() const {
  const int deg = poly_.total_degree();
  for (const auto& [exps, coeff] : poly_.terms())
    if (std::accumulate(exps.begin(), exps.end(), 0) != deg) return false;
  return true;
}

PolyMap PolyMap::partial(int arg, int coord) const {
  if (arg < 0 || arg >= k_ || coord < 0 || coord >= d_) throw std::out_of_range("partial: index out of range");
  return PolyMap(k_, d_, poly_.derivative(var(arg, coord)), Symmetry::None,
                 "d(" + name_ + ")/dx" + std::to_string(arg + 1) + "_" + std::to_string(coord + 1));
}

std::string PolyMap::to_string() const { return poly_.to_string(variable_names(k_, d_)); }

PolyMap h_prod(int k) {
  if (k < 1) throw std::invalid_argument("h_prod requires k >= 1");
  Exponents e(static_cast<std::size_t>(k), 1);
  Polynomial p(static_cast<std::size_t>(k));
  p.add_term(e, Rational(1));
  return PolyMap(k, 1, std::move(p), Symmetry::Symmetric, "prod" + std::to_string(k));
}

PolyMap sq_euclid(int d) {
  if (d < 1) throw std::invalid_argument("sq_euclid requires d >= 1");
  const auto n = static_cast<std::size_t>(2 * d);
  Polynomial p(n);
  for (int j = 0; j < d; ++j) {
    const Polynomial diff = Polynomial::variable(n, static_cast<std::size_t>(j)) -
                            Polynomial::variable(n, static_cast<std::size_t>(d + j));
    p += diff * diff;
  }
  return PolyMap(2, d, std::move(p), Symmetry::Symmetric, "sqdist" + std::to_string(d));
}

PolyMap inner_product(int d) {
  if (d < 1) throw std::invalid_argument("inner_product requires d >= 1");
  const auto n = static_cast<std::size_t>(2 * d);
  Polynomial p(n);
  for (int j = 0; j < d; ++j)
    p += Polynomial::variable(n, static_cast<std::size_t>(j)) * Polynomial::variable(n, static_cast<std::size_t>(d + j));
  return PolyMap(2, d, std::move(p), Symmetry::Symmetric, "inner" + std::to_string(d));
}

PolyMap sum_copies(const PolyMap& h, int t) {
  if (t < 1) throw std::invalid_argument("sum_copies requires t >= 1");
  const int k = h.k();
  const int s = h.d();
  const int d = s * t;
  const auto n = static_cast<std::size_t>(k * d);
  Polynomial total(n);
  for (int c = 0; c < t; ++c) {
    std::vector<std::size_t> map(static_cast<std::size_t>(k * s));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < s; ++j) map[static_cast<std::size_t>(i * s + j)] = static_cast<std::size_t>(i * d + c * s + j);
    total += h.polynomial().remap(n, map);
  }
  const std::string name = t == 1 ? h.name() : std::to_string(t) + "x" + h.name();
  return PolyMap(k, d, std::move(total), h.symmetry(), name);
}

}  // namespace rigidcheck
