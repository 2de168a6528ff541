#pragma once

// Scalar fields used by the rigidity engine: exact rationals (GMP), a 62-bit
// prime field with a thread-local modulus, and float64 for diagnostics.

#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

namespace rigidcheck {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

enum class Domain { Exact, ModP, Float64 };

std::string to_string(Domain domain);
Domain parse_domain(const std::string& text);

/// Thrown when a rational coefficient or input has a denominator that
/// vanishes modulo the active prime.
class BadPrimeError : public std::runtime_error {
 public:
  BadPrimeError() : std::runtime_error("bad prime, resample") {}
};

/// Element of Z/pZ for the prime installed by the innermost PrimeFieldScope on
/// the calling thread. Values are stored reduced in [0, p).
class ModP {
 public:
  ModP() = default;
  ModP(int v) : ModP(static_cast<long long>(v)) {}
  ModP(long long v);
  static ModP from_raw(std::uint64_t reduced) {
    ModP r;
    r.value_ = reduced;
    return r;
  }

  static std::uint64_t modulus();

  std::uint64_t value() const { return value_; }
  /// Symmetric representative in (-p/2, p/2], handy for printing.
  long long centered() const;

  ModP inverse() const;

  ModP& operator+=(const ModP& o);
  ModP& operator-=(const ModP& o);
  ModP& operator*=(const ModP& o);
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  ModP operator-() const { return ModP() - *this; }

  friend bool operator==(const ModP& a, const ModP& b) { return a.value_ == b.value_; }
  friend bool operator!=(const ModP& a, const ModP& b) { return a.value_ != b.value_; }

  friend std::ostream& operator<<(std::ostream& os, const ModP& x) { return os << x.centered(); }

 private:
  std::uint64_t value_ = 0;
};

/// Installs `prime` as the active modulus for ModP arithmetic on this thread
/// until destruction; scopes nest.
class PrimeFieldScope {
 public:
  explicit PrimeFieldScope(std::uint64_t prime);
  ~PrimeFieldScope();
  PrimeFieldScope(const PrimeFieldScope&) = delete;
  PrimeFieldScope& operator=(const PrimeFieldScope&) = delete;

 private:
  std::uint64_t previous_;
};

bool is_prime(std::uint64_t n);

/// Uniform random prime in (2^61, 2^62).
std::uint64_t random_prime62(std::mt19937_64& rng);

/// Uniform integer in [lo, hi] built directly from engine output so that the
/// sequence is identical across standard libraries.
long long uniform_int(std::mt19937_64& rng, long long lo, long long hi);
double uniform_real(std::mt19937_64& rng, double lo, double hi);
double standard_normal(std::mt19937_64& rng);

/// Independent stream for (root seed, purpose, index).
std::mt19937_64 derive_stream(std::uint64_t root, std::uint64_t purpose, std::uint64_t index);

// ---------------------------------------------------------------------------
// Uniform scalar interface consumed by templated algorithms.

template <class Scalar>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr Domain domain = Domain::Exact;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_integer(long long v) { return Rational(v); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct FieldTraits<ModP> {
  static constexpr bool exact = true;
  static constexpr Domain domain = Domain::ModP;
  static ModP from_rational(const Rational& q);
  static ModP from_integer(long long v) { return ModP(v); }
  static bool is_zero(const ModP& x) { return x.value() == 0; }
  static double to_double(const ModP& x) { return static_cast<double>(x.centered()); }
  static std::string str(const ModP& x) { return std::to_string(x.centered()); }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  static constexpr Domain domain = Domain::Float64;
  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
  static double from_integer(long long v) { return static_cast<double>(v); }
  static bool is_zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
  static std::string str(double x) { return std::to_string(x); }
};

template <class Scalar>
Scalar scalar_cast(const Rational& q) {
  return FieldTraits<Scalar>::from_rational(q);
}

}  // namespace rigidcheck

namespace Eigen {
template <>
struct NumTraits<rigidcheck::ModP> : GenericNumTraits<rigidcheck::ModP> {
  typedef rigidcheck::ModP Real;
  typedef rigidcheck::ModP NonInteger;
  typedef rigidcheck::ModP Literal;
  typedef rigidcheck::ModP Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(); }
  static inline Real dummy_precision() { return Real(); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
