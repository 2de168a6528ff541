#include "rigidcheck/field.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rigidcheck {

namespace {

thread_local std::uint64_t active_modulus = 0;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t require_modulus() {
  if (active_modulus == 0) throw std::logic_error("ModP arithmetic outside of a PrimeFieldScope");
  return active_modulus;
}

std::uint64_t reduce_integer(const Integer& z, std::uint64_t p) {
  Integer r = z % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

}  // namespace

std::string to_string(Domain domain) {
  switch (domain) {
    case Domain::Exact: return "exact";
    case Domain::ModP: return "modp";
    case Domain::Float64: return "float64";
  }
  return "?";
}

Domain parse_domain(const std::string& text) {
  if (text == "exact") return Domain::Exact;
  if (text == "modp") return Domain::ModP;
  if (text == "float64") return Domain::Float64;
  throw std::invalid_argument("unknown domain '" + text + "' (expected exact|modp)");
}

ModP::ModP(long long v) {
  if (v == 0) return;
  const std::uint64_t p = require_modulus();
  if (v > 0) {
    value_ = static_cast<std::uint64_t>(v) % p;
  } else {
    // -(v) may overflow for LLONG_MIN; go through unsigned arithmetic.
    const std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1U;
    const std::uint64_t r = mag % p;
    value_ = r == 0 ? 0 : p - r;
  }
}

std::uint64_t ModP::modulus() { return active_modulus; }

long long ModP::centered() const {
  const std::uint64_t p = active_modulus;
  if (p == 0 || value_ <= p / 2) return static_cast<long long>(value_);
  return -static_cast<long long>(p - value_);
}

ModP ModP::inverse() const {
  const std::uint64_t p = require_modulus();
  if (value_ == 0) throw std::domain_error("inverse of zero in prime field");
  return from_raw(pow_mod(value_, p - 2, p));
}

ModP& ModP::operator+=(const ModP& o) {
  const std::uint64_t p = require_modulus();
  value_ += o.value_;
  if (value_ >= p) value_ -= p;
  return *this;
}

ModP& ModP::operator-=(const ModP& o) {
  const std::uint64_t p = require_modulus();
  value_ = value_ >= o.value_ ? value_ - o.value_ : value_ + (p - o.value_);
  return *this;
}

ModP& ModP::operator*=(const ModP& o) {
  value_ = mul_mod(value_, o.value_, require_modulus());
  return *this;
}

PrimeFieldScope::PrimeFieldScope(std::uint64_t prime) : previous_(active_modulus) {
  if (prime < 3 || prime >= (std::uint64_t{1} << 62)) throw std::invalid_argument("prime out of range");
  active_modulus = prime;
}

PrimeFieldScope::~PrimeFieldScope() { active_modulus = previous_; }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Deterministic for all 64-bit n with these witnesses.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime62(std::mt19937_64& rng) {
  constexpr std::uint64_t lo = std::uint64_t{1} << 61;
  for (;;) {
    const std::uint64_t candidate = (lo | (rng() & (lo - 1))) | 1U;
    if (candidate > lo && is_prime(candidate)) return candidate;
  }
}

long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1U;
  if (span == 0) return static_cast<long long>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return lo + static_cast<long long>(draw % span);
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11U) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

double standard_normal(std::mt19937_64& rng) {
  // Box-Muller; avoids distribution objects whose output is library-specific.
  double u1 = uniform_real(rng, 0.0, 1.0);
  while (u1 <= 0.0) u1 = uniform_real(rng, 0.0, 1.0);
  const double u2 = uniform_real(rng, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::mt19937_64 derive_stream(std::uint64_t root, std::uint64_t purpose, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32U),
                    static_cast<std::uint32_t>(purpose), static_cast<std::uint32_t>(purpose >> 32U),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32U)};
  return std::mt19937_64(seq);
}

ModP FieldTraits<ModP>::from_rational(const Rational& q) {
  const std::uint64_t p = require_modulus();
  const std::uint64_t den = reduce_integer(boost::multiprecision::denominator(q), p);
  if (den == 0) throw BadPrimeError();
  const std::uint64_t num = reduce_integer(boost::multiprecision::numerator(q), p);
  return ModP::from_raw(num) / ModP::from_raw(den);
}

}  // namespace rigidcheck
