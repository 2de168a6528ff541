#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rigidcheck/error.hpp"
#include "rigidcheck/polymap.hpp"

using namespace rigidcheck;

namespace {

Matrix<Rational> args(std::initializer_list<std::initializer_list<long>> columns) {
  const auto k = static_cast<Index>(columns.size());
  const auto d = static_cast<Index>(columns.begin()->size());
  Matrix<Rational> m(d, k);
  Index c = 0;
  for (const auto& col : columns) {
    Index r = 0;
    for (long v : col) m(r++, c) = v;
    ++c;
  }
  return m;
}

Matrix<Rational> random_args(std::mt19937_64& rng, int d, int k) {
  Matrix<Rational> m(d, k);
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) m(i, j) = Rational(uniform_int(rng, -50, 50), uniform_int(rng, 1, 9));
  return m;
}

// Independent reduction of p/q modulo a prime via Fermat inversion.
std::uint64_t reduce(const Rational& q, std::uint64_t prime) {
  const Integer p(prime);
  Integer num = numerator(q) % p;
  if (num < 0) num += p;
  Integer den = denominator(q) % p;
  const Integer inv = powm(den, p - 2, p);
  return static_cast<std::uint64_t>(Integer(num * inv % p));
}

std::vector<PolyMap> builtin_maps() {
  return {h_prod(2), h_prod(3), h_prod(4), sq_euclid(1), sq_euclid(2), sq_euclid(3), inner_product(1), inner_product(2),
          inner_product(3), sum_copies(h_prod(3), 2)};
}

}  // namespace

TEST_CASE("built-in maps evaluate as defined") {
  CHECK(h_prod(2)(args({{3}, {5}})) == 15);
  CHECK(h_prod(4)(args({{2}, {2}, {2}, {3}})) == 24);
  CHECK(sq_euclid(2)(args({{0, 0}, {1, 1}})) == 2);
  CHECK(sq_euclid(2)(args({{4, -7}, {4, -7}})) == 0);
  CHECK(inner_product(2)(args({{1, 0}, {0, 1}})) == 0);
  Matrix<Rational> halves(1, 2);
  halves << Rational(1, 2), Rational(1, 3);
  CHECK(sq_euclid(1)(halves) == Rational(1, 36));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Matrix<Rational> x = random_args(rng, 1, 3);
    Matrix<Rational> repeated(1, 3);
    repeated << x(0, 0), x(0, 0), x(0, 1);
    CHECK(h_prod(3)(repeated) == x(0, 0) * x(0, 0) * x(0, 1));
    const Matrix<Rational> y = random_args(rng, 3, 2);
    CHECK(inner_product(3)(y) == y(0, 0) * y(0, 1) + y(1, 0) * y(1, 1) + y(2, 0) * y(2, 1));
  }
}

TEST_CASE("built-in maps carry their structural flags") {
  CHECK(h_prod(3).is_multilinear());
  CHECK(inner_product(2).is_multilinear());
  CHECK_FALSE(sq_euclid(2).is_multilinear());
  for (const auto& g : builtin_maps()) {
    CHECK(g.symmetry() == Symmetry::Symmetric);
    CHECK(g.is_homogeneous());
    CHECK(detect_symmetry(g.k(), g.d(), g.polynomial()) == Symmetry::Symmetric);
  }
}

TEST_CASE("sums of copies") {
  CHECK(sum_copies(sq_euclid(1), 2) == sq_euclid(2));
  CHECK(sum_copies(inner_product(1), 3) == inner_product(3));
  CHECK(sum_copies(h_prod(3), 1) == h_prod(3));
  std::mt19937_64 rng(5);
  const PolyMap h = h_prod(3);
  const PolyMap g = sum_copies(h, 2);
  CHECK(g.d() == 2);
  for (int i = 0; i < 20; ++i) {
    const Matrix<Rational> p = random_args(rng, 2, 3);
    CHECK(g(p) == h(Matrix<Rational>(p.row(0))) + h(Matrix<Rational>(p.row(1))));
  }
}

TEST_CASE("parser reproduces the built-in maps") {
  CHECK(parse_poly("x1_1*x2_1*x3_1", 3, 1) == h_prod(3));
  CHECK(parse_poly("(x1_1-x2_1)^2", 2, 1) == sq_euclid(1));
  CHECK(parse_poly(" x1_1 * x2_1 + x1_2*x2_2 ", 2, 2) == inner_product(2));
  CHECK(parse_poly("(x1_1 - x2_1)^2 + (x1_2 - x2_2)^2", 2, 2) == sq_euclid(2));
  const PolyMap half = parse_poly("1/2*x1_1^2 - 3", 1, 1);
  Matrix<Rational> four(1, 1);
  four << 4;
  CHECK(half(four) == 5);
  CHECK(parse_poly("-(x1_1)", 1, 1)(four) == -4);
}

TEST_CASE("parser detects symmetry") {
  CHECK(parse_poly("x1_1*x2_2 - x1_2*x2_1", 2, 2).symmetry() == Symmetry::Antisymmetric);
  CHECK(parse_poly("x1_1 + 2*x2_1", 2, 1).symmetry() == Symmetry::None);
  CHECK(parse_poly("x1_1^2*x2_1 + x1_1*x2_1^2", 2, 1).symmetry() == Symmetry::Symmetric);
}

TEST_CASE("parser errors carry positions") {
  auto position_of = [](const std::string& text, int k, int d) -> long {
    try {
      parse_poly(text, k, d);
    } catch (const InputError& e) {
      return e.position();
    }
    return -2;
  };
  CHECK(position_of("x1_1 + * x2_1", 2, 1) == 7);
  CHECK(position_of("x1_1 + x3_1", 2, 1) == 7);
  CHECK(position_of("x1_1^2.5", 1, 1) == 5);
  CHECK(position_of("(x1_1", 1, 1) == 5);
  CHECK(position_of("x1_1 $", 1, 1) == 5);
  CHECK_THROWS_WITH(parse_poly("x1_1 + x3_1", 2, 1), doctest::Contains("variable index out of range"));
  CHECK_THROWS_WITH(parse_poly("x1_1^1/2", 1, 1), doctest::Contains("non-integer exponent"));
  CHECK_THROWS_WITH(parse_poly("x1_1^-1", 1, 1), doctest::Contains("exponent"));
  CHECK_THROWS_AS(parse_poly("1/0", 1, 1), InputError);
}

TEST_CASE("partial derivatives") {
  // x_a^4 on edge aaaa and x_a^3 x_b on edge aaab, written as single-argument maps.
  const PolyMap quartic = parse_poly("x1_1^4", 1, 1);
  CHECK(quartic.partial(0, 0) == parse_poly("4*x1_1^3", 1, 1));
  const PolyMap cubic_times = parse_poly("x1_1^3*x2_1", 2, 1);
  CHECK(cubic_times.partial(1, 0) == parse_poly("x1_1^3", 2, 1));
  CHECK(parse_poly("x1_1^3", 1, 1).partial(0, 0) == parse_poly("3*x1_1^2", 1, 1));
  CHECK(parse_poly("7", 1, 1).partial(0, 0).polynomial().is_zero());
  CHECK_THROWS(h_prod(2).partial(2, 0));

  for (const auto& g : builtin_maps()) {
    for (int i = 0; i < g.k(); ++i) {
      for (int j = 0; j < g.d(); ++j) {
        const PolyMap dg = g.partial(i, j);
        CHECK((dg.polynomial().is_zero() || dg.degree() == g.degree() - 1));
      }
    }
  }
}

TEST_CASE("partials agree with central finite differences") {
  std::mt19937_64 rng(11);
  for (const auto& g : builtin_maps()) {
    for (int trial = 0; trial < 50; ++trial) {
      Matrix<double> x(g.d(), g.k());
      for (Index j = 0; j < x.cols(); ++j)
        for (Index i = 0; i < x.rows(); ++i) x(i, j) = uniform_real(rng, -2.0, 2.0);
      for (int i = 0; i < g.k(); ++i) {
        for (int j = 0; j < g.d(); ++j) {
          const double h = 1e-5;
          Matrix<double> up = x, down = x;
          up(j, i) += h;
          down(j, i) -= h;
          const double fd = (g(up) - g(down)) / (2 * h);
          const double exact = g.partial(i, j)(x);
          CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
        }
      }
    }
  }
}

TEST_CASE("symmetric maps are invariant under argument permutations") {
  std::mt19937_64 rng(13);
  for (const auto& g : builtin_maps()) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix<Rational> x = random_args(rng, g.d(), g.k());
      std::vector<Index> perm(static_cast<std::size_t>(g.k()));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      Matrix<Rational> y(x.rows(), x.cols());
      for (Index c = 0; c < x.cols(); ++c) y.col(c) = x.col(perm[static_cast<std::size_t>(c)]);
      CHECK(g(x) == g(y));
    }
  }
}

TEST_CASE("prime-field evaluation reduces the exact value") {
  std::mt19937_64 rng(17);
  const std::vector<PolyMap> maps = {h_prod(3), sq_euclid(2), inner_product(3), parse_poly("1/3*x1_1^2*x2_2 - 5/7*x2_1", 2, 2)};
  for (int trial = 0; trial < 100; ++trial) {
    const PolyMap& g = maps[static_cast<std::size_t>(trial) % maps.size()];
    const Matrix<Rational> x = random_args(rng, g.d(), g.k());
    const std::uint64_t prime = random_prime62(rng);
    CHECK(prime > (1ULL << 61));
    const Rational exact = g(x);
    PrimeFieldScope scope(prime);
    Matrix<ModP> xp(x.rows(), x.cols());
    for (Index j = 0; j < x.cols(); ++j)
      for (Index i = 0; i < x.rows(); ++i) xp(i, j) = ModP::from_raw(reduce(x(i, j), prime));
    CHECK(g(xp).value() == reduce(exact, prime));
  }
}

TEST_CASE("denominators divisible by the prime are rejected") {
  PrimeFieldScope scope(7);
  CHECK_THROWS_AS(scalar_cast<ModP>(Rational(1, 14)), BadPrimeError);
  CHECK(scalar_cast<ModP>(Rational(3, 2)) * ModP(2) == ModP(3));
}
