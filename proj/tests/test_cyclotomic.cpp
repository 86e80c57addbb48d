#include "doctest.h"

#include "pervcheck/cyclotomic.hpp"
#include "pervcheck/poly_text.hpp"

#include <random>

using namespace pervcheck;

namespace {

TorsionPoint random_point(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> q(1, 4), s(0, 1), den(1, 6);
  std::vector<TorsionCoord> c;
  for (int i = 0; i < n; ++i) {
    const int d = den(rng);
    c.emplace_back(Rational(q(rng) * (s(rng) ? 1 : -1), q(rng)), Rational(static_cast<int>(rng() % static_cast<unsigned>(d)), d));
  }
  return TorsionPoint(c);
}

LaurentPoly random_poly(const RingContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
  LaurentPoly p(ctx);
  for (int i = 0; i < 4; ++i) {
    Exponents x(static_cast<std::size_t>(ctx.num_vars()));
    for (auto& v : x) v = e(rng);
    p.add_term(x, Rational(c(rng)));
  }
  return p;
}

} // namespace

TEST_CASE("evaluate examples") {
  const auto ctx = RingContext::standard(1, 0);
  auto one = TorsionPoint({TorsionCoord(Rational(1), Rational(0))});
  auto two = TorsionPoint({TorsionCoord(Rational(2), Rational(0))});
  auto i4 = TorsionPoint({TorsionCoord(Rational(1), Rational(1, 4))});
  CHECK(evaluate(parse_poly(ctx, "t1 - 1"), one).is_zero());
  CHECK(evaluate(parse_poly(ctx, "t1 - 1"), two) == Cyclotomic(Rational(1)));
  const auto v = evaluate(parse_poly(ctx, "t1^2"), i4);
  CHECK(v == Cyclotomic(Rational(-1)));
  REQUIRE(v.as_polar());
  CHECK(v.as_polar()->first == 1);
  CHECK(v.as_polar()->second == Rational(1, 2));
}

TEST_CASE("torsion coordinates normalize") {
  TorsionCoord c(Rational(-2), Rational(3, 4));
  CHECK(c.modulus == 2);
  CHECK(c.angle == Rational(1, 4));
  CHECK(TorsionCoord(Rational(1), Rational(1, 2)).as_rational() == Rational(-1));
  CHECK((c * c.inverse()).is_one());
  CHECK(TorsionCoord(Rational(1), Rational(1, 3)).pow(3).is_one());
}

TEST_CASE("cyclotomic field arithmetic") {
  const auto z = Cyclotomic::root_of_unity(12, 1);
  Cyclotomic p(Rational(1));
  for (int i = 0; i < 12; ++i) p *= z;
  CHECK(p == Cyclotomic(Rational(1)));
  const auto a = Cyclotomic::root_of_unity(6, 1) + Cyclotomic(Rational(2));
  CHECK(a * a.inverse() == Cyclotomic(Rational(1)));
  CHECK(Cyclotomic::root_of_unity(4, 1) * Cyclotomic::root_of_unity(6, 1) == Cyclotomic::root_of_unity(12, 5));
  CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});
}

TEST_CASE("evaluation is a ring homomorphism") {
  const auto ctx = RingContext::standard(2, 0);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_poly(ctx, rng), b = random_poly(ctx, rng);
    const auto rho = random_point(2, rng);
    CHECK(evaluate(a * b, rho) == evaluate(a, rho) * evaluate(b, rho));
    CHECK(evaluate(a + b, rho) == evaluate(a, rho) + evaluate(b, rho));
  }
}

TEST_CASE("substitution is natural for evaluation") {
  const auto ctx = RingContext::standard(2, 0);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> pw(-2, 2), sc(1, 3);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_poly(ctx, rng);
    std::vector<VarImage> map;
    std::vector<TorsionCoord> moved;
    const auto rho = random_point(2, rng);
    for (int j = 0; j < 2; ++j) {
      int n = pw(rng);
      if (n == 0) n = 1;
      const Rational lam(sc(rng), sc(rng));
      map.push_back({lam, n});
      moved.push_back(TorsionCoord(lam, Rational(0)) * rho[j].pow(n));
    }
    CHECK(evaluate(substitute(p, map), rho) == evaluate(p, TorsionPoint(moved)));
  }
}
