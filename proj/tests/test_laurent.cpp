#include "doctest.h"

#include "pervcheck/errors.hpp"
#include "pervcheck/laurent.hpp"
#include "pervcheck/poly_text.hpp"

#include <random>

using namespace pervcheck;

namespace {

LaurentPoly P(const RingContext& ctx, const char* s) { return parse_poly(ctx, s); }

LaurentPoly random_poly(const RingContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-2, 2), c(-5, 5), n(1, 4);
  LaurentPoly p(ctx);
  const int k = n(rng);
  for (int i = 0; i < k; ++i) {
    Exponents x(static_cast<std::size_t>(ctx.num_vars()));
    for (auto& v : x) v = e(rng);
    p.add_term(x, Rational(c(rng), 1 + (c(rng) + 5) % 3));
  }
  return p;
}

} // namespace

TEST_CASE("ring operations") {
  const auto ctx = RingContext::standard(2, 0);
  CHECK((P(ctx, "t1 - 1") + P(ctx, "1 - t1")).is_zero());
  CHECK(format_poly(P(ctx, "t1 - 1") * P(ctx, "t1^-1")) == "1 - t1^-1");
  CHECK(format_poly(P(ctx, "t1 - 1") * P(ctx, "t2 - 1")) == "t1*t2 - t1 - t2 + 1");
  CHECK((P(ctx, "t1 - 1") * P(ctx, "t2 - 1")) == P(ctx, "t1*t2 - t1 - t2 + 1"));
  CHECK(format_poly(-P(ctx, "t1")) == "-t1");
}

TEST_CASE("context mismatch is rejected") {
  const auto a = RingContext::standard(1, 0);
  const auto b = RingContext::standard(2, 0);
  CHECK_THROWS_AS(LaurentPoly::variable(a, 0) + LaurentPoly::variable(b, 0), InputError);
  CHECK_THROWS_AS(RingContext({"x", "x"}, 2, 0), InputError);
  CHECK_THROWS_AS(RingContext({"x", "y"}, 1, 1), InputError);
}

TEST_CASE("substitute") {
  const auto c1 = RingContext::standard(1, 0);
  std::vector<VarImage> m1{{Rational(2), 1}};
  CHECK(substitute(P(c1, "t1 - 1"), m1) == P(c1, "2*t1 - 1"));
  std::vector<VarImage> m2{{Rational(1), 2}};
  CHECK(substitute(P(c1, "t1 - 1"), m2) == P(c1, "t1^2 - 1"));
  const auto c2 = RingContext::standard(2, 0);
  std::vector<VarImage> m3{{Rational(1), -1}, {Rational(3), 1}};
  CHECK(substitute(P(c2, "t1*t2"), m3) == P(c2, "3*t1^-1*t2"));
  std::vector<VarImage> bad{{Rational(0), 1}};
  CHECK_THROWS_AS(substitute(P(c1, "t1"), bad), InputError);
  std::vector<VarImage> bad2{{Rational(1), 0}};
  CHECK_THROWS_AS(substitute(P(c1, "t1"), bad2), InputError);
}

TEST_CASE("parse and print round trip") {
  const auto ctx = RingContext::standard(1, 1);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_poly(ctx, rng);
    CHECK(parse_poly(ctx, format_poly(p)) == p);
  }
  CHECK(P(ctx, " 3/4 * t1 ^ ( -1 ) * t3 + 2 ") == P(ctx, "3/4*t1^-1*t3 + 2"));
  CHECK_THROWS_AS(P(ctx, "t1 +"), InputError);
  CHECK_THROWS_AS(P(ctx, "t9"), InputError);
  CHECK_THROWS_AS(P(ctx, "1/0"), InputError);
}

TEST_CASE("exact division") {
  const auto ctx = RingContext::standard(2, 0);
  const auto a = P(ctx, "t1 - 1");
  const auto b = P(ctx, "t2^-1 + 3*t1");
  CHECK(exact_divide(a * b, b) == a);
  CHECK(exact_divide(a * b * P(ctx, "t1^-3"), a) == b * P(ctx, "t1^-3"));
  CHECK_THROWS_AS(exact_divide(a, b), std::domain_error);
}

TEST_CASE("normalized associate") {
  const auto ctx = RingContext::standard(2, 0);
  CHECK(P(ctx, "-2/3*t1^-1 + 4/3*t2^-2").normalized_associate() == P(ctx, "2*t1 - t2^2"));
  CHECK(P(ctx, "-2*t1^-1*t2 + 4*t1^-1").normalized_associate() == P(ctx, "t2 - 2"));
}
