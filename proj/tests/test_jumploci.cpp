#include "doctest.h"

#include "pervcheck/errors.hpp"
#include "pervcheck/fixtures.hpp"
#include "pervcheck/jumploci.hpp"
#include "pervcheck/poly_text.hpp"
#include "pervcheck/sampling.hpp"

using namespace pervcheck;

namespace {

TorsionPoint pt(std::initializer_list<std::pair<Rational, Rational>> c) {
  std::vector<TorsionCoord> v;
  for (const auto& [q, t] : c) v.emplace_back(q, t);
  return TorsionPoint(v);
}

} // namespace

TEST_CASE("jump locus ideals of the m=2 torus") {
  const auto f = mellin_constant_torus(2).complex;
  const auto& ctx = f.context();
  const LaurentIdeal point(ctx, {parse_poly(ctx, "t1 - 1"), parse_poly(ctx, "t2 - 1")});
  CHECK(same_radical(jump_locus_ideal(f, 0), point));
  CHECK(jump_locus_ideal(f, 1).is_unit());
  CHECK(jump_locus_ideal(f, -3).is_unit());
  CHECK(codimension(jump_locus_ideal(f, 1)).is_pos_inf());
}

TEST_CASE("membership at points") {
  const auto f = mellin_constant_torus(1).complex;
  const auto one = pt({{Rational(1), Rational(0)}});
  CHECK(membership_at_point(f, 0, one).member);
  CHECK(membership_at_point(f, 0, one).dimension == 1);
  const auto two = pt({{Rational(2), Rational(0)}});
  CHECK_FALSE(membership_at_point(f, 0, two).member);
  CHECK(membership_at_point(f, 0, two).dimension == 0);
  const auto ind = induce(f, {2});
  const auto minus = pt({{Rational(1), Rational(1, 2)}});
  // The induced complex lives on the quotient torus: its locus is {1}.
  CHECK(membership_at_point(ind, 0, one).member);
  CHECK(membership_at_point(ind, 0, one).dimension == 1);
  CHECK_FALSE(membership_at_point(ind, 0, minus).member);
  // Upstairs, -1 is a square root of 1 and lies over the image point.
  CHECK(membership_at_point(f, 0, one).member);
}

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic(mellin_constant_torus(1).complex) == 0);
  CHECK(euler_characteristic(mellin_constant_torus(2).complex) == 0);
  const auto s = sum_fixture(mellin_constant_torus(1), skyscraper(1, 0, 1));
  CHECK(euler_characteristic(s.complex) == 1);
}

TEST_CASE("propagation") {
  const auto f = mellin_constant_torus(2).complex;
  const auto r = propagation_check(f);
  CHECK(r.ok);
  CHECK(r.provenance == Provenance::Exact);
  const auto t = tensor_fixture(mellin_constant(1, 0, "a"),
                                twist_fixture(mellin_constant(1, 0, "b"), {Rational(2)}));
  CHECK(propagation_check(t.complex).ok);
  const auto& ctx = t.complex.context();
  const LaurentIdeal p(ctx, {parse_poly(ctx, "a1 - 1"), parse_poly(ctx, "2*b1 - 1")});
  CHECK(same_radical(jump_locus_ideal(t.complex, 0), p));
  CHECK_THROWS_AS(propagation_check(shift(f, 1)), PreconditionError);
}

TEST_CASE("sign-flipped Koszul is rejected at validate") {
  const auto f = mellin_constant_torus(2);
  Mutation m;
  m.kind = Mutation::Kind::ScaleEntry;
  m.degree = -2;
  m.factor = Rational(-1);
  const auto bad = mutate(f, m);
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(validate(bad.complex).ok);
}

TEST_CASE("whole space") {
  const auto c1 = RingContext::standard(1, 0);
  CHECK(is_whole_space(LaurentIdeal::zero(c1)));
  CHECK_FALSE(is_whole_space(LaurentIdeal(c1, {parse_poly(c1, "t1 - 1")})));
  const auto sky = skyscraper(1, 0, 1).complex;
  CHECK(is_whole_space(jump_locus_ideal(sky, 0)));
}

TEST_CASE("twist equivariance and shift covariance") {
  const auto f = mellin_constant_torus(2).complex;
  const auto lam = TorsionPoint::from_rationals(std::vector<Rational>{Rational(2), Rational(-1)});
  const auto tw = twist(f, lam);
  auto pts = sample_points(2, 5, 60);
  for (auto& p : torsion_grid(2, 2)) pts.push_back(p);
  pts.push_back(lam.inverse());
  for (const auto& rho : pts)
    for (int i = -3; i <= 1; ++i) {
      CHECK(membership_at_point(tw, i, rho).member == membership_at_point(f, i, lam * rho).member);
      CHECK(membership_at_point(shift(f, 1), i, rho).member == membership_at_point(f, i + 1, rho).member);
    }
}

TEST_CASE("repeated Koszul generator") {
  const auto c1 = RingContext::standard(1, 0);
  std::vector<LaurentPoly> g{parse_poly(c1, "t1 - 1"), parse_poly(c1, "t1 - 1")};
  const auto k = koszul(g, 0);
  const auto one = TorsionPoint::identity(1);
  for (int i = -2; i <= 0; ++i) CHECK(membership_at_point(k, i, one).member);
  const LaurentIdeal p(c1, {parse_poly(c1, "t1 - 1")});
  for (int i = -2; i <= 0; ++i) CHECK(same_radical(jump_locus_ideal(k, i), p));
}
