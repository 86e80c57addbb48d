#include "doctest.h"

#include "pervcheck/fixtures.hpp"
#include "pervcheck/poly_text.hpp"

using namespace pervcheck;

TEST_CASE("koszul shapes") {
  const auto c1 = RingContext::standard(1, 0);
  const auto k1 = koszul({parse_poly(c1, "t1 - 1")}, 0);
  CHECK(k1.min_degree() == -1);
  CHECK(k1.ranks() == std::vector<int>{1, 1});
  const auto c2 = RingContext::standard(2, 0);
  const auto k2 = koszul({parse_poly(c2, "t1 - 1"), parse_poly(c2, "t2 - 1")}, 0);
  CHECK(k2.ranks() == std::vector<int>{1, 2, 1});
  const auto c4 = RingContext::standard(4, 0);
  std::vector<LaurentPoly> g;
  for (int i = 0; i < 4; ++i) g.push_back(LaurentPoly::variable(c4, i) - LaurentPoly::constant(c4, Rational(1)));
  const auto k4 = koszul(g, 0);
  CHECK(k4.ranks() == std::vector<int>{1, 4, 6, 4, 1});
  CHECK(validate(k4).ok);
}

TEST_CASE("mellin constant torus") {
  for (int m = 1; m <= 3; ++m) {
    const auto f = mellin_constant_torus(m);
    CHECK(f.mellin);
    CHECK(f.loci.support() == std::make_pair(-m, 0));
    CHECK(f.loci.euler == 0);
    CHECK(!f.loci.locus(0).is_whole_space());
  }
}

TEST_CASE("catalogue") {
  const auto all = catalogue();
  CHECK(all.size() >= 25);
  for (const auto& f : all) {
    INFO(f.name);
    CHECK(validate(f.complex).ok);
    CHECK(f.mellin);
    CHECK(catalogue_fixture(f.name).has_value());
  }
  CHECK_FALSE(catalogue_fixture("nope").has_value());
}

TEST_CASE("mutations") {
  const auto f = mellin_constant_torus(2);
  Mutation up;
  up.amount = 1;
  const auto a = mutate(f, up);
  CHECK(a.expected_verdict == Verdict::LowerOnly);
  CHECK(a.expected_violations == std::vector<int>{1});
  Mutation down;
  down.amount = -1;
  const auto b = mutate(f, down);
  CHECK(b.expected_verdict == Verdict::UpperOnly);
  CHECK(b.expected_violations == std::vector<int>{-3});
  CHECK(b.negative_cohomology);

  Mutation z;
  z.kind = Mutation::Kind::ZeroOutEntry;
  z.degree = -2;
  z.row = 0;
  const auto c = mutate(f, z);
  CHECK_FALSE(c.valid);

  Mutation z1;
  z1.kind = Mutation::Kind::ZeroOutEntry;
  z1.degree = -1;
  const auto d = mutate(mellin_constant_torus(1), z1);
  CHECK(d.valid);
  CHECK(d.negative_cohomology);
}
