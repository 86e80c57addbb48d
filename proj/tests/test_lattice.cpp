#include "doctest.h"

#include "pervcheck/errors.hpp"
#include "pervcheck/lattice.hpp"

#include <random>

using namespace pervcheck;

namespace {

IntMatrix L(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (long x : r) m.back().push_back(Integer(x));
  }
  return m;
}

TorsionPoint rat(std::initializer_list<long> v) {
  std::vector<Rational> q;
  for (long x : v) q.emplace_back(x);
  return TorsionPoint::from_rationals(q);
}

} // namespace

TEST_CASE("saturation") {
  CHECK(saturate_lattice(L({{2, 0}}), 2) == L({{1, 0}}));
  CHECK(saturate_lattice(L({{1, 1}, {1, -1}}), 2) == L({{1, 0}, {0, 1}}));
  CHECK(saturate_lattice({}, 2).empty());
  CHECK(saturate_lattice(L({{2, 4, 6}, {0, 3, 3}}), 3) == saturate_lattice(saturate_lattice(L({{2, 4, 6}, {0, 3, 3}}), 3), 3));
  CHECK(saturate_lattice(L({{2, 4, 6}}), 3) == L({{1, 2, 3}}));
}

TEST_CASE("diagonalization identities") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix a(3, IntVector(4));
    for (auto& r : a)
      for (auto& x : r) x = static_cast<long>(rng() % 11) - 5;
    const auto d = diagonalize(a, 4);
    // U A V = D and V W = I.
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        Integer s = 0;
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t l = 0; l < 4; ++l) s += d.U[i][k] * a[k][l] * d.V[l][j];
        CHECK(s == d.D[i][j]);
        if (i != j) CHECK(d.D[i][j] == 0);
      }
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        Integer s = 0;
        for (std::size_t k = 0; k < 4; ++k) s += d.V[i][k] * d.W[k][j];
        CHECK(s == (i == j ? 1 : 0));
      }
  }
}

TEST_CASE("component codims") {
  const auto e = RingContext::standard(0, 1);
  const LinearComponent pt(e, rat({1, 1}), L({{1, 0}, {0, 1}}));
  CHECK(pt.codims().codim == 2);
  CHECK(pt.codims().codim_a == 1);
  CHECK(pt.codims().codim_sa == 1);
  const auto t = RingContext::standard(1, 0);
  const LinearComponent tp(t, rat({1}), L({{1}}));
  CHECK(tp.codims().codim == 1);
  CHECK(tp.codims().codim_a == 0);
  CHECK(tp.codims().codim_sa == 1);
  const auto mixed = RingContext::standard(1, 1);
  const LinearComponent mc(mixed, rat({1, 1, 1}), L({{1, 0, 0}}));
  CHECK(mc.codims().codim == 1);
  CHECK(mc.codims().codim_a == 0);
  CHECK(mc.codims().codim_sa == 1);
  CHECK_THROWS_AS(LinearComponent(e, rat({1, 1}), L({{1, 0}})), InputError);
}

TEST_CASE("containment") {
  const auto c = RingContext::standard(2, 0);
  const LinearComponent point(c, rat({1, 1}), L({{1, 0}, {0, 1}}));
  const LinearComponent line(c, rat({1, 1}), L({{1, 0}}));
  CHECK(component_containment(point, line));
  CHECK_FALSE(component_containment(line, point));
  const LinearComponent moved(c, rat({2, 1}), L({{1, 0}, {0, 1}}));
  CHECK_FALSE(component_containment(moved, line));
  CHECK(component_containment(line, line));
  // Translating along the subtorus does not change the component.
  const LinearComponent line2(c, rat({1, 5}), L({{1, 0}}));
  CHECK(same_component(line, line2));
}

TEST_CASE("union codims") {
  const auto c = RingContext::standard(2, 0);
  const LinearComponent point(c, rat({1, 1}), L({{1, 0}, {0, 1}}));
  const LinearComponent line(c, rat({2, 1}), L({{1, 0}}));
  const auto u1 = union_codims(LinearUnion(c, {point}));
  CHECK(u1.codim_sa == ExtInt(2));
  CHECK(u1.codim_a == ExtInt(0));
  const auto e = union_codims(LinearUnion(c));
  CHECK(e.codim_a.is_pos_inf());
  CHECK(e.codim_sa.is_pos_inf());
  CHECK(e.dim_a.is_neg_inf());
  CHECK(union_codims(LinearUnion(c, {point, line})).codim_sa == ExtInt(1));
  // Normalization drops contained components.
  const LinearComponent through(c, rat({1, 3}), L({{1, 0}}));
  CHECK(LinearUnion(c, {point, through}).components().size() == 1);
}

TEST_CASE("points on components and ideals") {
  const auto c = RingContext::standard(2, 1);
  const LinearComponent comp(c, rat({2, 3, 1, 1}), L({{1, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}}));
  CHECK(comp.codims().g2 == 1);
  CHECK(comp.codims().m2 == 1);
  for (int k = 1; k <= 5; ++k) {
    const auto p = comp.point({TorsionCoord(Rational(k), Rational(1, k + 1))});
    CHECK(comp.contains(p));
    const auto I = comp.ideal();
    for (const auto& g : I.generators()) CHECK(evaluate(g, p).is_zero());
  }
}
