#include "pervcheck/fixtures.hpp"

#include "pervcheck/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace pervcheck {

namespace {

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

RingContext named_context(int m, int g, const std::string& prefix) {
  std::vector<std::string> names;
  for (int i = 1; i <= m + 2 * g; ++i) names.push_back(prefix + std::to_string(i));
  return RingContext(names, m, g);
}

LinearComponent identity_point(const RingContext& ctx) {
  const int n = ctx.num_vars();
  IntMatrix k(static_cast<std::size_t>(n), IntVector(static_cast<std::size_t>(n), Integer(0)));
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return LinearComponent(ctx, TorsionPoint::identity(n), k);
}

LociProfile map_components(const LociProfile& p, const RingContext& ctx,
                           const std::function<LinearComponent(const LinearComponent&)>& fn) {
  LociProfile out(ctx);
  for (const auto& [i, u] : p.entries()) {
    std::vector<LinearComponent> comps;
    for (const auto& c : u.components()) comps.push_back(fn(c));
    out.set(i, LinearUnion(ctx, std::move(comps)));
  }
  return out;
}

// Positions of each factor's variables in the tensor ring.
std::pair<std::vector<int>, std::vector<int>> tensor_positions(const RingContext& a, const RingContext& b) {
  std::vector<int> wa, wb;
  int pos = 0;
  for (int i = 0; i < a.torus_rank(); ++i) wa.push_back(pos++);
  for (int i = 0; i < b.torus_rank(); ++i) wb.push_back(pos++);
  for (int i = a.torus_rank(); i < a.num_vars(); ++i) wa.push_back(pos++);
  for (int i = b.torus_rank(); i < b.num_vars(); ++i) wb.push_back(pos++);
  return {wa, wb};
}

Fixture make_fixture(std::string name, std::string description, FreeComplex complex) {
  LociProfile loci(complex.context());
  return Fixture{std::move(name), std::move(description), std::move(complex), std::move(loci), false, true,
                 Verdict::Perverse, {}, false};
}

} // namespace

FreeComplex koszul(const std::vector<LaurentPoly>& gens, int top) {
  if (gens.empty()) throw InputError("koszul complex needs at least one generator");
  const RingContext& ctx = gens.front().context();
  const int n = static_cast<int>(gens.size());
  std::vector<std::vector<std::vector<int>>> bases;
  for (int k = 0; k <= n; ++k) bases.push_back(k_subsets(n, k));
  // Degree top - n holds Lambda^n.
  std::vector<int> ranks;
  for (int k = n; k >= 0; --k) ranks.push_back(static_cast<int>(bases[static_cast<std::size_t>(k)].size()));
  std::vector<PolyMatrix> diffs;
  for (int k = n; k >= 1; --k) {
    const auto& src = bases[static_cast<std::size_t>(k)];
    const auto& dst = bases[static_cast<std::size_t>(k - 1)];
    std::map<std::vector<int>, int> index;
    for (std::size_t r = 0; r < dst.size(); ++r) index[dst[r]] = static_cast<int>(r);
    PolyMatrix d(ctx, static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c)
      for (std::size_t j = 0; j < src[c].size(); ++j) {
        std::vector<int> rest = src[c];
        rest.erase(rest.begin() + static_cast<long>(j));
        LaurentPoly e = gens[static_cast<std::size_t>(src[c][j])];
        if (j % 2 == 1) e = -e;
        d.set(index.at(rest), static_cast<int>(c), std::move(e));
      }
    diffs.push_back(std::move(d));
  }
  return FreeComplex(ctx, top - n, std::move(ranks), std::move(diffs));
}

Fixture mellin_constant(int m, int g, const std::string& prefix) {
  if (m < 0 || g < 0 || m + g == 0) throw InputError("constant sheaf fixture needs m + g >= 1");
  const RingContext ctx = named_context(m, g, prefix);
  std::vector<LaurentPoly> gens;
  for (int i = 0; i < ctx.num_vars(); ++i)
    gens.push_back(LaurentPoly::variable(ctx, i) - LaurentPoly::constant(ctx, Rational(1)));
  Fixture f = make_fixture("constant_m" + std::to_string(m) + "_g" + std::to_string(g),
                           "Koszul complex on t_i - 1, constant perverse sheaf", koszul(gens, g));
  for (int i = -m - g; i <= g; ++i) f.loci.set(i, LinearUnion(ctx, {identity_point(ctx)}));
  f.loci.euler = 0;
  f.mellin = true;
  return f;
}

Fixture mellin_constant_torus(int m) {
  if (m < 1) throw InputError("torus fixture needs m >= 1");
  Fixture f = mellin_constant(m, 0);
  f.name = "torus_m" + std::to_string(m);
  return f;
}

Fixture skyscraper(int m, int g, int r, const std::string& prefix) {
  if (r < 1) throw InputError("skyscraper rank must be positive");
  const RingContext ctx = named_context(m, g, prefix);
  Fixture f = make_fixture("skyscraper_m" + std::to_string(m) + "_g" + std::to_string(g) + "_r" + std::to_string(r),
                           "free module in degree 0, skyscraper at the identity", FreeComplex(ctx, 0, {r}, {}));
  f.loci.set(0, LinearUnion(ctx, {LinearComponent(ctx, TorsionPoint::identity(ctx.num_vars()), {})}));
  f.loci.euler = r;
  f.mellin = true;
  return f;
}

Fixture twist_fixture(const Fixture& f, const std::vector<Rational>& lambda) {
  const TorsionPoint l = TorsionPoint::from_rationals(lambda);
  const TorsionPoint inv = l.inverse();
  Fixture out = f;
  out.name = "twist(" + f.name + ")";
  out.complex = twist(f.complex, l);
  // Tensoring with a rank-one local system translates the loci by its inverse.
  out.loci = map_components(f.loci, f.complex.context(), [&](const LinearComponent& c) {
    return LinearComponent(c.context(), inv * c.translate(), c.lattice());
  });
  out.loci.euler = f.loci.euler;
  return out;
}

Fixture tensor_fixture(const Fixture& a, const Fixture& b) {
  const FreeComplex t = external_tensor(a.complex, b.complex);
  const RingContext& ctx = t.context();
  const auto [wa, wb] = tensor_positions(a.complex.context(), b.complex.context());
  const int n = ctx.num_vars();
  auto product = [&](const LinearComponent& x, const LinearComponent& y) {
    std::vector<TorsionCoord> rho(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < wa.size(); ++i) rho[static_cast<std::size_t>(wa[i])] = x.translate()[static_cast<int>(i)];
    for (std::size_t i = 0; i < wb.size(); ++i) rho[static_cast<std::size_t>(wb[i])] = y.translate()[static_cast<int>(i)];
    IntMatrix k;
    for (const auto& row : x.lattice()) {
      IntVector v(static_cast<std::size_t>(n), Integer(0));
      for (std::size_t i = 0; i < row.size(); ++i) v[static_cast<std::size_t>(wa[i])] = row[i];
      k.push_back(std::move(v));
    }
    for (const auto& row : y.lattice()) {
      IntVector v(static_cast<std::size_t>(n), Integer(0));
      for (std::size_t i = 0; i < row.size(); ++i) v[static_cast<std::size_t>(wb[i])] = row[i];
      k.push_back(std::move(v));
    }
    return LinearComponent(ctx, TorsionPoint(rho), k);
  };
  Fixture out = make_fixture("tensor(" + a.name + "," + b.name + ")", "external tensor product", t);
  // Kuenneth over the residue field at a point.
  std::map<int, std::vector<LinearComponent>> loci;
  for (const auto& [p, ua] : a.loci.entries())
    for (const auto& [q, ub] : b.loci.entries())
      for (const auto& x : ua.components())
        for (const auto& y : ub.components()) loci[p + q].push_back(product(x, y));
  for (auto& [i, comps] : loci) out.loci.set(i, LinearUnion(ctx, std::move(comps)));
  if (a.loci.euler && b.loci.euler) out.loci.euler = *a.loci.euler * *b.loci.euler;
  out.mellin = a.mellin && b.mellin;
  return out;
}

Fixture sum_fixture(const Fixture& a, const Fixture& b) {
  Fixture out = make_fixture("sum(" + a.name + "," + b.name + ")", "direct sum", direct_sum(a.complex, b.complex));
  std::map<int, std::vector<LinearComponent>> loci;
  for (const auto* f : {&a, &b})
    for (const auto& [i, u] : f->loci.entries())
      for (const auto& c : u.components()) loci[i].push_back(c);
  for (auto& [i, comps] : loci) out.loci.set(i, LinearUnion(a.complex.context(), std::move(comps)));
  if (a.loci.euler && b.loci.euler) out.loci.euler = *a.loci.euler + *b.loci.euler;
  out.mellin = a.mellin && b.mellin;
  return out;
}

Fixture induce_fixture(const Fixture& f, const std::vector<int>& n) {
  Fixture out = f;
  std::string tag;
  for (int x : n) tag += (tag.empty() ? "" : ",") + std::to_string(x);
  out.name = "induce(" + f.name + ";" + tag + ")";
  out.complex = induce(f.complex, n);
  const int nv = f.complex.context().num_vars();
  const long l = std::accumulate(n.begin(), n.end(), 1L, [](long a, int b) { return std::lcm(a, static_cast<long>(b)); });
  // Loci are the images under rho -> rho^n: translate rho^n, lattice {k : n k in K}.
  out.loci = map_components(f.loci, f.complex.context(), [&](const LinearComponent& c) {
    IntMatrix k;
    for (const auto& row : c.lattice()) {
      IntVector v;
      for (int i = 0; i < nv; ++i) v.push_back(row[static_cast<std::size_t>(i)] * (l / n[static_cast<std::size_t>(i)]));
      k.push_back(std::move(v));
    }
    return LinearComponent(c.context(), c.translate().pow_each(n), k);
  });
  long block = 1;
  for (int x : n) block *= x;
  if (f.loci.euler) out.loci.euler = *f.loci.euler * block;
  return out;
}

std::pair<Verdict, std::vector<int>> predicted_shift_outcome(const LociProfile& p, int amount) {
  std::vector<int> degrees;
  for (const auto& [i, u] : p.entries()) {
    const auto c = union_codims(u);
    const int j = i + amount;
    if (amount > 0 && j >= 0 && c.codim_a < ExtInt(j)) degrees.push_back(j);
    if (amount < 0 && j <= 0 && c.codim_sa < ExtInt(-j)) degrees.push_back(j);
  }
  if (degrees.empty() || amount == 0) return {Verdict::Perverse, degrees};
  return {amount > 0 ? Verdict::LowerOnly : Verdict::UpperOnly, degrees};
}

Fixture mutate(const Fixture& f, const Mutation& m) {
  Fixture out = f;
  out.mellin = false;
  switch (m.kind) {
  case Mutation::Kind::ShiftBy: {
    out.name = f.name + "[shift_by " + std::to_string(m.amount) + "]";
    out.complex = shift(f.complex, -m.amount);
    out.loci = LociProfile(f.complex.context());
    for (const auto& [i, u] : f.loci.entries()) out.loci.set(i + m.amount, u);
    out.loci.euler = f.loci.euler;
    if (f.loci.euler && m.amount % 2 != 0) out.loci.euler = -*f.loci.euler;
    std::tie(out.expected_verdict, out.expected_violations) = predicted_shift_outcome(f.loci, m.amount);
    // The top cohomology is a cokernel, nonzero exactly when the top locus is.
    const int top = f.complex.max_degree();
    out.negative_cohomology = top + m.amount < 0 && !f.loci.locus(top).empty();
    break;
  }
  case Mutation::Kind::ZeroOutEntry:
  case Mutation::Kind::ScaleEntry: {
    const bool zero = m.kind == Mutation::Kind::ZeroOutEntry;
    out.name = f.name + (zero ? "[zero " : "[scale ") + std::to_string(m.degree) + "," + std::to_string(m.row) + "," +
               std::to_string(m.col) + "]";
    if (m.degree < f.complex.min_degree() || m.degree >= f.complex.max_degree())
      throw InputError("mutation targets a degree without a differential");
    std::vector<PolyMatrix> diffs = f.complex.differentials();
    auto& d = diffs[static_cast<std::size_t>(m.degree - f.complex.min_degree())];
    if (m.row < 0 || m.row >= d.rows() || m.col < 0 || m.col >= d.cols())
      throw InputError("mutation entry out of range");
    d.set(m.row, m.col, zero ? LaurentPoly(f.complex.context()) : d.at(m.row, m.col) * m.factor);
    out.complex = FreeComplex(f.complex.context(), f.complex.min_degree(), f.complex.ranks(), std::move(diffs));
    out.loci = LociProfile(f.complex.context());
    out.loci.euler = f.loci.euler;
    out.valid = validate(out.complex).ok;
    out.expected_violations.clear();
    if (out.valid) {
      // Positive generic rank of H^i forces H^i != 0.
      for (int i = out.complex.min_degree(); i < 0; ++i)
        if (out.complex.rank(i) > out.complex.differential_rank(i) + out.complex.differential_rank(i - 1))
          out.negative_cohomology = true;
    }
    break;
  }
  }
  return out;
}

namespace {

using Builder = std::function<Fixture()>;

const std::vector<std::pair<std::string, Builder>>& builders() {
  static const std::vector<std::pair<std::string, Builder>> list = [] {
    std::vector<std::pair<std::string, Builder>> b;
    auto q = [](long a, long c = 1) { return Rational(a, c); };
    b.emplace_back("torus_m1", [] { return mellin_constant_torus(1); });
    b.emplace_back("torus_m2", [] { return mellin_constant_torus(2); });
    b.emplace_back("torus_m3", [] { return mellin_constant_torus(3); });
    b.emplace_back("abelian_g1", [] { return mellin_constant(0, 1); });
    b.emplace_back("mixed_m1_g1", [] { return mellin_constant(1, 1); });
    b.emplace_back("twist_m1_2", [=] { return twist_fixture(mellin_constant_torus(1), {q(2)}); });
    b.emplace_back("twist_m1_neg1", [=] { return twist_fixture(mellin_constant_torus(1), {q(-1)}); });
    b.emplace_back("twist_m1_third", [=] { return twist_fixture(mellin_constant_torus(1), {q(1, 3)}); });
    b.emplace_back("twist_m2_2_neg1", [=] { return twist_fixture(mellin_constant_torus(2), {q(2), q(-1)}); });
    b.emplace_back("twist_m2_third_2", [=] { return twist_fixture(mellin_constant_torus(2), {q(1, 3), q(2)}); });
    b.emplace_back("twist_g1_2_neg1", [=] { return twist_fixture(mellin_constant(0, 1), {q(2), q(-1)}); });
    b.emplace_back("twist_m1_g1_third", [=] { return twist_fixture(mellin_constant(1, 1), {q(1, 3), q(1), q(2)}); });
    b.emplace_back("tensor_m1_m1",
                   [] { return tensor_fixture(mellin_constant(1, 0, "a"), mellin_constant(1, 0, "b")); });
    b.emplace_back("tensor_m1_twist2", [=] {
      return tensor_fixture(mellin_constant(1, 0, "a"), twist_fixture(mellin_constant(1, 0, "b"), {q(2)}));
    });
    b.emplace_back("tensor_twistneg1_twistthird", [=] {
      return tensor_fixture(twist_fixture(mellin_constant(1, 0, "a"), {q(-1)}),
                            twist_fixture(mellin_constant(1, 0, "b"), {q(1, 3)}));
    });
    b.emplace_back("tensor_m1_g1",
                   [] { return tensor_fixture(mellin_constant(1, 0, "a"), mellin_constant(0, 1, "e")); });
    b.emplace_back("tensor_m1_m2",
                   [] { return tensor_fixture(mellin_constant(1, 0, "a"), mellin_constant(2, 0, "b")); });
    b.emplace_back("induce_m1_n2", [] { return induce_fixture(mellin_constant_torus(1), {2}); });
    b.emplace_back("induce_m1_n3", [] { return induce_fixture(mellin_constant_torus(1), {3}); });
    b.emplace_back("induce_m2_n2_1", [] { return induce_fixture(mellin_constant_torus(2), {2, 1}); });
    b.emplace_back("induce_twistneg1_n2",
                   [=] { return induce_fixture(twist_fixture(mellin_constant_torus(1), {q(-1)}), {2}); });
    b.emplace_back("induce_twist2_n3",
                   [=] { return induce_fixture(twist_fixture(mellin_constant_torus(1), {q(2)}), {3}); });
    b.emplace_back("twist_induce_m1_n2_third",
                   [=] { return twist_fixture(induce_fixture(mellin_constant_torus(1), {2}), {q(1, 3)}); });
    b.emplace_back("sum_m1_twist2",
                   [=] { return sum_fixture(mellin_constant_torus(1), twist_fixture(mellin_constant_torus(1), {q(2)})); });
    b.emplace_back("sum_m1_m1", [] { return sum_fixture(mellin_constant_torus(1), mellin_constant_torus(1)); });
    b.emplace_back("sum_m2_twist", [=] {
      return sum_fixture(mellin_constant_torus(2), twist_fixture(mellin_constant_torus(2), {q(2), q(-1)}));
    });
    b.emplace_back("sum_g1_twist", [=] {
      return sum_fixture(mellin_constant(0, 1), twist_fixture(mellin_constant(0, 1), {q(-1), q(3)}));
    });
    b.emplace_back("skyscraper_m1", [] { return skyscraper(1, 0, 1); });
    b.emplace_back("skyscraper_m2_r2", [] { return skyscraper(2, 0, 2); });
    b.emplace_back("skyscraper_g1", [] { return skyscraper(0, 1, 1); });
    b.emplace_back("sum_m1_skyscraper", [] { return sum_fixture(mellin_constant_torus(1), skyscraper(1, 0, 1)); });
    b.emplace_back("sum_m2_skyscraper_twist", [=] {
      return sum_fixture(twist_fixture(mellin_constant_torus(2), {q(1, 3), q(-1)}), skyscraper(2, 0, 1));
    });
    return b;
  }();
  return list;
}

} // namespace

std::vector<std::string> catalogue_names() {
  std::vector<std::string> out;
  for (const auto& [n, fn] : builders()) out.push_back(n);
  return out;
}

std::vector<Fixture> catalogue() {
  std::vector<Fixture> out;
  for (const auto& [n, fn] : builders()) {
    Fixture f = fn();
    f.name = n;
    out.push_back(std::move(f));
  }
  return out;
}

std::optional<Fixture> catalogue_fixture(const std::string& name) {
  for (const auto& [n, fn] : builders())
    if (n == name) {
      Fixture f = fn();
      f.name = n;
      return f;
    }
  return std::nullopt;
}

} // namespace pervcheck
