#include "pervcheck/perversity.hpp"

#include "pervcheck/errors.hpp"
#include "pervcheck/sampling.hpp"

#include <algorithm>
#include <sstream>

namespace pervcheck {

void LociProfile::set(int i, LinearUnion u) {
  require_same_context(ctx_, u.context(), "loci profile");
  if (u.empty())
    loci_.erase(i);
  else
    loci_.insert_or_assign(i, std::move(u));
}

LinearUnion LociProfile::locus(int i) const {
  if (auto it = loci_.find(i); it != loci_.end()) return it->second;
  return LinearUnion(ctx_);
}

std::optional<std::pair<int, int>> LociProfile::support() const {
  if (loci_.empty()) return std::nullopt;
  return std::make_pair(loci_.begin()->first, loci_.rbegin()->first);
}

const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::Perverse: return "perverse";
  case Verdict::UpperOnly: return "upper-only";
  case Verdict::LowerOnly: return "lower-only";
  case Verdict::Neither: return "neither";
  }
  return "?";
}

bool PerversityReport::upper_holds() const {
  return std::all_of(upper.begin(), upper.end(), [](const CheckLine& l) { return l.pass; });
}

bool PerversityReport::lower_holds() const {
  return std::all_of(lower.begin(), lower.end(), [](const CheckLine& l) { return l.pass; });
}

std::vector<CheckLine> check_upper(const LociProfile& p) {
  std::vector<CheckLine> out;
  for (const auto& [i, u] : p.entries()) {
    if (i < 0 || u.empty()) continue;
    CheckLine l{i, "codim_a", union_codims(u).codim_a, i, true};
    l.pass = l.actual >= ExtInt(i);
    out.push_back(l);
  }
  return out;
}

std::vector<CheckLine> check_lower(const LociProfile& p) {
  std::vector<CheckLine> out;
  for (const auto& [i, u] : p.entries()) {
    if (i > 0 || u.empty()) continue;
    CheckLine l{i, "codim_sa", union_codims(u).codim_sa, -i, true};
    l.pass = l.actual >= ExtInt(-i);
    out.push_back(l);
  }
  return out;
}

namespace {

void finish(PerversityReport& r) {
  for (const auto& l : r.upper)
    if (!l.pass) r.violations.push_back({l.degree, "a", l.measure, l.required, l.actual});
  for (const auto& l : r.lower)
    if (!l.pass) r.violations.push_back({l.degree, "b", l.measure, l.required, l.actual});
  std::sort(r.violations.begin(), r.violations.end(), [](const Violation& x, const Violation& y) {
    return std::tie(x.degree, x.condition) < std::tie(y.degree, y.condition);
  });
  const bool a = r.upper_holds(), b = r.lower_holds();
  r.verdict = a && b ? Verdict::Perverse : a ? Verdict::UpperOnly : b ? Verdict::LowerOnly : Verdict::Neither;
}

AuxCheck support_check(const RingContext& ctx, const std::vector<int>& nonempty) {
  const int lo = -ctx.torus_rank() - ctx.abelian_rank(), hi = ctx.abelian_rank();
  AuxCheck c;
  c.status = "pass";
  std::ostringstream os;
  os << "interval [" << lo << ", " << hi << "]";
  for (int i : nonempty)
    if (i < lo || i > hi) {
      if (c.status == "pass") os << "; nonempty outside:";
      c.status = "fail";
      os << " " << i;
    }
  c.detail = os.str();
  return c;
}

AuxCheck euler_check(std::optional<long> chi, bool v0_whole) {
  AuxCheck c;
  if (!chi) {
    c.detail = "euler characteristic not declared";
    return c;
  }
  const bool ok = *chi >= 0 && ((*chi == 0) == !v0_whole);
  c.status = ok ? "pass" : "fail";
  c.detail = "chi = " + std::to_string(*chi) + ", V^0 " + (v0_whole ? "is" : "is not") + " the whole space";
  return c;
}

} // namespace

PerversityReport perversity_verdict(const LociProfile& p) {
  PerversityReport r;
  r.source = "profile";
  r.upper = check_upper(p);
  r.lower = check_lower(p);
  finish(r);

  std::vector<int> nonempty;
  for (const auto& [i, u] : p.entries()) nonempty.push_back(i);
  r.support = support_check(p.context(), nonempty);

  r.propagation.status = "pass";
  if (auto s = p.support()) {
    for (int i = std::min(s->first, 0) - 1; i <= std::max(s->second, 0); ++i) {
      const LinearUnion a = p.locus(i), b = p.locus(i + 1);
      const bool ok = i < 0 ? union_containment(a, b) : union_containment(b, a);
      if (!ok) {
        r.propagation.status = "fail";
        r.propagation.detail = "V^" + std::to_string(i) + (i < 0 ? " not inside V^" : " does not contain V^") +
                               std::to_string(i + 1);
        break;
      }
    }
  }
  r.euler_characteristic = p.euler;
  r.euler = euler_check(p.euler, p.locus(0).is_whole_space());
  return r;
}

std::vector<TorsionPoint> points_on_loci(const LociProfile& p, std::uint64_t seed, int per_component) {
  std::vector<TorsionPoint> out;
  SampleRng rng(seed ^ 0x5bd1e995ULL);
  for (const auto& [i, u] : p.entries())
    for (const auto& c : u.components())
      for (int k = 0; k < per_component; ++k) {
        const TorsionPoint params = k % 2 == 0 ? random_rational_point(c.dimension(), rng)
                                               : random_torsion_point(c.dimension(), rng, true);
        out.push_back(c.point(params.coords()));
      }
  return out;
}

namespace {

std::vector<TorsionPoint> consistency_points(const FreeComplex& f, const LociProfile& p, const ConsistencyOptions& o) {
  const int n = f.context().num_vars();
  std::vector<TorsionPoint> pts = sample_points(n, o.seed, o.samples);
  for (auto& x : points_on_loci(p, o.seed, 4)) pts.push_back(std::move(x));
  for (auto& x : torsion_grid(n, n <= 3 ? 6 : 2)) pts.push_back(std::move(x));
  return pts;
}

std::string witness_text(int i, const TorsionPoint& rho, bool complex_says) {
  return "degree " + std::to_string(i) + ", point " + rho.str() + ": complex " +
         (complex_says ? "has" : "has no") + " cohomology, declared loci " + (complex_says ? "exclude" : "contain") +
         " the point";
}

} // namespace

PerversityReport perversity_verdict(const FreeComplex& f, const LociProfile& p, const ConsistencyOptions& opts) {
  require_same_context(f.context(), p.context(), "perversity verdict");
  const auto v = validate(f);
  if (!v.ok) throw PreconditionError("complex fails validation: " + v.message);
  const long chi = euler_characteristic(f);
  if (p.euler && *p.euler != chi)
    throw InconsistencyError("declared euler characteristic disagrees with the complex",
                             "declared " + std::to_string(*p.euler) + ", complex " + std::to_string(chi));

  int lo = f.min_degree(), hi = f.max_degree();
  if (auto s = p.support()) {
    lo = std::min(lo, s->first);
    hi = std::max(hi, s->second);
  }
  const auto pts = consistency_points(f, p, opts);

  // Sampled comparison first: it produces witnesses.
  for (int i = lo; i <= hi; ++i) {
    const LinearUnion u = p.locus(i);
    for (const auto& rho : pts) {
      const bool c = membership_at_point(f, i, rho).member;
      if (c != u.contains(rho))
        throw InconsistencyError("declared loci disagree with the complex", witness_text(i, rho, c));
    }
  }

  bool all_exact = opts.exact;
  std::string notes;
  if (opts.exact) {
    for (int i = lo; i <= hi; ++i) {
      const LinearUnion u = p.locus(i);
      if (!u.has_rational_translates()) {
        all_exact = false;
        notes += " degree " + std::to_string(i) + ": irrational translate, sampled only;";
        continue;
      }
      try {
        if (!same_radical(jump_locus_ideal(f, i), u.ideal()))
          throw InconsistencyError("declared loci disagree with the complex",
                                   "degree " + std::to_string(i) + ": radical of J^" + std::to_string(i) +
                                       " differs from the ideal of the declared locus");
      } catch (const ResourceError& e) {
        all_exact = false;
        notes += " degree " + std::to_string(i) + ": " + e.what() + ", sampled only;";
      }
    }
  }

  LociProfile q = p;
  q.euler = chi;
  PerversityReport r = perversity_verdict(q);
  r.source = "complex+profile";
  r.seed = opts.seed;
  r.consistency.status = "pass";
  r.consistency.provenance = all_exact ? Provenance::Exact : Provenance::Sampled;
  r.consistency.detail = std::to_string(pts.size()) + " points per degree" +
                         (opts.exact ? (all_exact ? ", radicals equal in every degree" : ";" + notes) : "");
  return r;
}

PerversityReport ideal_verdict(const FreeComplex& f) {
  const auto& ctx = f.context();
  const bool torus = ctx.abelian_rank() == 0;
  if (!torus && ctx.torus_rank() != 0)
    throw InputError("complexes with both torus and abelian variables need declared loci");
  const auto v = validate(f);
  if (!v.ok) throw PreconditionError("complex fails validation: " + v.message);

  PerversityReport r;
  r.source = torus ? "ideals-torus" : "ideals-abelian";
  std::vector<int> nonempty;
  for (int i = f.min_degree(); i <= f.max_degree(); ++i) {
    const ExtInt c = codimension(jump_locus_ideal(f, i));
    if (c.is_pos_inf()) continue;
    nonempty.push_back(i);
    if (torus) {
      // Every nonempty torus locus has abelian codimension 0.
      if (i >= 0) r.upper.push_back({i, "codim_a", ExtInt(0), i, i <= 0});
      if (i <= 0) r.lower.push_back({i, "codim", c, -i, c >= ExtInt(-i)});
    } else {
      if (i >= 0) r.upper.push_back({i, "codim", c, 2L * i, c >= ExtInt(2L * i)});
      if (i <= 0) r.lower.push_back({i, "codim", c, -2L * i, c >= ExtInt(-2L * i)});
    }
  }
  finish(r);
  r.support = support_check(ctx, nonempty);
  r.euler_characteristic = euler_characteristic(f);
  r.euler = euler_check(r.euler_characteristic, is_whole_space(jump_locus_ideal(f, 0)));
  try {
    const auto prop = propagation_check(f);
    r.propagation.status = prop.ok ? "pass" : "fail";
    if (prop.failure)
      r.propagation.detail = "V^" + std::to_string(prop.failure->first) + " / V^" + std::to_string(prop.failure->second);
  } catch (const PreconditionError&) {
    r.propagation.detail = "complex or its dual has negative-degree cohomology";
  }
  return r;
}

SurvivalResult survival_interval(const LociProfile& p, const LinearComponent& c) {
  if (!p.locus(0).has_component(c)) throw PreconditionError("component is not a component of V^0");
  SurvivalResult s;
  s.lo = -c.codims().m2 - c.codims().g2;
  s.hi = c.codims().g2;
  for (const auto& [i, u] : p.entries())
    if (u.has_component(c)) s.observed.push_back(i);
  std::vector<int> expect;
  for (int i = s.lo; i <= s.hi; ++i) expect.push_back(i);
  s.matches = expect == s.observed;
  return s;
}

} // namespace pervcheck
