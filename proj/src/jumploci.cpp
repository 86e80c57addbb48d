#include "pervcheck/jumploci.hpp"

#include "pervcheck/errors.hpp"
#include "pervcheck/poly_text.hpp"

#include <algorithm>

namespace pervcheck {

const char* to_string(Provenance p) { return p == Provenance::Exact ? "exact" : "sampled"; }

LaurentIdeal jump_locus_ideal(const FreeComplex& f, int i) { return fitting_and_jumping_ideals(f, i).second; }

PointMembership membership_at_point(const FreeComplex& f, int i, const TorsionPoint& rho) {
  if (rho.size() != f.context().num_vars()) throw InputError("point has the wrong number of coordinates");
  const int dim = f.rank(i) - rank_at(f.differential(i), rho) - rank_at(f.differential(i - 1), rho);
  return {dim > 0, dim};
}

bool vanishes_at(const LaurentIdeal& ideal, const TorsionPoint& rho) {
  return std::all_of(ideal.generators().begin(), ideal.generators().end(),
                     [&](const LaurentPoly& g) { return evaluate(g, rho).is_zero(); });
}

long euler_characteristic(const FreeComplex& f) {
  long chi = 0;
  for (int i = f.min_degree(); i <= f.max_degree(); ++i) chi += (i % 2 == 0 ? 1 : -1) * f.rank(i);
  return chi;
}

bool is_whole_space(const LaurentIdeal& ideal) { return ideal.generators_all_zero(); }

namespace {

// Adjacent pairs in chain order, each as (smaller locus, larger locus).
std::vector<std::pair<int, int>> chain_pairs(const FreeComplex& f) {
  std::vector<std::pair<int, int>> out;
  for (int i = f.min_degree() - 1; i <= f.max_degree(); ++i) out.emplace_back(i, i + 1);
  return out;
}

PropagationResult sampled_propagation(const FreeComplex& f, const std::vector<TorsionPoint>& pts) {
  PropagationResult res;
  res.provenance = Provenance::Sampled;
  res.note = "checked pointwise on " + std::to_string(pts.size()) + " points";
  for (const auto& [i, j] : chain_pairs(f)) {
    for (const auto& rho : pts) {
      const bool a = membership_at_point(f, i, rho).member;
      const bool b = membership_at_point(f, j, rho).member;
      const bool bad = (i < 0) ? (a && !b) : (b && !a);
      if (bad) {
        res.ok = false;
        res.failure = {i, j};
        res.note += "; witness " + rho.str();
        return res;
      }
    }
  }
  return res;
}

} // namespace

PropagationResult propagation_check(const FreeComplex& f, const std::vector<TorsionPoint>& fallback) {
  bool assumption = false;
  try {
    assumption = check_assumption(f);
  } catch (const ResourceError&) {
    if (fallback.empty()) throw;
    auto res = sampled_propagation(f, fallback);
    res.note += "; assumption not certified (resource cap)";
    return res;
  }
  if (!assumption) throw PreconditionError("propagation requires F and its dual to be exact in negative degrees");
  try {
    PropagationResult res;
    for (const auto& [i, j] : chain_pairs(f)) {
      const LaurentIdeal a = jump_locus_ideal(f, i);
      const LaurentIdeal b = jump_locus_ideal(f, j);
      // V^i in V^{i+1} below zero, V^{i+1} in V^i from zero on.
      const bool ok = i < 0 ? variety_containment(a, b) : variety_containment(b, a);
      if (!ok) {
        res.ok = false;
        res.failure = {i, j};
        return res;
      }
    }
    return res;
  } catch (const ResourceError&) {
    if (fallback.empty()) throw;
    return sampled_propagation(f, fallback);
  }
}

DegreeReport jump_report(const FreeComplex& f, int i) {
  DegreeReport r;
  r.degree = i;
  const LaurentIdeal J = jump_locus_ideal(f, i);
  for (const auto& g : groebner_basis(J, MonomialOrder::grevlex(f.context().num_vars())))
    r.generators.push_back(format_poly(g));
  r.codim = codimension(J);
  r.empty = r.codim.is_pos_inf();
  r.whole_space = is_whole_space(J);
  return r;
}

} // namespace pervcheck
