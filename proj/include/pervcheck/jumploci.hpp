#pragma once

#include "pervcheck/complex.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pervcheck {

enum class Provenance { Exact, Sampled };
const char* to_string(Provenance p);

/// J^i; its variety is the jump locus V^i.
LaurentIdeal jump_locus_ideal(const FreeComplex& f, int i);

struct PointMembership {
  bool member = false;
  int dimension = 0; // dim H^i(F (x) k_rho)
};

PointMembership membership_at_point(const FreeComplex& f, int i, const TorsionPoint& rho);

/// Whether every generator of I vanishes at rho.
bool vanishes_at(const LaurentIdeal& ideal, const TorsionPoint& rho);

long euler_characteristic(const FreeComplex& f);

/// True iff all generators are zero: V(I) is the whole torus.
bool is_whole_space(const LaurentIdeal& ideal);

struct PropagationResult {
  bool ok = true;
  Provenance provenance = Provenance::Exact;
  /// First failing adjacent pair (i, i+1).
  std::optional<std::pair<int, int>> failure;
  std::string note;
};

/// V^i subset V^{i+1} for i < 0 and V^i superset V^{i+1} for i >= 0. Throws
/// PreconditionError unless check_assumption holds. When minors exceed the
/// size cap the chain is checked pointwise on `fallback` instead.
PropagationResult propagation_check(const FreeComplex& f, const std::vector<TorsionPoint>& fallback = {});

struct DegreeReport {
  int degree = 0;
  std::vector<std::string> generators; // reduced basis of the saturation
  ExtInt codim;
  bool empty = false;
  bool whole_space = false;
  Provenance provenance = Provenance::Exact;
};

DegreeReport jump_report(const FreeComplex& f, int i);

} // namespace pervcheck
