#pragma once

#include "pervcheck/complex.hpp"
#include "pervcheck/perversity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pervcheck {

/// Koszul complex on `gens` with Lambda^k in degree top - k. The basis of
/// Lambda^k is the lex-ordered k-subsets S, and d e_S = sum_j (-1)^j g_{s_j} e_{S - s_j}.
FreeComplex koszul(const std::vector<LaurentPoly>& gens, int top);

/// A complex with its known loci and the expectations the test suites check.
struct Fixture {
  std::string name;
  std::string description;
  FreeComplex complex;
  LociProfile loci;
  /// Whether the complex models the Mellin transform of a perverse sheaf.
  bool mellin = false;
  /// False when a mutation broke d o d = 0.
  bool valid = true;
  /// Expected verdict and violation degrees (ascending) on the declared loci.
  Verdict expected_verdict = Verdict::Perverse;
  std::vector<int> expected_violations;
  /// Known to have nonzero cohomology in some negative degree.
  bool negative_cohomology = false;
};

/// Koszul complex on t_i - 1 over all m + 2g variables in degrees [-m-g, g]:
/// the constant perverse sheaf on T^m x A^g, with V^i = {1} for i in that range.
Fixture mellin_constant(int m, int g, const std::string& prefix = "t");
Fixture mellin_constant_torus(int m);
/// Gamma^r in degree 0 with zero differentials: a skyscraper at the identity.
Fixture skyscraper(int m, int g, int r, const std::string& prefix = "t");

Fixture twist_fixture(const Fixture& f, const std::vector<Rational>& lambda);
Fixture tensor_fixture(const Fixture& a, const Fixture& b);
Fixture sum_fixture(const Fixture& a, const Fixture& b);
Fixture induce_fixture(const Fixture& f, const std::vector<int>& n);

struct Mutation {
  enum class Kind { ShiftBy, ZeroOutEntry, ScaleEntry } kind = Kind::ShiftBy;
  /// ShiftBy: loci move from degree i to i + amount.
  int amount = 0;
  int degree = 0;
  int row = 0;
  int col = 0;
  Rational factor{1};
};

/// Mutant with recomputed expectations; `valid` reports whether d o d = 0 survived.
Fixture mutate(const Fixture& f, const Mutation& m);

/// Named fixtures covering tori, abelian and mixed factors, twists, tensors,
/// inductions, sums and skyscrapers (all valid, all Mellin).
std::vector<Fixture> catalogue();
std::vector<std::string> catalogue_names();
/// Catalogue entry by name; nullopt if unknown.
std::optional<Fixture> catalogue_fixture(const std::string& name);

/// Predicted verdict and violation degrees of a profile shifted by `amount`
/// (+1 or -1) when the original is perverse: shifting up breaks (a) exactly
/// where codim_a V^i = i, shifting down breaks (b) where codim_sa V^i = -i.
std::pair<Verdict, std::vector<int>> predicted_shift_outcome(const LociProfile& p, int amount);

} // namespace pervcheck
