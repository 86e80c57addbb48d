#pragma once

#include "pervcheck/groebner.hpp"
#include "pervcheck/matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pervcheck {

/// Bounded complex of finitely generated free modules over the Laurent ring.
/// F^i has rank r_i for min_degree() <= i <= max_degree(); the differential
/// d^i : F^i -> F^{i+1} is an r_{i+1} x r_i matrix acting on columns.
/// Generic ranks and Fitting/jumping ideals are computed lazily and cached.
class FreeComplex {
public:
  /// `differentials[k]` is d^{min_degree + k}; there must be ranks.size() - 1
  /// of them. Shapes are checked (InputError); d o d = 0 is not (see validate).
  FreeComplex(RingContext ctx, int min_degree, std::vector<int> ranks, std::vector<PolyMatrix> differentials);

  const RingContext& context() const { return ctx_; }
  int min_degree() const { return kmin_; }
  int max_degree() const { return kmin_ + static_cast<int>(ranks_.size()) - 1; }
  const std::vector<int>& ranks() const { return ranks_; }
  /// r_i, zero outside the range.
  int rank(int i) const;
  /// d^i for any i; a zero matrix of the right shape outside the range.
  PolyMatrix differential(int i) const;
  const std::vector<PolyMatrix>& differentials() const { return diffs_; }

  /// Generic rank of d^i (cached).
  int differential_rank(int i) const;

  bool operator==(const FreeComplex& o) const;

private:
  struct Cache;
  friend std::pair<LaurentIdeal, LaurentIdeal> fitting_and_jumping_ideals(const FreeComplex&, int);

  RingContext ctx_;
  int kmin_;
  std::vector<int> ranks_;
  std::vector<PolyMatrix> diffs_;
  std::shared_ptr<Cache> cache_;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  /// Location of the first nonzero entry of d^{degree+1} d^{degree}.
  std::optional<int> degree;
  std::optional<int> row;
  std::optional<int> col;
};

ValidationReport validate(const FreeComplex& f);

/// Hom(F, Gamma) with Hom(F^i) in degree -i and transposed differentials.
FreeComplex dual(const FreeComplex& f);
/// F[s]^i = F^{i+s}; differentials are relabelled, not re-signed.
FreeComplex shift(const FreeComplex& f, int s);
FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b);
/// Ring with variables ordered torus(a), torus(b), abelian(a), abelian(b);
/// total complex with d(x (x) y) = dx (x) y + (-1)^p x (x) dy, summands of
/// each total degree ordered by increasing p. Throws InputError on shared
/// variable names.
FreeComplex external_tensor(const FreeComplex& a, const FreeComplex& b);
/// Substitutes t_i -> lambda_i t_i; lambda must be rational and nonzero.
FreeComplex twist(const FreeComplex& f, const TorsionPoint& lambda);
/// Restriction of scalars along t_i -> t_i^{n_i}: each entry becomes the
/// prod(n) x prod(n) matrix of multiplication on the basis t^e, 0 <= e_i < n_i
/// (mixed radix, first variable fastest).
FreeComplex induce(const FreeComplex& f, const std::vector<int>& n);

/// (I^i, J^i) with I^i = I_{rank d^i}(d^i) and
/// J^i = sum_j I_j(d^{i-1}) I_{r_i - j}(d^i). Outside the degree range both
/// are the unit ideal.
std::pair<LaurentIdeal, LaurentIdeal> fitting_and_jumping_ideals(const FreeComplex& f, int i);

struct ExactnessRow {
  int degree = 0;
  int rank = 0;
  int rank_out = 0; // rank d^i
  int rank_in = 0;  // rank d^{i-1}
  ExtInt codim;     // codim I^i
  bool rank_ok = false;
  bool depth_ok = false;
};

struct ExactnessCertificate {
  bool exact = true;
  std::vector<ExactnessRow> rows;
  std::string str() const;
};

/// Buchsbaum-Eisenbud test on the given negative degrees: r_i = rank d^i +
/// rank d^{i-1} and codim I^i >= -i. Throws PreconditionError on a
/// nonnegative degree.
ExactnessCertificate is_exact_range(const FreeComplex& f, const std::vector<int>& degrees);
/// Every negative degree (down to min_degree) of the complex and of its dual.
ExactnessCertificate negative_exactness(const FreeComplex& f);
/// F and its dual have no cohomology in negative degrees.
bool check_assumption(const FreeComplex& f);

} // namespace pervcheck
