#pragma once

#include "pervcheck/cyclotomic.hpp"
#include "pervcheck/groebner.hpp"
#include "pervcheck/numbers.hpp"
#include "pervcheck/ring.hpp"

#include <string>
#include <vector>

namespace pervcheck {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

/// U * A * V = D with U, V unimodular, D diagonal (not necessarily in Smith
/// divisibility form) and W = V^{-1}. The first `rank` diagonal entries of D
/// are nonzero.
struct Diagonalization {
  IntMatrix U, D, V, W;
  int rank = 0;
};

Diagonalization diagonalize(const IntMatrix& a, int ncols);
/// Row Hermite normal form with zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& rows, int ncols);
int lattice_rank(const IntMatrix& rows, int ncols);
/// Canonical (Hermite) basis of (span_Q K) intersected with Z^n.
IntMatrix saturate_lattice(const IntMatrix& rows, int ncols);
bool in_rational_span(const IntMatrix& basis, const IntVector& v, int ncols);

struct ComponentCodims {
  int codim = 0;    // d = rank K
  int codim_a = 0;  // g''
  int codim_sa = 0; // m'' + g''
  int m2 = 0;       // m''
  int g2 = 0;       // g''
};

/// Translated subtorus rho * {chi : chi trivial on K}, K a saturated lattice
/// given by its annihilator rows.
class LinearComponent {
public:
  /// Saturates `lattice` and checks that its projection to the abelian
  /// coordinates has even rank (InputError otherwise).
  LinearComponent(RingContext ctx, TorsionPoint translate, const IntMatrix& lattice);

  const RingContext& context() const { return ctx_; }
  const TorsionPoint& translate() const { return rho_; }
  const IntMatrix& lattice() const { return basis_; }
  /// Whether the rows given to the constructor already spanned a saturated lattice.
  bool input_was_saturated() const { return input_saturated_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  int dimension() const { return ctx_.num_vars() - rank(); }
  const ComponentCodims& codims() const { return codims_; }

  bool contains(const TorsionPoint& p) const;
  /// The point rho * x(c) with x_j = prod_l c_l^{V_jl} over the free directions;
  /// `params` holds one coordinate per dimension.
  TorsionPoint point(const std::vector<TorsionCoord>& params) const;
  /// Prime binomial ideal (t^k - rho^k); requires a rational translate.
  bool has_rational_translate() const;
  LaurentIdeal ideal() const;

  std::string str() const;

private:
  RingContext ctx_;
  TorsionPoint rho_;
  IntMatrix basis_;
  IntMatrix free_directions_; // columns l >= d of V, stored as rows
  ComponentCodims codims_;
  bool input_saturated_ = true;
};

/// C1 subset C2: K2 inside K1 and chi_k(rho1 / rho2) = 1 on a basis of K2.
bool component_containment(const LinearComponent& c1, const LinearComponent& c2);
bool same_component(const LinearComponent& a, const LinearComponent& b);

/// Finite union of components with none contained in another.
class LinearUnion {
public:
  explicit LinearUnion(RingContext ctx, std::vector<LinearComponent> components = {});

  const RingContext& context() const { return ctx_; }
  const std::vector<LinearComponent>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }
  bool is_whole_space() const;
  bool contains(const TorsionPoint& p) const;
  bool has_component(const LinearComponent& c) const;
  /// Product of component ideals: (1) when empty. Requires rational translates.
  bool has_rational_translates() const;
  LaurentIdeal ideal() const;

private:
  RingContext ctx_;
  std::vector<LinearComponent> comps_;
};

/// Every component of a lies in some component of b.
bool union_containment(const LinearUnion& a, const LinearUnion& b);

struct UnionCodims {
  ExtInt codim, codim_a, codim_sa;
  ExtInt dim, dim_a, dim_sa;
};

/// Minima of component codimensions and maxima of dimensions; +inf / -inf
/// for the empty union.
UnionCodims union_codims(const LinearUnion& u);

} // namespace pervcheck
