#pragma once

#include "pervcheck/laurent.hpp"
#include "pervcheck/numbers.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace pervcheck {

/// Block monomial order on polynomial-ring monomials. Blocks are compared in
/// sequence; within a block either graded reverse lex or lex is used.
class MonomialOrder {
public:
  enum class Kind { GrevLex, Lex };
  struct Block {
    int size;
    Kind kind;
    bool operator==(const Block&) const = default;
  };

  static MonomialOrder grevlex(int n);
  static MonomialOrder lex(int n);
  /// First `k` variables eliminated: block (k, grevlex) > block (n-k, grevlex).
  static MonomialOrder elimination(int k, int n);

  /// Prepends a grevlex block of `size` fresh variables.
  MonomialOrder with_leading_block(int size) const;

  int num_vars() const;
  const std::vector<Block>& blocks() const { return blocks_; }
  /// Negative, zero or positive as a <, =, > b.
  int compare(const Exponents& a, const Exponents& b) const;
  std::string tag() const;

  bool operator==(const MonomialOrder&) const = default;

private:
  std::vector<Block> blocks_;
};

namespace gb {

struct Term {
  Exponents exp;
  Integer coef;
};

/// Polynomial with nonnegative exponents and integer coefficients; terms are
/// sorted strictly decreasing under the order it was built for.
using Poly = std::vector<Term>;

int total_degree(const Exponents& e);
bool divides(const Exponents& a, const Exponents& b);
Exponents lcm(const Exponents& a, const Exponents& b);

/// Sorts, merges equal exponents and drops zeros.
Poly normalize(Poly p, const MonomialOrder& ord);
/// Divides by the coefficient content and makes the leading coefficient positive.
void make_primitive(Poly& p);

/// Full reduction of f by basis (top and tail).
Poly reduce(Poly f, const std::vector<Poly>& basis, const MonomialOrder& ord);

/// Reduced Groebner basis by Buchberger's algorithm with the sugar strategy and
/// Gebauer-Moeller pair criteria. Elements are primitive with positive leading
/// coefficient, sorted by increasing leading monomial. The unit ideal gives
/// {1} and the zero ideal the empty basis. Throws ResourceError when more than
/// spair_budget() pairs would be reduced.
std::vector<Poly> buchberger(std::vector<Poly> gens, const MonomialOrder& ord);

/// Statistics of the most recent buchberger() call on this thread.
struct Stats {
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};
Stats last_stats();

} // namespace gb

/// S-pair budget shared by all Groebner computations. Defaults to the value of
/// the PERVCHECK_SPAIR_BUDGET environment variable, or 200000.
std::size_t spair_budget();
void set_spair_budget(std::size_t budget);

/// Finitely generated ideal of the Laurent ring. Internally represented by the
/// polynomial ideal saturated by t_1...t_N, whose reduced Groebner bases are
/// computed lazily, once per order, and shared between copies.
class LaurentIdeal {
public:
  LaurentIdeal(RingContext ctx, std::vector<LaurentPoly> generators);

  static LaurentIdeal unit(const RingContext& ctx);
  static LaurentIdeal zero(const RingContext& ctx);

  const RingContext& context() const { return ctx_; }
  const std::vector<LaurentPoly>& generators() const { return gens_; }
  bool generators_all_zero() const;

  /// Reduced Groebner basis of the coordinate saturation under `ord`.
  const std::vector<gb::Poly>& saturated_basis(const MonomialOrder& ord) const;
  const std::vector<gb::Poly>& saturated_basis() const;

  bool is_unit() const;

  std::string str() const;

private:
  struct Cache;
  RingContext ctx_;
  std::vector<LaurentPoly> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Clears denominators and negative exponents; `leading_vars` zero exponents
/// are prepended. The result generates the same ideal in the Laurent ring.
gb::Poly to_gb_poly(const LaurentPoly& p, const MonomialOrder& ord, int leading_vars = 0);
/// Inverse of to_gb_poly for a polynomial in exactly ctx.num_vars() variables.
LaurentPoly from_gb_poly(const RingContext& ctx, const gb::Poly& p);

/// Reduced basis (as polynomials in the ring's variables) of the saturated ideal.
std::vector<LaurentPoly> groebner_basis(const LaurentIdeal& ideal, const MonomialOrder& ord);
bool ideal_membership(const LaurentPoly& f, const LaurentIdeal& ideal);
/// f in sqrt(I), decided by 1 in I + (1 - y f) for a fresh variable y.
bool radical_membership(const LaurentPoly& f, const LaurentIdeal& ideal);
/// Codimension of V(I) in the torus; +inf for the unit ideal.
ExtInt codimension(const LaurentIdeal& ideal);
/// V(I) subset of V(J): every generator of J lies in sqrt(I).
bool variety_containment(const LaurentIdeal& I, const LaurentIdeal& J);
/// sqrt(I) == sqrt(J).
bool same_radical(const LaurentIdeal& I, const LaurentIdeal& J);

LaurentIdeal ideal_product(const LaurentIdeal& a, const LaurentIdeal& b);
LaurentIdeal ideal_sum(const LaurentIdeal& a, const LaurentIdeal& b);

} // namespace pervcheck
