#pragma once

#include "pervcheck/numbers.hpp"
#include "pervcheck/ring.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace pervcheck {

using Exponents = std::vector<int>;

/// Multivariate Laurent polynomial over Q. Terms are kept in a map keyed by
/// exponent vector (lexicographic), never storing zero coefficients, so equal
/// polynomials have identical representations.
class LaurentPoly {
public:
  using TermMap = std::map<Exponents, Rational>;

  explicit LaurentPoly(RingContext ctx);

  static LaurentPoly constant(const RingContext& ctx, const Rational& c);
  static LaurentPoly variable(const RingContext& ctx, int index, int power = 1);
  static LaurentPoly monomial(const RingContext& ctx, Exponents exps, const Rational& c);

  const RingContext& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  int num_vars() const { return ctx_.num_vars(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t num_terms() const { return terms_.size(); }
  Rational coefficient(const Exponents& e) const;

  /// Lex-largest term.
  const std::pair<const Exponents, Rational>& leading_term() const;

  Exponents min_exponents() const;
  Exponents max_exponents() const;
  bool has_nonnegative_exponents() const;

  /// Multiplication by the monomial t^delta.
  LaurentPoly shifted(std::span<const int> delta) const;
  /// Canonical associate: lowest exponents moved to zero, coefficients made
  /// coprime integers with positive lex-leading coefficient.
  LaurentPoly normalized_associate() const;

  LaurentPoly pow(unsigned n) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }

  bool operator==(const LaurentPoly& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }
  /// Total order (by term map), used only for deduplication.
  bool operator<(const LaurentPoly& o) const { return terms_ < o.terms_; }

  /// Adds c * t^e; removes the term if the sum cancels.
  void add_term(const Exponents& e, const Rational& c);

  std::string str() const;

private:
  RingContext ctx_;
  TermMap terms_;
};

/// One entry of a monomial substitution t_i -> scale * t_i^power.
struct VarImage {
  Rational scale{1};
  int power = 1;
};

/// Ring homomorphism t_i -> scale_i * t_i^{power_i}. Throws InputError on a
/// zero scale or zero power.
LaurentPoly substitute(const LaurentPoly& p, std::span<const VarImage> images);

/// Quotient a / b in the Laurent ring; throws std::domain_error if b does not
/// divide a.
LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b);

} // namespace pervcheck
