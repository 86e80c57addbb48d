#include "pervcheck/laurent.hpp"

#include "pervcheck/errors.hpp"
#include "pervcheck/poly_text.hpp"

#include <algorithm>
#include <stdexcept>

namespace pervcheck {

LaurentPoly::LaurentPoly(RingContext ctx) : ctx_(std::move(ctx)) {}

LaurentPoly LaurentPoly::constant(const RingContext& ctx, const Rational& c) {
  LaurentPoly p(ctx);
  p.add_term(Exponents(static_cast<std::size_t>(ctx.num_vars()), 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(const RingContext& ctx, int index, int power) {
  if (index < 0 || index >= ctx.num_vars()) throw InputError("variable index out of range");
  Exponents e(static_cast<std::size_t>(ctx.num_vars()), 0);
  e[static_cast<std::size_t>(index)] = power;
  return monomial(ctx, std::move(e), Rational(1));
}

LaurentPoly LaurentPoly::monomial(const RingContext& ctx, Exponents exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != ctx.num_vars()) throw InputError("exponent vector has wrong length");
  LaurentPoly p(ctx);
  p.add_term(exps, c);
  return p;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational LaurentPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

const std::pair<const Exponents, Rational>& LaurentPoly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
  return *terms_.rbegin();
}

Exponents LaurentPoly::min_exponents() const {
  Exponents out(static_cast<std::size_t>(num_vars()), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = first ? e[i] : std::min(out[i], e[i]);
    first = false;
  }
  return out;
}

Exponents LaurentPoly::max_exponents() const {
  Exponents out(static_cast<std::size_t>(num_vars()), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = first ? e[i] : std::max(out[i], e[i]);
    first = false;
  }
  return out;
}

bool LaurentPoly::has_nonnegative_exponents() const {
  for (const auto& [e, c] : terms_)
    for (int x : e)
      if (x < 0) return false;
  return true;
}

LaurentPoly LaurentPoly::shifted(std::span<const int> delta) const {
  LaurentPoly out(ctx_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += delta[i];
    out.terms_.emplace_hint(out.terms_.end(), std::move(f), c);
  }
  return out;
}

LaurentPoly LaurentPoly::normalized_associate() const {
  if (is_zero()) return *this;
  Exponents low = min_exponents();
  for (int& x : low) x = -x;
  LaurentPoly out = shifted(low);
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& [e, c] : out.terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (out.terms_.rbegin()->second < 0) scale = -scale;
  for (auto& [e, c] : out.terms_) c *= scale;
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result = constant(ctx_, Rational(1));
  LaurentPoly base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

void LaurentPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  if (static_cast<int>(e.size()) != ctx_.num_vars()) throw InputError("exponent vector has wrong length");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  require_same_context(ctx_, o.ctx_, "addition");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  require_same_context(ctx_, o.ctx_, "subtraction");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_context(a.ctx_, b.ctx_, "multiplication");
  LaurentPoly out(a.ctx_);
  if (a.is_zero() || b.is_zero()) return out;
  Exponents e(a.ctx_.num_vars() > 0 ? static_cast<std::size_t>(a.ctx_.num_vars()) : 0);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

std::string LaurentPoly::str() const { return format_poly(*this); }

LaurentPoly substitute(const LaurentPoly& p, std::span<const VarImage> images) {
  if (static_cast<int>(images.size()) != p.num_vars())
    throw InputError("substitution map must cover every variable");
  for (const auto& im : images) {
    if (im.scale == 0) throw InputError("substitution scale must be nonzero");
    if (im.power == 0) throw InputError("substitution power must be nonzero");
  }
  LaurentPoly out(p.context());
  Exponents f(images.size());
  for (const auto& [e, c] : p.terms()) {
    Rational coef = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      f[i] = e[i] * images[i].power;
      Rational s;
      mpz_pow_ui(s.get_num_mpz_t(), images[i].scale.get_num_mpz_t(), static_cast<unsigned long>(std::abs(e[i])));
      mpz_pow_ui(s.get_den_mpz_t(), images[i].scale.get_den_mpz_t(), static_cast<unsigned long>(std::abs(e[i])));
      s.canonicalize();
      if (e[i] < 0) s = 1 / s;
      coef *= s;
    }
    out.add_term(f, coef);
  }
  return out;
}

LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_context(a.context(), b.context(), "division");
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return a;
  // In a domain the lowest t_i-degree of a product is the sum of the lowest
  // degrees, so after normalizing both sides the quotient is a polynomial.
  Exponents la = a.min_exponents();
  Exponents lb = b.min_exponents();
  Exponents na = la, nb = lb;
  for (int& x : na) x = -x;
  for (int& x : nb) x = -x;
  LaurentPoly rem = a.shifted(na);
  const LaurentPoly div = b.shifted(nb);
  const auto& [lead_e, lead_c] = div.leading_term();
  LaurentPoly quot(a.context());
  Exponents qe(lead_e.size());
  while (!rem.is_zero()) {
    const auto [re, rc] = rem.leading_term();
    for (std::size_t i = 0; i < qe.size(); ++i) {
      qe[i] = re[i] - lead_e[i];
      if (qe[i] < 0) throw std::domain_error("exact_divide: divisor does not divide dividend");
    }
    const Rational qc = rc / lead_c;
    quot.add_term(qe, qc);
    for (const auto& [de, dc] : div.terms()) {
      Exponents te = de;
      for (std::size_t i = 0; i < te.size(); ++i) te[i] += qe[i];
      rem.add_term(te, -qc * dc);
    }
  }
  Exponents delta(la.size());
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = la[i] - lb[i];
  return quot.shifted(delta);
}

} // namespace pervcheck
