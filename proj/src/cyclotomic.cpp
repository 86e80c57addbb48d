#include "pervcheck/cyclotomic.hpp"

#include "pervcheck/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace pervcheck {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a by b (b nonzero, trimmed).
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (a[i] == 0) continue;
    const Rational c = a[i] / lead;
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

Rational pow_rational(const Rational& q, long n) {
  Rational out;
  const unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
  out.canonicalize();
  if (n < 0) out = 1 / out;
  return out;
}

Rational frac_part(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

unsigned long lcm_ul(unsigned long a, unsigned long b) { return std::lcm(a, b); }

} // namespace

const std::vector<Integer>& cyclotomic_polynomial(unsigned long n) {
  static std::mutex mu;
  static std::map<unsigned long, std::vector<Integer>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  if (n == 0) throw std::invalid_argument("cyclotomic_polynomial(0)");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<Integer> p(n + 1, Integer(0));
  p[0] = -1;
  p[n] = 1;
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d) continue;
    const auto& phi = cyclotomic_polynomial(d);
    std::vector<Integer> q(p.size() - phi.size() + 1, Integer(0));
    for (std::size_t i = p.size(); i-- >= phi.size();) {
      const Integer c = p[i];
      if (c == 0) continue;
      const std::size_t shift = i - (phi.size() - 1);
      q[shift] = c;
      for (std::size_t j = 0; j < phi.size(); ++j) p[shift + j] -= c * phi[j];
    }
    p = std::move(q);
  }
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}

Cyclotomic::Cyclotomic(const Rational& q) : order_(1), coeffs_(1, q) {}

Cyclotomic::Cyclotomic(unsigned long order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

Cyclotomic Cyclotomic::reduce(unsigned long order, std::vector<Rational> raw) {
  const auto& phi = cyclotomic_polynomial(order);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = raw.size(); i-- > deg;) {
    if (raw[i] == 0) continue;
    const Rational c = raw[i];
    const std::size_t shift = i - deg;
    for (std::size_t j = 0; j <= deg; ++j) raw[shift + j] -= c * Rational(phi[j]);
  }
  raw.resize(deg, Rational(0));
  return Cyclotomic(order, std::move(raw));
}

Cyclotomic Cyclotomic::root_of_unity(unsigned long order, long k, const Rational& c) {
  if (order == 0) throw std::invalid_argument("root_of_unity order 0");
  long r = k % static_cast<long>(order);
  if (r < 0) r += static_cast<long>(order);
  std::vector<Rational> raw(order, Rational(0));
  raw[static_cast<std::size_t>(r)] = c;
  return reduce(order, std::move(raw));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<Rational> Cyclotomic::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return std::nullopt;
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

std::optional<std::pair<Rational, Rational>> Cyclotomic::as_polar() const {
  if (is_zero()) return std::nullopt;
  for (unsigned long k = 0; k < order_; ++k) {
    const Cyclotomic w = *this * root_of_unity(order_, -static_cast<long>(k));
    if (auto q = w.as_rational()) {
      const TorsionCoord c(*q, Rational(static_cast<long>(k), static_cast<long>(order_)));
      return std::make_pair(c.modulus, c.angle);
    }
  }
  return std::nullopt;
}

Cyclotomic Cyclotomic::embedded(unsigned long new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_) throw std::invalid_argument("cyclotomic embedding needs order | new_order");
  const unsigned long step = new_order / order_;
  std::vector<Rational> raw(coeffs_.empty() ? 1 : (coeffs_.size() - 1) * step + 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) raw[i * step] = coeffs_[i];
  return reduce(new_order, std::move(raw));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
  const auto& phi_z = cyclotomic_polynomial(order_);
  QPoly r0(phi_z.begin(), phi_z.end());
  QPoly r1 = coeffs_;
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly next = sub(s0, mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(next);
  }
  // r0 is a nonzero constant because Phi is irreducible.
  const Rational g = r0.at(0);
  for (auto& c : s0) c /= g;
  return reduce(order_, std::move(s0));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  const unsigned long L = lcm_ul(order_, o.order_);
  Cyclotomic a = embedded(L);
  const Cyclotomic b = o.embedded(L);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
  return *this = std::move(a);
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  const unsigned long L = lcm_ul(order_, o.order_);
  const Cyclotomic a = embedded(L);
  const Cyclotomic b = o.embedded(L);
  QPoly prod = mul(a.coeffs_, b.coeffs_);
  if (prod.empty()) prod.assign(1, Rational(0));
  return *this = reduce(L, std::move(prod));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  const unsigned long L = lcm_ul(order_, o.order_);
  return embedded(L).coeffs_ == o.embedded(L).coeffs_;
}

std::string Cyclotomic::str() const {
  if (auto q = as_rational()) return to_string(*q);
  if (auto p = as_polar()) return "(" + to_string(p->first) + ", " + to_string(p->second) + ")";
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? ", " : "") << to_string(coeffs_[i]);
  os << "]@" << order_;
  return os.str();
}

TorsionCoord::TorsionCoord(Rational q, Rational theta) {
  q.canonicalize();
  theta.canonicalize();
  if (q == 0) throw InputError("torsion coordinate modulus must be nonzero");
  if (q < 0) {
    q = -q;
    theta += Rational(1, 2);
  }
  modulus = q;
  angle = frac_part(theta);
}

TorsionCoord TorsionCoord::operator*(const TorsionCoord& o) const {
  return TorsionCoord(modulus * o.modulus, angle + o.angle);
}

TorsionCoord TorsionCoord::inverse() const { return TorsionCoord(1 / modulus, -angle); }

TorsionCoord TorsionCoord::pow(long n) const {
  return TorsionCoord(pow_rational(modulus, n), angle * Rational(n));
}

std::optional<Rational> TorsionCoord::as_rational() const {
  if (angle == 0) return modulus;
  if (angle == Rational(1, 2)) return -modulus;
  return std::nullopt;
}

Cyclotomic TorsionCoord::value() const {
  const unsigned long L = mpz_get_ui(angle.get_den_mpz_t());
  const long k = mpz_get_si(angle.get_num_mpz_t());
  return Cyclotomic::root_of_unity(L, k, modulus);
}

std::string TorsionCoord::str() const { return "(" + to_string(modulus) + ", " + to_string(angle) + ")"; }

TorsionPoint TorsionPoint::identity(int n) {
  return TorsionPoint(std::vector<TorsionCoord>(static_cast<std::size_t>(n)));
}

TorsionPoint TorsionPoint::from_rationals(std::span<const Rational> values) {
  std::vector<TorsionCoord> c;
  for (const auto& v : values) c.emplace_back(v, Rational(0));
  return TorsionPoint(std::move(c));
}

TorsionPoint TorsionPoint::operator*(const TorsionPoint& o) const {
  if (size() != o.size()) throw InputError("torsion points of different dimension");
  std::vector<TorsionCoord> c;
  for (int i = 0; i < size(); ++i) c.push_back((*this)[i] * o[i]);
  return TorsionPoint(std::move(c));
}

TorsionPoint TorsionPoint::inverse() const {
  std::vector<TorsionCoord> c;
  for (const auto& x : coords_) c.push_back(x.inverse());
  return TorsionPoint(std::move(c));
}

TorsionPoint TorsionPoint::pow_each(std::span<const int> powers) const {
  if (static_cast<int>(powers.size()) != size()) throw InputError("power vector has wrong length");
  std::vector<TorsionCoord> c;
  for (int i = 0; i < size(); ++i) c.push_back((*this)[i].pow(powers[static_cast<std::size_t>(i)]));
  return TorsionPoint(std::move(c));
}

TorsionCoord TorsionPoint::character(std::span<const Integer> k) const {
  if (static_cast<int>(k.size()) != size()) throw InputError("character has wrong length");
  TorsionCoord out;
  for (int i = 0; i < size(); ++i) {
    const Integer& e = k[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    if (!e.fits_slong_p()) throw ResourceError("character exponent too large");
    out = out * (*this)[i].pow(e.get_si());
  }
  return out;
}

TorsionCoord TorsionPoint::character(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != size()) throw InputError("character has wrong length");
  TorsionCoord out;
  for (int i = 0; i < size(); ++i)
    if (k[static_cast<std::size_t>(i)] != 0) out = out * (*this)[i].pow(k[static_cast<std::size_t>(i)]);
  return out;
}

bool TorsionPoint::is_identity() const {
  for (const auto& c : coords_)
    if (!c.is_one()) return false;
  return true;
}

bool TorsionPoint::all_rational() const {
  for (const auto& c : coords_)
    if (!c.as_rational()) return false;
  return true;
}

unsigned long TorsionPoint::order() const {
  unsigned long L = 1;
  for (const auto& c : coords_) L = std::lcm(L, mpz_get_ui(c.angle.get_den_mpz_t()));
  return L;
}

std::string TorsionPoint::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) out += (i ? ", " : "") + coords_[i].str();
  return out + ")";
}

Cyclotomic evaluate(const LaurentPoly& p, const TorsionPoint& rho) {
  if (rho.size() != p.num_vars()) throw InputError("evaluation point has wrong dimension");
  const unsigned long L = rho.order();
  std::vector<long> steps;
  for (const auto& c : rho.coords()) {
    Rational s = c.angle * Rational(static_cast<long>(L));
    s.canonicalize();
    steps.push_back(mpz_get_si(s.get_num_mpz_t()));
  }
  std::vector<Rational> raw(L, Rational(0));
  for (const auto& [e, c] : p.terms()) {
    Rational v = c;
    long k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      v *= pow_rational(rho.coords()[i].modulus, e[i]);
      k = (k + static_cast<long>(e[i]) * steps[i]) % static_cast<long>(L);
    }
    if (k < 0) k += static_cast<long>(L);
    raw[static_cast<std::size_t>(k)] += v;
  }
  return Cyclotomic::reduce(L, std::move(raw));
}

} // namespace pervcheck
