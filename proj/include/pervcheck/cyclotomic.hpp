#pragma once

#include "pervcheck/laurent.hpp"
#include "pervcheck/numbers.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pervcheck {

/// Element of the cyclotomic field Q(zeta_L), stored in the power basis
/// 1, zeta, ..., zeta^{phi(L)-1} modulo the L-th cyclotomic polynomial.
/// Binary operations embed both operands into Q(zeta_lcm).
class Cyclotomic {
public:
  Cyclotomic();
  explicit Cyclotomic(const Rational& q);

  /// c * zeta_L^k.
  static Cyclotomic root_of_unity(unsigned long order, long k, const Rational& c = Rational(1));

  unsigned long order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  std::optional<Rational> as_rational() const;
  /// (q, theta) with value q * e^{2 pi i theta}, q > 0, theta in [0,1), when
  /// the element is a rational multiple of a root of unity of its order.
  std::optional<std::pair<Rational, Rational>> as_polar() const;

  Cyclotomic embedded(unsigned long new_order) const;
  Cyclotomic inverse() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic operator-() const;
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  bool operator==(const Cyclotomic& o) const;

  std::string str() const;

  /// Reduces sum_k raw[k] zeta_L^k (any length) into the power basis.
  static Cyclotomic reduce(unsigned long order, std::vector<Rational> raw);

private:
  Cyclotomic(unsigned long order, std::vector<Rational> coeffs);

  unsigned long order_ = 1;
  std::vector<Rational> coeffs_;
};

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<Integer>& cyclotomic_polynomial(unsigned long n);

/// One coordinate of a character: modulus * e^{2 pi i angle}. Normalized so
/// modulus > 0 and angle in [0, 1).
struct TorsionCoord {
  Rational modulus{1};
  Rational angle{0};

  TorsionCoord() = default;
  TorsionCoord(Rational q, Rational theta);

  TorsionCoord operator*(const TorsionCoord& o) const;
  TorsionCoord inverse() const;
  TorsionCoord pow(long n) const;
  bool is_one() const { return modulus == 1 && angle == 0; }
  std::optional<Rational> as_rational() const;
  Cyclotomic value() const;
  bool operator==(const TorsionCoord& o) const = default;
  std::string str() const;
};

/// A closed point of the character torus with coordinates in Q^* x (roots of unity).
class TorsionPoint {
public:
  TorsionPoint() = default;
  explicit TorsionPoint(std::vector<TorsionCoord> coords) : coords_(std::move(coords)) {}

  static TorsionPoint identity(int n);
  static TorsionPoint from_rationals(std::span<const Rational> values);

  int size() const { return static_cast<int>(coords_.size()); }
  const TorsionCoord& operator[](int i) const { return coords_.at(static_cast<std::size_t>(i)); }
  const std::vector<TorsionCoord>& coords() const { return coords_; }

  TorsionPoint operator*(const TorsionPoint& o) const;
  TorsionPoint inverse() const;
  TorsionPoint pow_each(std::span<const int> powers) const;
  /// Value of the character t^k at this point.
  TorsionCoord character(std::span<const Integer> k) const;
  TorsionCoord character(std::span<const int> k) const;

  bool is_identity() const;
  bool all_rational() const;
  /// lcm of the angle denominators.
  unsigned long order() const;

  bool operator==(const TorsionPoint& o) const = default;
  std::string str() const;

private:
  std::vector<TorsionCoord> coords_;
};

/// Exact value p(rho) in Q(zeta_L), L = rho.order().
Cyclotomic evaluate(const LaurentPoly& p, const TorsionPoint& rho);

} // namespace pervcheck
