#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace pervcheck {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational; throws InputError.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Integer extended by +inf and -inf. Used for codimensions and dimensions
/// of possibly empty loci.
class ExtInt {
public:
  constexpr ExtInt() = default;
  constexpr ExtInt(long v) : kind_(Kind::Finite), value_(v) {} // NOLINT(implicit)

  static constexpr ExtInt pos_inf() { return ExtInt(Kind::PosInf); }
  static constexpr ExtInt neg_inf() { return ExtInt(Kind::NegInf); }

  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  constexpr long value() const { return value_; }

  constexpr std::strong_ordering operator<=>(const ExtInt& o) const {
    if (kind_ != o.kind_) return rank() <=> o.rank();
    if (kind_ == Kind::Finite) return value_ <=> o.value_;
    return std::strong_ordering::equal;
  }
  constexpr bool operator==(const ExtInt& o) const { return (*this <=> o) == 0; }

  std::string str() const;

private:
  enum class Kind { NegInf, Finite, PosInf };
  constexpr explicit ExtInt(Kind k) : kind_(k) {}
  constexpr int rank() const { return kind_ == Kind::NegInf ? 0 : kind_ == Kind::Finite ? 1 : 2; }

  Kind kind_ = Kind::Finite;
  long value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const ExtInt& e) { return os << e.str(); }

} // namespace pervcheck
