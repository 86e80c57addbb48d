#include "pervcheck/numbers.hpp"

#include "pervcheck/errors.hpp"

#include <cctype>

namespace pervcheck {

namespace {

bool is_integer_literal(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

} // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  const auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw InputError("malformed rational '" + raw + "'");
  Integer n(num, 10);
  Integer d(den, 10);
  if (d == 0) throw InputError("zero denominator in '" + raw + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

std::string ExtInt::str() const {
  switch (kind_) {
  case Kind::PosInf: return "inf";
  case Kind::NegInf: return "-inf";
  default: return std::to_string(value_);
  }
}

} // namespace pervcheck
