#include "pervcheck/poly_text.hpp"

#include "pervcheck/errors.hpp"

#include <cctype>
#include <sstream>

namespace pervcheck {

namespace {

class Parser {
public:
  Parser(const RingContext& ctx, std::string_view text) : ctx_(ctx), text_(text) {}

  LaurentPoly parse() {
    LaurentPoly out(ctx_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      parse_term(out, sign);
      first = false;
      skip_ws();
    }
    return out;
  }

private:
  void parse_term(LaurentPoly& out, int sign) {
    Rational coef(sign);
    Exponents e(static_cast<std::size_t>(ctx_.num_vars()), 0);
    while (true) {
      skip_ws();
      if (at_end()) fail("expected a factor");
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coef *= parse_number();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::string name = parse_identifier();
        int idx = -1;
        for (int i = 0; i < ctx_.num_vars(); ++i)
          if (ctx_.name(i) == name) idx = i;
        if (idx < 0) fail("unknown variable '" + name + "'");
        skip_ws();
        int power = 1;
        if (!at_end() && peek() == '^') {
          ++pos_;
          power = parse_exponent();
        }
        e[static_cast<std::size_t>(idx)] += power;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    out.add_term(e, coef);
  }

  Rational parse_number() {
    const std::string num = parse_digits();
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      const std::string den = parse_digits();
      if (Integer(den, 10) == 0) fail("zero denominator");
      Rational q(Integer(num, 10), Integer(den, 10));
      q.canonicalize();
      return q;
    }
    return Rational(Integer(num, 10));
  }

  int parse_exponent() {
    skip_ws();
    bool paren = false;
    if (!at_end() && peek() == '(') {
      paren = true;
      ++pos_;
      skip_ws();
    }
    int sign = 1;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
      skip_ws();
    }
    const std::string digits = parse_digits();
    if (digits.size() > 9) fail("exponent too large");
    if (paren) {
      skip_ws();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
    }
    return sign * std::stoi(digits);
  }

  std::string parse_digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(text_[pos_++]);
    if (out.empty()) fail("expected digits");
    return out;
  }

  std::string parse_identifier() {
    std::string out;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      out.push_back(text_[pos_++]);
    return out;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("polynomial parse error at position " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "': " + msg);
  }

  const RingContext& ctx_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

LaurentPoly parse_poly(const RingContext& ctx, std::string_view text) { return Parser(ctx, text).parse(); }

std::string format_poly(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& ctx = p.context();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const Rational mag = abs(c);
    bool any_var = false;
    for (int x : e) any_var = any_var || x != 0;
    bool need_star = false;
    if (!any_var || mag != 1) {
      os << to_string(mag);
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      os << ctx.name(static_cast<int>(i));
      if (e[i] != 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

} // namespace pervcheck
