#include "itm/rational.hpp"

#include <cctype>

#include "itm/errors.hpp"

namespace itm {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("parse_rational", "malformed rational '" + std::string(text) + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("parse_rational", "zero denominator in '" + std::string(text) + "'");
    out = Rational(Integer(std::string(num), 10), d);
    out.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto digits = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!digits.empty() && !all_digits(digits)) ||
        (whole.empty() && digits.empty()))
      throw ParseError("parse_rational", "malformed decimal '" + std::string(text) + "'");
    std::string joined = std::string(whole) + std::string(digits);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits.size());
    out = Rational(Integer(joined, 10), scale);
    out.canonicalize();
  } else {
    if (!all_digits(body))
      throw ParseError("parse_rational", "malformed rational '" + std::string(text) + "'");
    out = Rational(Integer(std::string(body), 10));
  }
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& value) {
  if (value >= 0 && value < 1) return value;
  return value - Rational(floor(value));
}

}  // namespace itm
