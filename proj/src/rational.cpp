#include "earring/rational.hpp"

#include <cmath>
#include <cstdio>

#include "earring/errors.hpp"

namespace earring {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw ParseError("malformed rational '" + std::string(whole) + "'",
                     std::string(whole), 0);
  }
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw ParseError("malformed rational '" + std::string(whole) + "'",
                       std::string(whole), 0);
    }
  }
  return BigInt(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(body.substr(0, slash), text);
    BigInt den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) {
      throw ParseError("zero denominator in '" + std::string(text) + "'",
                       std::string(text), 0);
    }
    value = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
    BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
    if (int_part.empty() && frac_part.empty()) parse_integer("", text);
    value = Rational(whole * scale + frac, scale);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  return r.str();
}

double to_double(const Rational& r) {
  return r.convert_to<double>();
}

BigInt ceil(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (q * den < num) ++q;
  return q;
}

Rational rational_upper_bound(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational bound");
  constexpr int kBits = 40;
  double slack = std::abs(x) * 1e-12 + 1e-300;
  double scaled = std::ceil(std::ldexp(x + slack, kBits));
  // scaled is integer-valued; print it to keep every digit.
  char buf[400];
  std::snprintf(buf, sizeof buf, "%.0f", scaled);
  return Rational(BigInt(std::string(buf)), BigInt(1) << kBits);
}

}  // namespace earring
