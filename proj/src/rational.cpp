#include "solenoid/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace solenoid {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = checked::sub(0, n);
    d = checked::sub(0, d);
  }
  const std::int64_t g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Rational& Rational::operator+=(const Rational& o) {
  const std::int64_t g = std::gcd(den_, o.den_);
  const std::int64_t l = checked::mul(den_ / g, o.den_);
  const std::int64_t n =
      checked::add(checked::mul(num_, l / den_), checked::mul(o.num_, l / o.den_));
  *this = Rational(n, l);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  const std::int64_t g1 = std::gcd(num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_, den_);
  const std::int64_t n = checked::mul(num_ / g1, o.num_ / g2);
  const std::int64_t d = checked::mul(den_ / g2, o.den_ / g1);
  *this = Rational(n, d);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("division by zero rational");
  return *this *= Rational(o.den_, o.num_);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

std::int64_t parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t start = (s.front() == '+') ? 1 : 0;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t n = parse_int(text.substr(0, slash));
  const std::int64_t d = parse_int(text.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

Rational pow(const Rational& base, int exponent) {
  Rational r(1);
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace solenoid
