#include "halfbloch/exact.hpp"

#include <cctype>
#include <stdexcept>

namespace halfbloch {

std::complex<double> ComplexRational::to_complex(double scale) const {
  return {static_cast<double>(re) * scale, static_cast<double>(im) * scale};
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
  const Rational norm = o.re * o.re + o.im * o.im;
  if (norm == 0) throw std::domain_error("ComplexRational: division by zero");
  Rational r = (re * o.re + im * o.im) / norm;
  Rational i = (im * o.re - re * o.im) / norm;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("sign without digits");
  cpp_int value = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("unexpected character in '" + std::string(s) + "'");
    value = value * 10 + (s[i] - '0');
  }
  return negative ? cpp_int(-value) : value;
}

Rational parse_decimal(std::string_view s) {
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(parse_integer(s));
  std::string digits(s.substr(0, dot));
  const std::string_view frac = s.substr(dot + 1);
  digits += frac;
  if (digits.empty() || digits == "-" || digits == "+") digits += '0';
  cpp_int denominator = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) denominator *= 10;
  return Rational(parse_integer(digits), denominator);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace halfbloch
