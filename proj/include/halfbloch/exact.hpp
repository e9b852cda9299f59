#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace halfbloch {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number with arbitrary-precision rational parts.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(long long r) : re(r) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex(double scale = 1.0) const;

  ComplexRational& operator+=(const ComplexRational& o);
  ComplexRational& operator-=(const ComplexRational& o);
  ComplexRational& operator*=(const ComplexRational& o);
  ComplexRational& operator/=(const ComplexRational& o);

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Parses "3", "-7/12" or a plain decimal such as "0.25" (taken exactly).
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& r);

}  // namespace halfbloch
