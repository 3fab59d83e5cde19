#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace zmd {

using Rational = mpq_class;

/// Parses "p/q", integers, and plain decimals ("0.3", "-1.25", "2e-3") exactly.
Rational parse_rational(std::string_view text);

/// Always "p/q" (denominator printed even when 1) so the column format is uniform.
std::string to_fraction_string(const Rational& value);

double to_double(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

/// Rising factorial x(x+1)...(x+k-1); empty product is 1.
Rational rising(const Rational& x, unsigned k);

Rational factorial(unsigned n);

/// Exact complex number with rational parts. Z-measure parameters live here so
/// that products like (z)_eta (z')_eta stay exact in both parameter cases.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Accepts "0.3", "1/3", "0.5+0.8i", "0.5-0.8i", "2i", "-i".
GaussianRational parse_gaussian(std::string_view text);
std::string to_string(const GaussianRational& value);

}  // namespace zmd
