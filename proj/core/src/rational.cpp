#include "zmd/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace zmd {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Rational parse_decimal(const std::string& s) {
  std::string mantissa = s;
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string::npos) {
    mantissa = s.substr(0, epos);
    exponent = std::stol(s.substr(epos + 1));
  }
  bool negative = false;
  std::size_t i = 0;
  if (i < mantissa.size() && (mantissa[i] == '+' || mantissa[i] == '-')) {
    negative = mantissa[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < mantissa.size(); ++i) {
    char c = mantissa[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw std::invalid_argument("not a number: '" + s + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("not a number: '" + s + "'");
  Rational value{mpz_class(digits, 10)};
  long shift = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift < 0) {
    value /= Rational(ten_pow);
  } else {
    value *= Rational(ten_pow);
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_decimal(trim(s.substr(0, slash)));
    Rational den = parse_decimal(trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    Rational r = num / den;
    r.canonicalize();
    return r;
  }
  return parse_decimal(s);
}

std::string to_fraction_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result{1};
  for (unsigned k = 0; k < exponent; ++k) result *= base;
  return result;
}

Rational rising(const Rational& x, unsigned k) {
  Rational result{1};
  for (unsigned i = 0; i < k; ++i) result *= x + i;
  return result;
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  Rational norm = b.re * b.re + b.im * b.im;
  if (norm == 0) throw std::domain_error("division by zero (Gaussian rational)");
  GaussianRational num = a * b.conj();
  return {num.re / norm, num.im / norm};
}

GaussianRational parse_gaussian(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i') return GaussianRational{parse_rational(s)};
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not part of an exponent and not leading
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return Rational(1);
    if (t == "-") return Rational(-1);
    return parse_rational(t);
  };
  if (split == std::string::npos) return GaussianRational{Rational(0), imag_part(body)};
  return GaussianRational{parse_rational(body.substr(0, split)), imag_part(body.substr(split))};
}

std::string to_string(const GaussianRational& value) {
  if (value.is_real()) return to_fraction_string(value.re);
  std::string im = to_fraction_string(value.im);
  if (value.im > 0) im = "+" + im;
  return to_fraction_string(value.re) + im + "i";
}

}  // namespace zmd
