#include "eisdens/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace eisdens {

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational pow(const Rational& base, unsigned long exp) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const BigInt& n) { return n.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  BigInt v(std::string(s), 10);
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_int(std::string_view(s).substr(0, slash));
    BigInt den = parse_int(std::string_view(s).substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto caret = s.find('^'); caret != std::string::npos) {
    BigInt base = parse_int(std::string_view(s).substr(0, caret));
    BigInt e = parse_int(std::string_view(s).substr(caret + 1));
    if (base == 0) throw std::invalid_argument("zero base in '" + s + "'");
    if (!e.fits_slong_p() || abs(e) > 1000000) throw std::invalid_argument("exponent too large in '" + s + "'");
    const long ex = e.get_si();
    Rational p(pow(base, static_cast<unsigned long>(ex < 0 ? -ex : ex)));
    return ex < 0 ? Rational(1 / p) : p;
  }
  // Decimal with optional exponent.
  std::string mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    BigInt ev = parse_int(std::string_view(s).substr(e + 1));
    if (!ev.fits_slong_p() || abs(ev) > 1000000) throw std::invalid_argument("exponent too large in '" + s + "'");
    exponent = ev.get_si();
  }
  bool neg = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    neg = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits = mantissa;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  }
  if (!all_digits(digits)) throw std::invalid_argument("bad number '" + s + "'");
  Rational r{BigInt(digits, 10)};
  const Rational ten_pow(pow(BigInt(10), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent)));
  r = exponent < 0 ? Rational(r / ten_pow) : Rational(r * ten_pow);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::string to_decimal(const Rational& r, int significant) {
  if (significant < 1) throw std::invalid_argument("significant digits must be positive");
  if (r == 0) {
    std::string out = "0";
    if (significant > 1) out += "." + std::string(significant - 1, '0');
    return out + "e+00";
  }
  const bool neg = r < 0;
  const Rational a = abs(r);
  // Find k with 10^(s-1) <= a * 10^k < 10^s.
  long k = static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) + significant - 1;
  const BigInt lower = pow(BigInt(10), significant - 1);
  const BigInt upper = pow(BigInt(10), significant);
  auto scaled = [&](long kk) {
    const BigInt t = pow(BigInt(10), static_cast<unsigned long>(kk < 0 ? -kk : kk));
    return kk < 0 ? Rational(a / t) : Rational(a * t);
  };
  Rational s = scaled(k);
  while (s >= upper) s = scaled(--k);
  while (s < lower) s = scaled(++k);
  // Round to nearest, ties to even.
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  const Rational frac = s - fl;
  const Rational half(1, 2);
  if (frac > half || (frac == half && mpz_odd_p(fl.get_mpz_t()))) fl += 1;
  if (fl >= upper) {
    fl /= 10;
    --k;
  }
  std::string digits = fl.get_str();
  const long exp10 = significant - 1 - k;
  std::string out = neg ? "-" : "";
  out += digits.substr(0, 1);
  if (significant > 1) out += "." + digits.substr(1);
  out += exp10 < 0 ? "e-" : "e+";
  const long ae = exp10 < 0 ? -exp10 : exp10;
  if (ae < 10) out += "0";
  out += std::to_string(ae);
  return out;
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace eisdens
