#pragma once

// Dense univariate polynomials over F_q.
//
// Coefficients are little-endian with no trailing zeros; the zero
// polynomial has no coefficients and degree -1 (standing in for -inf).
// All arithmetic takes the field explicitly; Poly itself is a plain value.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eisdens/gf.hpp"
#include "eisdens/rational.hpp"

namespace eisdens::poly {

using gf::Elem;
using gf::Field;

struct Poly {
  std::vector<Elem> c;

  Poly() = default;
  explicit Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Elem lead() const { return c.empty() ? Elem{0} : c.back(); }
  Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : Elem{0}; }
  bool is_monic() const { return !c.empty() && c.back().v == 1; }

  void trim() {
    while (!c.empty() && c.back().v == 0) c.pop_back();
  }

  auto operator<=>(const Poly&) const = default;
};

// Absent means +infinity (the valuation of zero).
using Valuation = std::optional<unsigned>;

Poly constant(Elem a);
Poly monomial(Elem a, unsigned k);
inline Poly x() { return monomial(Elem{1}, 1); }
// Little-endian integer encodings, e.g. from_ints(F, {1, 1, 1}) = x^2+x+1.
Poly from_ints(const Field& F, std::initializer_list<std::uint64_t> coeffs);

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly neg(const Field& F, const Poly& a);
Poly scale(const Field& F, const Poly& a, Elem s);
Poly mul(const Field& F, const Poly& a, const Poly& b);
// Throws std::domain_error when b is zero.
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly rem(const Field& F, const Poly& a, const Poly& b);
// Exact quotient when b | a.
std::optional<Poly> divide_exact(const Field& F, const Poly& a, const Poly& b);
// Monic gcd; zero iff both inputs are zero.
Poly gcd(const Field& F, const Poly& a, const Poly& b);
Poly make_monic(const Field& F, const Poly& a);
Poly derivative(const Field& F, const Poly& a);
Poly pow(const Field& F, const Poly& a, unsigned e);
Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Field& F, const Poly& a, std::uint64_t e, const Poly& m);
Elem eval(const Field& F, const Poly& f, Elem x);

// Irreducibility over F_q: squarefree check, then Rabin's test on
// x^(q^k) mod f. Throws std::domain_error for constants and zero.
bool is_irreducible(const Field& F, const Poly& f);

// Largest k with p^k | f; nullopt when f is zero. p must be non-constant.
Valuation valuation(const Field& F, const Poly& f, const Poly& p);

// The monic polynomial of degree n whose lower coefficients are the
// base-q digits of index (x^0 digit least significant).
Poly monic_from_index(const Field& F, unsigned n, std::uint64_t index);
// Inverse of monic_from_index for monic f.
std::uint64_t monic_index(const Field& F, const Poly& f);

// All monic irreducibles of degree exactly n in ascending monic_index order.
// The index range is split between `workers` threads; output order does not
// depend on the split.
std::vector<Poly> monic_irreducibles(const Field& F, unsigned n, unsigned workers = 1);

// Number of monic irreducibles of degree n over F_q (necklace formula).
BigInt count_irreducibles(std::uint64_t q, unsigned n);
int mobius(unsigned n);

// Symbolic form, e.g. "x^2+2*x+1"; "0" for zero.
std::string to_string(const Field& F, const Poly& f, char var = 'x');
// Accepts symbolic form in any single-letter variable or a comma-separated
// little-endian coefficient list "1,0,1". Coefficients use the field's
// integer element encoding.
Poly parse(const Field& F, std::string_view text);

}  // namespace eisdens::poly
