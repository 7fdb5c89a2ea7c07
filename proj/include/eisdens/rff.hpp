#pragma once

// The rational function field F_q(x): places, positive divisors supported
// on the excluded places, holomorphy rings H = F_q[x][1/u] and their
// elements, and the genus-0 Riemann-Roch spaces L(D).
//
// The exclusion set E always contains the infinite place. Any other
// holomorphy ring of F_q(x) with finite complement is reached from one of
// these by a substitution x -> 1/(x - c), so it is not modelled separately.

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eisdens/gf.hpp"
#include "eisdens/poly.hpp"
#include "eisdens/rational.hpp"

namespace eisdens::rff {

using gf::Field;
using gf::FieldPtr;
using poly::Poly;
using poly::Valuation;

class Place {
 public:
  static Place infinite() { return Place(); }
  // p must be monic and irreducible; throws std::domain_error otherwise.
  static Place finite(const Field& F, Poly p);

  bool is_infinite() const { return infinite_; }
  const Poly& poly() const { return p_; }
  unsigned degree() const { return infinite_ ? 1u : static_cast<unsigned>(p_.degree()); }

  bool operator==(const Place& o) const { return infinite_ == o.infinite_ && p_ == o.p_; }
  // Infinite place first, then degree, then the canonical index order.
  std::strong_ordering operator<=>(const Place& o) const;

 private:
  Place() = default;
  explicit Place(Poly p) : infinite_(false), p_(std::move(p)) {}

  bool infinite_ = true;
  Poly p_;
};

std::string to_string(const Field& F, const Place& P);
// "inf" or "(x^2+x+1)"; the parentheses are optional for finite places.
Place parse_place(const Field& F, std::string_view text);
// Comma-separated places; commas inside parentheses are part of a place.
std::vector<Place> parse_place_list(const Field& F, std::string_view text);

// S = all places except `excluded`, which must contain the infinite place.
class HolomorphySet {
 public:
  HolomorphySet(FieldPtr field, std::vector<Place> excluded);
  static HolomorphySet polynomial_ring(FieldPtr field);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  // Finite excluded places in canonical order.
  const std::vector<Place>& excluded_finite() const { return excluded_finite_; }
  std::vector<Place> excluded() const;
  // Product of the finite excluded places.
  const Poly& u() const { return u_; }

  bool in_S(const Place& P) const;
  std::optional<std::size_t> excluded_index(const Place& P) const;
  // Places of S of degree exactly n, canonical order.
  std::vector<Place> places_of_degree(unsigned n, unsigned workers = 1) const;
  std::vector<Place> places_up_to(unsigned max_degree, unsigned workers = 1) const;

 private:
  FieldPtr field_;
  std::vector<Place> excluded_finite_;
  Poly u_;
};

// Positive divisor with support in E. `finite` is aligned with
// HolomorphySet::excluded_finite().
struct Divisor {
  unsigned infinite = 0;
  std::vector<unsigned> finite;

  bool operator==(const Divisor&) const = default;
};

// Throws std::domain_error on negative coefficients or support outside E.
Divisor make_divisor(const HolomorphySet& H, const std::vector<std::pair<Place, long>>& terms);
Divisor multiple_of_infinity(const HolomorphySet& H, unsigned n);
long degree(const HolomorphySet& H, const Divisor& D);
// "4*inf + 2*(x) + 1*(x^2+x+1)"; a bare place means coefficient 1.
Divisor parse_divisor(const HolomorphySet& H, std::string_view text);
std::string to_string(const HolomorphySet& H, const Divisor& D);

// num / prod p_i^denpow[i] over the finite excluded places p_i. Canonical:
// p_i does not divide num whenever denpow[i] > 0.
struct HElem {
  Poly num;
  std::vector<unsigned> denpow;

  bool is_zero() const { return num.is_zero(); }
  bool operator==(const HElem&) const = default;
};

HElem make_helem(const HolomorphySet& H, Poly num, std::vector<unsigned> denpow = {});
HElem mul(const HolomorphySet& H, const HElem& a, const HElem& b);
HElem add(const HolomorphySet& H, const HElem& a, const HElem& b);
HElem scale(const HolomorphySet& H, const HElem& a, gf::Elem s);
std::string to_string(const HolomorphySet& H, const HElem& h, char var = 'x');

// Valuation of h at any place of F (including excluded ones and infinity);
// nullopt for h = 0.
std::optional<long> place_valuation(const HolomorphySet& H, const HElem& h, const Place& P);
// Valuation at a place of S. Throws std::domain_error for places not in S.
Valuation h_valuation(const HolomorphySet& H, const HElem& h, const Place& P);

// l(D) = deg D + 1.
unsigned long rr_dimension(const HolomorphySet& H, const Divisor& D);
// Common denominator exponents of L(D): the coefficients of D at the finite
// excluded places.
const std::vector<unsigned>& rr_denominator(const Divisor& D);
// {x^j / prod p_i^{b_i} : 0 <= j <= deg D}, canonicalized.
std::vector<HElem> rr_basis(const HolomorphySet& H, const Divisor& D);
// q^l(D).
BigInt rr_size(const HolomorphySet& H, const Divisor& D);
// Numerator (over the common denominator) of the element with the given
// enumeration index. Basis coefficients are the base-q digits of index with
// the last basis vector varying fastest.
Poly rr_numerator(const HolomorphySet& H, const Divisor& D, std::uint64_t index);
// All elements of L(D) in enumeration order. Throws BudgetExceeded when
// q^l(D) > budget.
std::vector<HElem> rr_enumerate(const HolomorphySet& H, const Divisor& D, std::uint64_t budget = 1u << 26);

}  // namespace eisdens::rff
