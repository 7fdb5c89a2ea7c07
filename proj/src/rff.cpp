#include "eisdens/rff.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "eisdens/errors.hpp"

namespace eisdens::rff {

Place Place::finite(const Field& F, Poly p) {
  if (p.degree() < 1) throw std::domain_error("a finite place needs a non-constant polynomial");
  if (!p.is_monic()) throw std::domain_error("place polynomial must be monic: " + poly::to_string(F, p));
  if (!poly::is_irreducible(F, p)) throw std::domain_error("place polynomial is reducible: " + poly::to_string(F, p));
  return Place(std::move(p));
}

std::strong_ordering Place::operator<=>(const Place& o) const {
  if (infinite_ != o.infinite_) return infinite_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (infinite_) return std::strong_ordering::equal;
  if (auto c = p_.degree() <=> o.p_.degree(); c != 0) return c;
  for (int i = p_.degree(); i >= 0; --i) {
    const auto k = static_cast<std::size_t>(i);
    if (auto c = p_.c[k].v <=> o.p_.c[k].v; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Field& F, const Place& P) {
  if (P.is_infinite()) return "inf";
  return "(" + poly::to_string(F, P.poly()) + ")";
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Splits on `sep` at parenthesis depth zero.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw std::invalid_argument("unbalanced parentheses in '" + s + "'");
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced parentheses in '" + s + "'");
  parts.push_back(cur);
  return parts;
}

}  // namespace

Place parse_place(const Field& F, std::string_view text) {
  std::string s = strip(text);
  if (s == "inf" || s == "oo" || s == "infinity") return Place::infinite();
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw std::invalid_argument("empty place");
  return Place::finite(F, poly::parse(F, s));
}

std::vector<Place> parse_place_list(const Field& F, std::string_view text) {
  const std::string s = strip(text);
  std::vector<Place> out;
  if (s.empty()) return out;
  for (const auto& part : split_top(s, ',')) {
    if (part.empty()) throw std::invalid_argument("empty entry in place list '" + s + "'");
    Place P = parse_place(F, part);
    if (std::find(out.begin(), out.end(), P) == out.end()) out.push_back(std::move(P));
  }
  return out;
}

HolomorphySet::HolomorphySet(FieldPtr field, std::vector<Place> excluded) : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("null field");
  bool has_inf = false;
  for (auto& P : excluded) {
    if (P.is_infinite()) {
      has_inf = true;
    } else if (std::find(excluded_finite_.begin(), excluded_finite_.end(), P) == excluded_finite_.end()) {
      excluded_finite_.push_back(P);
    }
  }
  if (!has_inf) throw std::domain_error("the exclusion set must contain the infinite place");
  std::sort(excluded_finite_.begin(), excluded_finite_.end());
  u_ = poly::constant(gf::Elem{1});
  for (const auto& P : excluded_finite_) u_ = poly::mul(*field_, u_, P.poly());
}

HolomorphySet HolomorphySet::polynomial_ring(FieldPtr field) {
  return HolomorphySet(std::move(field), {Place::infinite()});
}

std::vector<Place> HolomorphySet::excluded() const {
  std::vector<Place> out{Place::infinite()};
  out.insert(out.end(), excluded_finite_.begin(), excluded_finite_.end());
  return out;
}

bool HolomorphySet::in_S(const Place& P) const { return !P.is_infinite() && !excluded_index(P).has_value(); }

std::optional<std::size_t> HolomorphySet::excluded_index(const Place& P) const {
  if (P.is_infinite()) return std::nullopt;
  for (std::size_t i = 0; i < excluded_finite_.size(); ++i)
    if (excluded_finite_[i] == P) return i;
  return std::nullopt;
}

std::vector<Place> HolomorphySet::places_of_degree(unsigned n, unsigned workers) const {
  std::vector<Place> out;
  for (auto& p : poly::monic_irreducibles(*field_, n, workers)) {
    Place P = Place::finite(*field_, std::move(p));
    if (in_S(P)) out.push_back(std::move(P));
  }
  return out;
}

std::vector<Place> HolomorphySet::places_up_to(unsigned max_degree, unsigned workers) const {
  std::vector<Place> out;
  for (unsigned n = 1; n <= max_degree; ++n) {
    auto part = places_of_degree(n, workers);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Divisor make_divisor(const HolomorphySet& H, const std::vector<std::pair<Place, long>>& terms) {
  Divisor D;
  D.finite.assign(H.excluded_finite().size(), 0);
  for (const auto& [P, n] : terms) {
    if (n < 0)
      throw std::domain_error("divisor coefficient at " + to_string(H.field(), P) + " is negative; only positive divisors are allowed");
    if (P.is_infinite()) {
      D.infinite += static_cast<unsigned>(n);
      continue;
    }
    auto idx = H.excluded_index(P);
    if (!idx)
      throw std::domain_error("divisor support must lie in the exclusion set; " + to_string(H.field(), P) + " is a place of S");
    D.finite[*idx] += static_cast<unsigned>(n);
  }
  return D;
}

Divisor multiple_of_infinity(const HolomorphySet& H, unsigned n) {
  Divisor D;
  D.infinite = n;
  D.finite.assign(H.excluded_finite().size(), 0);
  return D;
}

long degree(const HolomorphySet& H, const Divisor& D) {
  long deg = D.infinite;
  for (std::size_t i = 0; i < D.finite.size(); ++i)
    deg += static_cast<long>(D.finite[i]) * static_cast<long>(H.excluded_finite()[i].degree());
  return deg;
}

Divisor parse_divisor(const HolomorphySet& H, std::string_view text) {
  const std::string s = strip(text);
  if (s.empty() || s == "0") return multiple_of_infinity(H, 0);
  // Top-level minus signs become negative coefficients, which make_divisor
  // rejects.
  std::string signed_text;
  int depth = 0;
  for (char ch : s) {
    depth += ch == '(' ? 1 : (ch == ')' ? -1 : 0);
    if (ch == '-' && depth == 0) signed_text += '+';
    signed_text += ch;
  }
  if (!signed_text.empty() && signed_text.front() == '+') signed_text.erase(0, 1);
  std::vector<std::pair<Place, long>> terms;
  for (const auto& part : split_top(signed_text, '+')) {
    if (part.empty()) throw std::invalid_argument("bad divisor '" + s + "'");
    long coeff = 1;
    std::string place_text = part;
    if (part.front() == '-' && part.find('*') == std::string::npos) {
      coeff = -1;
      place_text = part.substr(1);
    }
    if (auto star = part.find('*'); star != std::string::npos && star < part.find('(')) {
      const std::string c = part.substr(0, star);
      std::size_t used = 0;
      try {
        coeff = std::stol(c, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad divisor coefficient '" + c + "'");
      }
      if (used != c.size()) throw std::invalid_argument("bad divisor coefficient '" + c + "'");
      place_text = part.substr(star + 1);
    }
    terms.emplace_back(parse_place(H.field(), place_text), coeff);
  }
  return make_divisor(H, terms);
}

std::string to_string(const HolomorphySet& H, const Divisor& D) {
  std::string out = std::to_string(D.infinite) + "*inf";
  for (std::size_t i = 0; i < D.finite.size(); ++i) {
    if (D.finite[i] == 0) continue;
    out += " + " + std::to_string(D.finite[i]) + "*" + to_string(H.field(), H.excluded_finite()[i]);
  }
  return out;
}

HElem make_helem(const HolomorphySet& H, Poly num, std::vector<unsigned> denpow) {
  const auto& ex = H.excluded_finite();
  if (denpow.size() > ex.size()) throw std::domain_error("denominator exponents exceed the exclusion set");
  denpow.resize(ex.size(), 0);
  if (num.is_zero()) return HElem{{}, std::vector<unsigned>(ex.size(), 0)};
  const Field& F = H.field();
  for (std::size_t i = 0; i < ex.size(); ++i) {
    while (denpow[i] > 0) {
      auto q = poly::divide_exact(F, num, ex[i].poly());
      if (!q) break;
      num = std::move(*q);
      --denpow[i];
    }
  }
  return HElem{std::move(num), std::move(denpow)};
}

HElem mul(const HolomorphySet& H, const HElem& a, const HElem& b) {
  std::vector<unsigned> e(H.excluded_finite().size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.denpow[i] + b.denpow[i];
  return make_helem(H, poly::mul(H.field(), a.num, b.num), std::move(e));
}

HElem add(const HolomorphySet& H, const HElem& a, const HElem& b) {
  const Field& F = H.field();
  const auto& ex = H.excluded_finite();
  std::vector<unsigned> e(ex.size(), 0);
  Poly na = a.num;
  Poly nb = b.num;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    e[i] = std::max(a.denpow[i], b.denpow[i]);
    na = poly::mul(F, na, poly::pow(F, ex[i].poly(), e[i] - a.denpow[i]));
    nb = poly::mul(F, nb, poly::pow(F, ex[i].poly(), e[i] - b.denpow[i]));
  }
  return make_helem(H, poly::add(F, na, nb), std::move(e));
}

HElem scale(const HolomorphySet& H, const HElem& a, gf::Elem s) {
  return make_helem(H, poly::scale(H.field(), a.num, s), a.denpow);
}

std::string to_string(const HolomorphySet& H, const HElem& h, char var) {
  const Field& F = H.field();
  const std::string num = poly::to_string(F, h.num, var);
  std::string den;
  for (std::size_t i = 0; i < h.denpow.size(); ++i) {
    if (h.denpow[i] == 0) continue;
    const Poly& p = H.excluded_finite()[i].poly();
    std::string factor = p.degree() == 1 && p.c[0].v == 0 ? std::string(1, var) : "(" + poly::to_string(F, p, var) + ")";
    if (h.denpow[i] > 1) factor += "^" + std::to_string(h.denpow[i]);
    den += den.empty() ? factor : "*" + factor;
  }
  if (den.empty()) return num;
  const bool wrap = num.find('+') != std::string::npos;
  return (wrap ? "(" + num + ")" : num) + "/" + den;
}

std::optional<long> place_valuation(const HolomorphySet& H, const HElem& h, const Place& P) {
  if (h.is_zero()) return std::nullopt;
  const Field& F = H.field();
  if (P.is_infinite()) {
    long den_deg = 0;
    for (std::size_t i = 0; i < h.denpow.size(); ++i)
      den_deg += static_cast<long>(h.denpow[i]) * static_cast<long>(H.excluded_finite()[i].degree());
    return den_deg - h.num.degree();
  }
  const long v = static_cast<long>(*poly::valuation(F, h.num, P.poly()));
  if (auto idx = H.excluded_index(P)) return v - static_cast<long>(h.denpow[*idx]);
  return v;
}

Valuation h_valuation(const HolomorphySet& H, const HElem& h, const Place& P) {
  if (!H.in_S(P)) throw std::domain_error("place " + to_string(H.field(), P) + " is not in the holomorphy set S");
  return poly::valuation(H.field(), h.num, P.poly());
}

unsigned long rr_dimension(const HolomorphySet& H, const Divisor& D) {
  if (D.finite.size() != H.excluded_finite().size()) throw std::domain_error("divisor does not match the holomorphy set");
  return static_cast<unsigned long>(degree(H, D)) + 1;
}

const std::vector<unsigned>& rr_denominator(const Divisor& D) { return D.finite; }

std::vector<HElem> rr_basis(const HolomorphySet& H, const Divisor& D) {
  const unsigned long ell = rr_dimension(H, D);
  std::vector<HElem> basis;
  basis.reserve(ell);
  for (unsigned long j = 0; j < ell; ++j)
    basis.push_back(make_helem(H, poly::monomial(gf::Elem{1}, static_cast<unsigned>(j)), D.finite));
  return basis;
}

BigInt rr_size(const HolomorphySet& H, const Divisor& D) {
  return pow(BigInt(static_cast<unsigned long>(H.field().q())), rr_dimension(H, D));
}

Poly rr_numerator(const HolomorphySet& H, const Divisor& D, std::uint64_t index) {
  const unsigned long ell = rr_dimension(H, D);
  const std::uint32_t q = H.field().q();
  std::vector<gf::Elem> c(ell, gf::Elem{0});
  for (unsigned long j = ell; j-- > 0;) {
    c[j] = gf::Elem{static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
  return Poly(std::move(c));
}

std::vector<HElem> rr_enumerate(const HolomorphySet& H, const Divisor& D, std::uint64_t budget) {
  const BigInt size = rr_size(H, D);
  if (size > BigInt(static_cast<unsigned long>(budget)))
    throw BudgetExceeded("L(D) too large to enumerate (q^l(D))", size, BigInt(static_cast<unsigned long>(budget)));
  const std::uint64_t n = size.get_ui();
  std::vector<HElem> out;
  out.reserve(n);
  for (std::uint64_t e = 0; e < n; ++e) out.push_back(make_helem(H, rr_numerator(H, D, e), D.finite));
  return out;
}

}  // namespace eisdens::rff
