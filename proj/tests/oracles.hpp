#pragma once

// Brute-force reference implementations used by the tests. Nothing here
// calls into the library: elements are plain ints (base-p digits, constant
// digit first), polynomials are coefficient vectors, and every predicate is
// evaluated straight from its definition.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

struct GF {
  int p = 2;
  int m = 1;
  int q = 2;
  std::vector<int> modulus;  // little-endian over F_p, leading 1; empty for m = 1

  std::vector<int> digits(int a) const {
    std::vector<int> d(m);
    for (int i = 0; i < m; ++i, a /= p) d[i] = a % p;
    return d;
  }
  int from_digits(const std::vector<int>& d) const {
    int v = 0;
    for (int i = m - 1; i >= 0; --i) v = v * p + d[i];
    return v;
  }
  int add(int a, int b) const {
    auto x = digits(a), y = digits(b);
    for (int i = 0; i < m; ++i) x[i] = (x[i] + y[i]) % p;
    return from_digits(x);
  }
  int neg(int a) const {
    auto x = digits(a);
    for (auto& v : x) v = (p - v) % p;
    return from_digits(x);
  }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const {
    if (m == 1) return static_cast<int>((static_cast<long long>(a) * b) % p);
    auto x = digits(a), y = digits(b);
    std::vector<int> prod(2 * m - 1, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    for (int k = 2 * m - 2; k >= m; --k) {
      const int c = prod[k];
      if (c == 0) continue;
      for (int i = 0; i <= m; ++i) prod[k - m + i] = ((prod[k - m + i] - c * modulus[i]) % p + p) % p;
    }
    prod.resize(m);
    return from_digits(prod);
  }
  int inv(int a) const {
    for (int b = 1; b < q; ++b)
      if (mul(a, b) == 1) return b;
    throw std::domain_error("oracle: no inverse");
  }
};

using P = std::vector<int>;

inline void trim(P& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const P& a) { return static_cast<int>(a.size()) - 1; }

inline P padd(const GF& F, const P& a, const P& b) {
  P r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

inline P pmul(const GF& F, const P& a, const P& b) {
  if (a.empty() || b.empty()) return {};
  P r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  trim(r);
  return r;
}

// Long division; returns {quotient, remainder}.
inline std::pair<P, P> pdivmod(const GF& F, P a, const P& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("oracle: division by zero");
  const int li = F.inv(b.back());
  P q(std::max<int>(0, deg(a) - deg(b) + 1), 0);
  while (!a.empty() && deg(a) >= deg(b)) {
    const int shift = deg(a) - deg(b);
    const int c = F.mul(a.back(), li);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline bool divides(const GF& F, const P& d, const P& a) { return pdivmod(F, a, d).second.empty(); }

inline constexpr int kInfinity = 1 << 30;

// Multiplicity of p in a; kInfinity for a = 0.
inline int valuation(const GF& F, P a, const P& p) {
  trim(a);
  if (a.empty()) return kInfinity;
  int v = 0;
  while (true) {
    auto [q, r] = pdivmod(F, a, p);
    if (!r.empty()) return v;
    a = q;
    ++v;
  }
}

inline P monic_from_index(const GF& F, int n, std::uint64_t idx) {
  P r(n + 1, 0);
  for (int i = 0; i < n; ++i, idx /= F.q) r[i] = static_cast<int>(idx % F.q);
  r[n] = 1;
  return r;
}

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::uint64_t index_of(const GF& F, const P& monic) {
  std::uint64_t idx = 0;
  for (int i = deg(monic) - 1; i >= 0; --i) idx = idx * F.q + monic[i];
  return idx;
}

// Irreducibility by trying every monic divisor of degree <= n/2.
inline bool irreducible(const GF& F, const P& f) {
  const int n = deg(f);
  if (n < 1) return false;
  for (int k = 1; 2 * k <= n; ++k)
    for (std::uint64_t i = 0; i < ipow(F.q, k); ++i)
      if (divides(F, monic_from_index(F, k, i), f)) return false;
  return true;
}

// Monic irreducibles of degree n in index order, by sieving out every
// product of two monic factors.
inline std::vector<P> irreducibles(const GF& F, int n) {
  const std::uint64_t total = ipow(F.q, n);
  std::vector<char> reducible(total, 0);
  for (int k = 1; 2 * k <= n; ++k)
    for (std::uint64_t i = 0; i < ipow(F.q, k); ++i) {
      const P a = monic_from_index(F, k, i);
      for (std::uint64_t j = 0; j < ipow(F.q, n - k); ++j)
        reducible[index_of(F, pmul(F, a, monic_from_index(F, n - k, j)))] = 1;
    }
  std::vector<P> out;
  for (std::uint64_t i = 0; i < total; ++i)
    if (!reducible[i]) out.push_back(monic_from_index(F, n, i));
  return out;
}

// F_{p^m} with the least monic irreducible modulus in index order.
inline GF field(int p, int m) {
  GF F;
  F.p = p;
  F.m = m;
  F.q = static_cast<int>(ipow(p, m));
  if (m > 1) {
    GF base;
    base.p = p;
    base.m = 1;
    base.q = p;
    F.modulus = irreducibles(base, m).front();
  }
  return F;
}

inline GF field_of_order(int q) {
  for (int p = 2; p <= q; ++p) {
    if (q % p) continue;
    int m = 0, r = q;
    while (r % p == 0) r /= p, ++m;
    if (r != 1) throw std::domain_error("oracle: not a prime power");
    return field(p, m);
  }
  throw std::domain_error("oracle: bad order");
}

// Literal definition: v(h_i) >= 1 for i < d, v(h_0) = 1, and v(h_d) = 0 when
// the tuple carries a leading coefficient. Valuations at a place of S of an
// element num/u only see num.
inline bool eisenstein_at(const GF& F, const std::vector<P>& nums, int d, bool general, const P& place) {
  for (int i = 0; i < d; ++i)
    if (valuation(F, nums[i], place) < 1) return false;
  if (valuation(F, nums[0], place) != 1) return false;
  if (general && valuation(F, nums[d], place) != 0) return false;
  return true;
}

// Calls fn on every tuple of `arity` numerators of degree < ell.
inline void for_each_tuple(const GF& F, int ell, int arity, const std::function<void(const std::vector<P>&)>& fn) {
  const std::uint64_t per = ipow(F.q, ell);
  std::vector<std::uint64_t> idx(arity, 0);
  std::vector<P> nums(arity);
  auto decode = [&](std::uint64_t v) {
    P r(ell);
    for (int i = 0; i < ell; ++i, v /= F.q) r[i] = static_cast<int>(v % F.q);
    trim(r);
    return r;
  };
  while (true) {
    for (int i = 0; i < arity; ++i) nums[i] = decode(idx[i]);
    fn(nums);
    int k = arity - 1;
    while (k >= 0 && ++idx[k] == per) idx[k--] = 0;
    if (k < 0) break;
  }
}

struct Count {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  mpq_class fraction() const {
    mpq_class r(static_cast<unsigned long>(hits), static_cast<unsigned long>(total));
    r.canonicalize();
    return r;
  }
};

inline Count not_eisenstein_at(const GF& F, int ell, int d, bool general, const std::vector<P>& T) {
  Count c;
  for_each_tuple(F, ell, general ? d + 1 : d, [&](const std::vector<P>& nums) {
    ++c.total;
    for (const auto& t : T)
      if (eisenstein_at(F, nums, d, general, t)) return;
    ++c.hits;
  });
  return c;
}

// Places of S of degree <= max_degree: all monic irreducibles except those
// in `excluded`.
inline std::vector<P> places_up_to(const GF& F, int max_degree, const std::vector<P>& excluded = {}) {
  std::vector<P> out;
  for (int n = 1; n <= max_degree; ++n)
    for (auto& p : irreducibles(F, n))
      if (std::find(excluded.begin(), excluded.end(), p) == excluded.end()) out.push_back(p);
  return out;
}

inline Count eisenstein_anywhere(const GF& F, int ell, int d, bool general, const std::vector<P>& excluded = {}) {
  const auto S = places_up_to(F, ell - 1, excluded);
  Count c;
  for_each_tuple(F, ell, general ? d + 1 : d, [&](const std::vector<P>& nums) {
    ++c.total;
    for (const auto& t : S)
      if (eisenstein_at(F, nums, d, general, t)) {
        ++c.hits;
        return;
      }
  });
  return c;
}

inline mpz_class zpow(unsigned long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// Probability that a random tuple is NOT Eisenstein at one place of degree n.
inline mpq_class not_eisenstein_at_one_place(int q, int d, int n, bool general) {
  const mpz_class N = zpow(q, n);  // residue field size
  mpq_class eis;
  if (!general) {
    // h_0 in P \ P^2, h_1..h_{d-1} in P.
    eis = mpq_class(N - 1, N * N) * mpq_class(1, zpow(q, static_cast<unsigned long>(n) * (d - 1)));
  } else {
    eis = mpq_class(N - 1, N * N) * mpq_class(1, zpow(q, static_cast<unsigned long>(n) * (d - 1))) *
          mpq_class(N - 1, N);
  }
  eis.canonicalize();
  return 1 - eis;
}

// Place-by-place product over every place of S of degree <= N.
inline mpq_class product_place_by_place(const GF& F, int d, bool general, int N, const std::vector<P>& excluded = {}) {
  mpq_class prod = 1;
  for (const auto& p : places_up_to(F, N, excluded)) prod *= not_eisenstein_at_one_place(F.q, d, deg(p), general);
  return prod;
}

// Does X^d + h_{d-1} X^{d-1} + ... + h_0 have a root r in F_q[x] with
// deg r <= max_degree? Exhaustive over all such r.
inline bool has_root(const GF& F, const std::vector<P>& lower, int max_degree) {
  const std::uint64_t total = ipow(F.q, max_degree + 1);
  for (std::uint64_t v = 0; v < total; ++v) {
    P r(max_degree + 1);
    std::uint64_t t = v;
    for (int i = 0; i <= max_degree; ++i, t /= F.q) r[i] = static_cast<int>(t % F.q);
    trim(r);
    P acc{1};
    for (int i = static_cast<int>(lower.size()) - 1; i >= 0; --i) acc = padd(F, pmul(F, acc, r), lower[i]);
    if (acc.empty()) return true;
  }
  return false;
}

}  // namespace oracle
