#include "eisdens/poly.hpp"

#include <cctype>
#include <stdexcept>

#include "eisdens/parallel.hpp"

namespace eisdens::poly {

Poly constant(Elem a) { return Poly(std::vector<Elem>{a}); }

Poly monomial(Elem a, unsigned k) {
  std::vector<Elem> c(k + 1, Elem{0});
  c[k] = a;
  return Poly(std::move(c));
}

Poly from_ints(const Field& F, std::initializer_list<std::uint64_t> coeffs) {
  std::vector<Elem> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(F.from_int(v));
  return Poly(std::move(c));
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
  const Poly& big = a.c.size() >= b.c.size() ? a : b;
  const Poly& small = a.c.size() >= b.c.size() ? b : a;
  Poly r = big;
  for (std::size_t i = 0; i < small.c.size(); ++i) r.c[i] = F.add(r.c[i], small.c[i]);
  r.trim();
  return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), Elem{0});
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = F.sub(r.c[i], b.c[i]);
  r.trim();
  return r;
}

Poly neg(const Field& F, const Poly& a) {
  Poly r = a;
  for (auto& x : r.c) x = F.neg(x);
  return r;
}

Poly scale(const Field& F, const Poly& a, Elem s) {
  if (s.v == 0) return {};
  Poly r = a;
  for (auto& x : r.c) x = F.mul(x, s);
  return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> c(a.c.size() + b.c.size() - 1, Elem{0});
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].v == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
  }
  return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Elem> r = a.c;
  const std::size_t db = b.c.size() - 1;
  std::vector<Elem> quot(r.size() - db, Elem{0});
  const Elem lead_inv = F.inv(b.lead());
  for (std::size_t k = r.size(); k-- > db;) {
    const Elem t = F.mul(r[k], lead_inv);
    quot[k - db] = t;
    if (t.v == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = F.sub(r[k - db + i], F.mul(t, b.c[i]));
  }
  r.resize(db);
  return {Poly(std::move(quot)), Poly(std::move(r))};
}

Poly rem(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return a;
  std::vector<Elem> r = a.c;
  const std::size_t db = b.c.size() - 1;
  const Elem lead_inv = F.inv(b.lead());
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k].v == 0) continue;
    const Elem t = F.mul(r[k], lead_inv);
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = F.sub(r[k - db + i], F.mul(t, b.c[i]));
  }
  r.resize(db);
  return Poly(std::move(r));
}

std::optional<Poly> divide_exact(const Field& F, const Poly& a, const Poly& b) {
  auto [q, r] = divmod(F, a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

Poly make_monic(const Field& F, const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(F, a, F.inv(a.lead()));
}

Poly gcd(const Field& F, const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = rem(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(F, x);
}

Poly derivative(const Field& F, const Poly& a) {
  if (a.c.size() <= 1) return {};
  std::vector<Elem> c(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    // i * a_i, with i reduced into the prime subfield.
    const Elem k{static_cast<std::uint32_t>(i % F.p())};
    c[i - 1] = F.mul(k, a.c[i]);
  }
  return Poly(std::move(c));
}

Poly pow(const Field& F, const Poly& a, unsigned e) {
  Poly r = constant(Elem{1});
  Poly b = a;
  while (e > 0) {
    if (e & 1) r = mul(F, r, b);
    e >>= 1;
    if (e > 0) b = mul(F, b, b);
  }
  return r;
}

Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m) { return rem(F, mul(F, a, b), m); }

Poly powmod(const Field& F, const Poly& a, std::uint64_t e, const Poly& m) {
  Poly r = rem(F, constant(Elem{1}), m);
  Poly b = rem(F, a, m);
  while (e > 0) {
    if (e & 1) r = mulmod(F, r, b, m);
    e >>= 1;
    if (e > 0) b = mulmod(F, b, b, m);
  }
  return r;
}

Elem eval(const Field& F, const Poly& f, Elem x) {
  Elem r{0};
  for (std::size_t i = f.c.size(); i-- > 0;) r = F.add(F.mul(r, x), f.c[i]);
  return r;
}

namespace {

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(const Field& F, const Poly& f_in) {
  if (f_in.degree() < 1) throw std::domain_error("irreducibility is undefined for constant polynomials");
  const Poly f = make_monic(F, f_in);
  const unsigned n = static_cast<unsigned>(f.degree());
  if (n == 1) return true;
  if (f.c[0].v == 0) return false;
  const Poly df = derivative(F, f);
  if (df.is_zero()) return false;
  if (gcd(F, f, df).degree() > 0) return false;

  const std::vector<unsigned> primes = prime_factors(n);
  const Poly xx = x();
  // frob[k] = x^(q^k) mod f.
  Poly h = xx;
  std::vector<Poly> frob{h};
  for (unsigned k = 1; k <= n; ++k) {
    h = powmod(F, h, F.q(), f);
    frob.push_back(h);
  }
  if (frob[n] != rem(F, xx, f)) return false;
  for (unsigned r : primes) {
    const Poly t = sub(F, frob[n / r], xx);
    if (gcd(F, t, f).degree() != 0) return false;
  }
  return true;
}

Valuation valuation(const Field& F, const Poly& f, const Poly& p) {
  if (p.degree() < 1) throw std::domain_error("valuation at a constant polynomial");
  if (f.is_zero()) return std::nullopt;
  unsigned k = 0;
  Poly g = f;
  while (g.degree() >= p.degree()) {
    auto [quo, r] = divmod(F, g, p);
    if (!r.is_zero()) break;
    g = std::move(quo);
    ++k;
  }
  return k;
}

Poly monic_from_index(const Field& F, unsigned n, std::uint64_t index) {
  std::vector<Elem> c(n + 1, Elem{0});
  for (unsigned i = 0; i < n; ++i) {
    c[i] = Elem{static_cast<std::uint32_t>(index % F.q())};
    index /= F.q();
  }
  c[n] = Elem{1};
  return Poly(std::move(c));
}

std::uint64_t monic_index(const Field& F, const Poly& f) {
  std::uint64_t idx = 0;
  for (int i = f.degree() - 1; i >= 0; --i) idx = idx * F.q() + f.c[static_cast<std::size_t>(i)].v;
  return idx;
}

std::vector<Poly> monic_irreducibles(const Field& F, unsigned n, unsigned workers) {
  if (n == 0) throw std::domain_error("place degree must be >= 1");
  BigInt total = eisdens::pow(BigInt(static_cast<unsigned long>(F.q())), n);
  if (!total.fits_ulong_p() || total > (BigInt(1) << 40))
    throw std::domain_error("too many candidates to enumerate irreducibles of degree " + std::to_string(n));
  const std::uint64_t count = total.get_ui();
  const std::vector<Elem> elems = F.elements();
  const bool root_filter = n >= 2 && F.q() <= 64;
  std::vector<std::vector<Poly>> parts(std::max(1u, workers));
  parallel_ranges(count, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    auto& out = parts[w];
    for (std::uint64_t i = begin; i < end; ++i) {
      Poly f = monic_from_index(F, n, i);
      if (root_filter) {
        bool has_root = false;
        for (Elem a : elems)
          if (eval(F, f, a).v == 0) {
            has_root = true;
            break;
          }
        if (has_root) continue;
      }
      if (is_irreducible(F, f)) out.push_back(std::move(f));
    }
  });
  std::vector<Poly> all;
  for (auto& part : parts)
    for (auto& f : part) all.push_back(std::move(f));
  return all;
}

int mobius(unsigned n) {
  if (n == 0) throw std::domain_error("mobius(0)");
  int mu = 1;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

BigInt count_irreducibles(std::uint64_t q, unsigned n) {
  if (n == 0) throw std::domain_error("place degree must be >= 1");
  const BigInt qq(static_cast<unsigned long>(q));
  BigInt sum = 0;
  for (unsigned k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    const int mu = mobius(n / k);
    if (mu == 0) continue;
    const BigInt term = eisdens::pow(qq, k);
    if (mu > 0)
      sum += term;
    else
      sum -= term;
  }
  BigInt result;
  mpz_divexact_ui(result.get_mpz_t(), sum.get_mpz_t(), n);
  return result;
}

std::string to_string(const Field& F, const Poly& f, char var) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = f.degree(); i >= 0; --i) {
    const Elem a = f.c[static_cast<std::size_t>(i)];
    if (a.v == 0) continue;
    if (!out.empty()) out += "+";
    const bool show_coeff = a.v != 1 || i == 0;
    if (show_coeff) out += F.to_string(a);
    if (i > 0) {
      if (show_coeff) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("bad polynomial '" + std::string(whole) + "'");
  std::uint64_t v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("bad polynomial '" + std::string(whole) + "'");
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    if (v > (1ull << 32)) throw std::invalid_argument("number too large in '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Poly parse(const Field& F, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial");

  if (s.find(',') != std::string::npos) {
    std::vector<Elem> c;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = s.find(',', pos);
      const std::string_view item = std::string_view(s).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      c.push_back(F.from_int(parse_uint(item, text)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return Poly(std::move(c));
  }

  char var = 0;
  Poly result;
  std::size_t i = 0;
  while (i < s.size()) {
    bool negate = false;
    if (s[i] == '+' || s[i] == '-') {
      negate = s[i] == '-';
      ++i;
    } else if (i != 0) {
      throw std::invalid_argument("bad polynomial '" + std::string(text) + "'");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string_view term = std::string_view(s).substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("bad polynomial '" + std::string(text) + "'");

    std::size_t k = 0;
    while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k]))) ++k;
    Elem coeff{1};
    unsigned power = 0;
    if (k > 0) coeff = F.from_int(parse_uint(term.substr(0, k), text));
    std::string_view rest = term.substr(k);
    if (!rest.empty() && rest[0] == '*') {
      if (k == 0) throw std::invalid_argument("bad polynomial '" + std::string(text) + "'");
      rest.remove_prefix(1);
      if (rest.empty()) throw std::invalid_argument("bad polynomial '" + std::string(text) + "'");
    }
    if (!rest.empty()) {
      if (!std::isalpha(static_cast<unsigned char>(rest[0])))
        throw std::invalid_argument("bad polynomial '" + std::string(text) + "'");
      if (var != 0 && rest[0] != var) throw std::invalid_argument("mixed variables in '" + std::string(text) + "'");
      var = rest[0];
      rest.remove_prefix(1);
      power = 1;
      if (!rest.empty()) {
        if (rest[0] != '^') throw std::invalid_argument("bad polynomial '" + std::string(text) + "'");
        rest.remove_prefix(1);
        const std::uint64_t e = parse_uint(rest, text);
        if (e > 100000) throw std::invalid_argument("exponent too large in '" + std::string(text) + "'");
        power = static_cast<unsigned>(e);
      }
    } else if (k == 0) {
      throw std::invalid_argument("bad polynomial '" + std::string(text) + "'");
    }
    if (negate) coeff = F.neg(coeff);
    result = add(F, result, monomial(coeff, power));
    i = j;
  }
  return result;
}

}  // namespace eisdens::poly
