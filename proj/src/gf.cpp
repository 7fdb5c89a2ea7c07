#include "eisdens/gf.hpp"

#include <charconv>
#include <stdexcept>
#include <utility>

namespace eisdens::gf {

namespace {

constexpr std::uint32_t kTableLimit = 256;

using Digits = std::vector<std::uint32_t>;

void trim(Digits& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo monic g over F_p.
Digits rem_mod_p(Digits f, const Digits& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t t = lead * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - t) % p);
    }
    trim(f);
  }
  return f;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Digits default_modulus(std::uint32_t p, unsigned m) {
  const std::uint64_t n = ipow(p, m);
  for (std::uint64_t low = 0; low < n; ++low) {
    Digits f(m + 1, 0);
    std::uint64_t v = low;
    for (unsigned i = 0; i < m; ++i) {
      f[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    f[m] = 1;
    if (is_irreducible_mod_p(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw std::domain_error("field order must be a prime power >= 2, got " + std::to_string(q));
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned m = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) throw std::domain_error("field order " + std::to_string(q) + " is not a prime power");
  return {static_cast<std::uint32_t>(p), m};
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& f_in, std::uint32_t p) {
  Digits f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  // Make monic.
  std::uint64_t lead_inv = 1;
  for (std::uint64_t c = 1; c < p; ++c)
    if (c * f.back() % p == 1) lead_inv = c;
  for (auto& c : f) c = static_cast<std::uint32_t>(c * lead_inv % p);
  for (unsigned k = 1; 2 * k <= n; ++k) {
    const std::uint64_t count = ipow(p, k);
    for (std::uint64_t low = 0; low < count; ++low) {
      Digits g(k + 1, 0);
      std::uint64_t v = low;
      for (unsigned i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      g[k] = 1;
      if (rem_mod_p(f, g, p).empty()) return false;
    }
  }
  return true;
}

Field Field::of_order(std::uint32_t q) {
  auto [p, m] = prime_power(q);
  return make(p, m);
}

Field Field::make(std::uint32_t p, unsigned m) {
  if (!is_prime(p)) throw std::domain_error("characteristic " + std::to_string(p) + " is not prime");
  if (m == 0) throw std::domain_error("extension degree must be >= 1");
  if (ipow(p, m) > kMaxOrder) throw std::domain_error("field order exceeds 2^16");
  return Field(p, m, m > 1 ? default_modulus(p, m) : Digits{});
}

Field Field::make(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus) {
  if (m == 1 && modulus.empty()) return make(p, 1);
  if (!is_prime(p)) throw std::domain_error("characteristic " + std::to_string(p) + " is not prime");
  if (m == 0) throw std::domain_error("extension degree must be >= 1");
  if (ipow(p, m) > kMaxOrder) throw std::domain_error("field order exceeds 2^16");
  for (auto c : modulus)
    if (c >= p) throw std::domain_error("modulus coefficient out of range");
  if (modulus.size() != m + 1 || modulus.back() != 1)
    throw std::domain_error("modulus must be monic of degree " + std::to_string(m));
  if (!is_irreducible_mod_p(modulus, p)) throw std::domain_error("modulus is reducible");
  if (m == 1) modulus.clear();
  return Field(p, m, std::move(modulus));
}

Field::Field(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), q_(static_cast<std::uint32_t>(ipow(p, m))), modulus_(std::move(modulus)) {
  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    Digits d = digits(Elem{a});
    for (auto& x : d) x = (p_ - x) % p_;
    neg_[a] = static_cast<std::uint16_t>(from_digits(d).v);
  }

  // Find a generator of the multiplicative group and tabulate its powers.
  log_.assign(q_, 0);
  exp_.assign(q_, 0);
  if (q_ == 2) {
    exp_[0] = 1;
  } else {
    for (std::uint32_t g = 2; g < q_; ++g) {
      std::uint32_t x = 1;
      std::uint32_t order = 0;
      do {
        x = mul_slow(x, g);
        ++order;
      } while (x != 1 && order < q_);
      if (order == q_ - 1) {
        x = 1;
        for (std::uint32_t e = 0; e < q_ - 1; ++e) {
          exp_[e] = static_cast<std::uint16_t>(x);
          log_[x] = e;
          x = mul_slow(x, g);
        }
        break;
      }
    }
  }
  inv_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a) {
    const std::uint32_t e = log_[a] == 0 ? 0 : (q_ - 1) - log_[a];
    inv_[a] = exp_[e];
  }

  if (q_ <= kTableLimit) {
    add_.resize(q_ * q_);
    sub_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        add_[a * q_ + b] = static_cast<std::uint16_t>(add_slow(Elem{a}, Elem{b}).v);
        sub_[a * q_ + b] = static_cast<std::uint16_t>(add_slow(Elem{a}, Elem{neg_[b]}).v);
        mul_[a * q_ + b] = static_cast<std::uint16_t>(mul_slow(a, b));
      }
    }
  }
}

Elem Field::from_int(std::uint64_t v) const {
  if (v >= q_) throw std::domain_error("element encoding " + std::to_string(v) + " out of range for q = " + std::to_string(q_));
  return Elem{static_cast<std::uint32_t>(v)};
}

Elem Field::add_slow(Elem a, Elem b) const {
  if (m_ == 1) return Elem{(a.v + b.v) % p_};
  if (p_ == 2) return Elem{a.v ^ b.v};
  std::uint32_t r = 0;
  std::uint32_t scale = 1;
  std::uint32_t x = a.v;
  std::uint32_t y = b.v;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return Elem{r};
}

std::uint32_t Field::mul_slow(std::uint32_t a, std::uint32_t b) const {
  if (m_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  const Digits da = digits(Elem{a});
  const Digits db = digits(Elem{b});
  Digits prod(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = 0; j < m_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
  Digits r = rem_mod_p(prod, modulus_, p_);
  r.resize(m_, 0);
  return from_digits(r).v;
}

Elem Field::inv(Elem a) const {
  if (a.v == 0) throw std::domain_error("division by zero in F_" + std::to_string(q_));
  return Elem{inv_[a.v]};
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::vector<Elem> Field::elements() const {
  std::vector<Elem> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = Elem{i};
  return out;
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  Digits d(m_, 0);
  std::uint32_t v = a.v;
  for (unsigned i = 0; i < m_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

Elem Field::from_digits(const std::vector<std::uint32_t>& d) const {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] >= p_) throw std::domain_error("digit out of range");
    v = v * p_ + d[i];
  }
  if (v >= q_) throw std::domain_error("too many digits for field element");
  return Elem{v};
}

Elem Field::parse(std::string_view text) const {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("bad field element '" + std::string(text) + "'");
  return from_int(v);
}

}  // namespace eisdens::gf
