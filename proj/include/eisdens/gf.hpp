#pragma once

// Arithmetic in the finite field F_q, q = p^m.
//
// An element is stored as the integer whose base-p digits (little-endian)
// are its coefficients in F_p[y]/(modulus). That integer is also the text
// encoding used everywhere else, so "5" in F_9 means 2 + 1*y.
//
// Fields are capped at q <= 2^16. Tables are built once at construction;
// a Field is immutable afterwards and can be shared freely between threads.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace eisdens::gf {

inline constexpr std::uint32_t kMaxOrder = 1u << 16;

struct Elem {
  std::uint32_t v = 0;

  constexpr auto operator<=>(const Elem&) const = default;
};

class Field {
 public:
  // Field of order q = p^m with the default modulus (least monic
  // irreducible of degree m over F_p in counting order of its lower
  // coefficients).
  static Field of_order(std::uint32_t q);
  static Field make(std::uint32_t p, unsigned m);
  // modulus is little-endian over F_p, including the leading 1.
  static Field make(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus);

  std::uint32_t p() const { return p_; }
  unsigned m() const { return m_; }
  std::uint32_t q() const { return q_; }
  // Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }
  Elem from_int(std::uint64_t v) const;

  Elem add(Elem a, Elem b) const {
    if (!add_.empty()) return Elem{add_[a.v * q_ + b.v]};
    return add_slow(a, b);
  }
  Elem sub(Elem a, Elem b) const {
    if (!sub_.empty()) return Elem{sub_[a.v * q_ + b.v]};
    return add_slow(a, neg(b));
  }
  Elem neg(Elem a) const { return Elem{neg_[a.v]}; }
  Elem mul(Elem a, Elem b) const {
    if (!mul_.empty()) return Elem{mul_[a.v * q_ + b.v]};
    if (a.v == 0 || b.v == 0) return zero();
    std::uint32_t e = log_[a.v] + log_[b.v];
    if (e >= q_ - 1) e -= q_ - 1;
    return Elem{exp_[e]};
  }
  // Throws std::domain_error for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  // All q elements, 0 first, ordered by their integer encoding.
  std::vector<Elem> elements() const;

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& digits) const;

  std::string to_string(Elem a) const { return std::to_string(a.v); }
  Elem parse(std::string_view text) const;

  bool operator==(const Field& other) const {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
  }

 private:
  Field(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus);
  Elem add_slow(Elem a, Elem b) const;
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_;
  unsigned m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint16_t> exp_;
  // Full Cayley tables, only for small q.
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> sub_;
  std::vector<std::uint16_t> mul_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n);
// Splits q into (p, m) with q = p^m; throws std::domain_error otherwise.
std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q);

// Irreducibility over F_p of a little-endian coefficient vector, by trial
// division. Used to validate moduli; degree must be small.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& f, std::uint32_t p);

}  // namespace eisdens::gf
