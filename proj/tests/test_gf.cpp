#include "doctest.h"

#include <random>

#include "eisdens/gf.hpp"
#include "oracles.hpp"

using eisdens::gf::Elem;
using eisdens::gf::Field;

namespace {

void check_against_oracle(std::uint32_t q) {
  const Field F = Field::of_order(q);
  const oracle::GF G = oracle::field_of_order(static_cast<int>(q));
  REQUIRE(F.q() == q);
  if (G.m > 1) {
    std::vector<std::uint32_t> mod(G.modulus.begin(), G.modulus.end());
    CHECK(F.modulus() == mod);
  }
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      CHECK(F.add(Elem{a}, Elem{b}).v == static_cast<std::uint32_t>(G.add(a, b)));
      CHECK(F.sub(Elem{a}, Elem{b}).v == static_cast<std::uint32_t>(G.sub(a, b)));
      CHECK(F.mul(Elem{a}, Elem{b}).v == static_cast<std::uint32_t>(G.mul(a, b)));
    }
}

}  // namespace

TEST_CASE("small fields agree with the schoolbook oracle") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u}) {
    CAPTURE(q);
    check_against_oracle(q);
  }
}

TEST_CASE("log-table fields agree with the oracle on random pairs") {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {729u, 1024u, 3125u, 59049u}) {
    CAPTURE(q);
    const Field F = Field::of_order(q);
    const oracle::GF G = oracle::field_of_order(static_cast<int>(q));
    std::uniform_int_distribution<std::uint32_t> e(0, q - 1);
    for (int i = 0; i < 2000; ++i) {
      const std::uint32_t a = e(rng), b = e(rng);
      CHECK(F.mul(Elem{a}, Elem{b}).v == static_cast<std::uint32_t>(G.mul(a, b)));
      CHECK(F.add(Elem{a}, Elem{b}).v == static_cast<std::uint32_t>(G.add(a, b)));
    }
  }
}

TEST_CASE("field identities") {
  for (std::uint32_t q : {2u, 4u, 9u, 49u, 256u, 343u, 4096u}) {
    CAPTURE(q);
    const Field F = Field::of_order(q);
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<std::uint32_t> e(0, q - 1);
    for (int i = 0; i < 300; ++i) {
      const Elem a{e(rng)}, b{e(rng)}, c{e(rng)};
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == F.zero());
      // Frobenius is additive.
      CHECK(F.pow(F.add(a, b), F.p()) == F.add(F.pow(a, F.p()), F.pow(b, F.p())));
      if (a.v != 0) {
        CHECK(F.mul(a, F.inv(a)) == F.one());
        CHECK(F.pow(a, q - 1) == F.one());
      }
    }
  }
}

TEST_CASE("element encoding is little-endian base p") {
  const Field F9 = Field::of_order(9);
  CHECK(F9.digits(Elem{5}) == std::vector<std::uint32_t>{2, 1});
  CHECK(F9.from_digits({2, 1}) == Elem{5});
  CHECK(F9.parse("5") == Elem{5});
  CHECK(F9.to_string(Elem{5}) == "5");
  CHECK_THROWS(F9.parse("9"));
  CHECK_THROWS(F9.parse("x"));
  const auto all = F9.elements();
  REQUIRE(all.size() == 9);
  CHECK(all.front() == Elem{0});
  CHECK(all.back() == Elem{8});
}

TEST_CASE("explicit moduli") {
  // x^2 + 2x + 2 is irreducible over F_3.
  const Field F = Field::make(3, 2, {2, 2, 1});
  const oracle::GF G{3, 2, 9, {2, 2, 1}};
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b) CHECK(F.mul(Elem{a}, Elem{b}).v == static_cast<std::uint32_t>(G.mul(a, b)));
  CHECK_THROWS_AS(Field::make(3, 2, {1, 0, 1, 0}), std::domain_error);
  // x^2 + 2 = (x+1)(x+2) over F_3.
  CHECK_THROWS_AS(Field::make(3, 2, {2, 0, 1}), std::domain_error);
}

TEST_CASE("invalid orders and inverses") {
  CHECK_THROWS_AS(Field::of_order(6), std::domain_error);
  CHECK_THROWS_AS(Field::of_order(1), std::domain_error);
  CHECK_THROWS_AS(Field::of_order((1u << 16) + 1), std::domain_error);
  CHECK_THROWS_AS(Field::of_order(1u << 17), std::domain_error);
  CHECK_THROWS_AS(Field::of_order(4).inv(Elem{0}), std::domain_error);
  CHECK(eisdens::gf::prime_power(27) == std::pair<std::uint32_t, unsigned>{3, 3});
  CHECK(eisdens::gf::is_prime(65521));
  CHECK_FALSE(eisdens::gf::is_prime(65535));
}
