#include "doctest.h"

#include <random>

#include "eisdens/poly.hpp"
#include "support.hpp"

using namespace eisdens;
using poly::Poly;
using support::from_oracle;
using support::to_oracle;

TEST_CASE("divmod, gcd and products against the oracle") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
    CAPTURE(q);
    const auto F = gf::Field::of_order(q);
    const auto G = oracle::field_of_order(static_cast<int>(q));
    std::mt19937_64 rng(100 + q);
    for (int i = 0; i < 300; ++i) {
      const Poly a = support::random_poly(rng, q, 9);
      const Poly b = support::random_poly(rng, q, 5);
      CHECK(to_oracle(poly::mul(F, a, b)) == oracle::pmul(G, to_oracle(a), to_oracle(b)));
      CHECK(to_oracle(poly::add(F, a, b)) == oracle::padd(G, to_oracle(a), to_oracle(b)));
      if (b.is_zero()) {
        CHECK_THROWS_AS(poly::divmod(F, a, b), std::domain_error);
        continue;
      }
      const auto [qq, r] = poly::divmod(F, a, b);
      CHECK(r.degree() < b.degree());
      CHECK(poly::add(F, poly::mul(F, qq, b), r) == a);
      const auto [oq, orr] = oracle::pdivmod(G, to_oracle(a), to_oracle(b));
      CHECK(to_oracle(qq) == oq);
      CHECK(to_oracle(r) == orr);

      const Poly c = support::random_poly(rng, q, 3);
      const Poly g = poly::gcd(F, a, b);
      if (!g.is_zero()) {
        CHECK(g.is_monic());
        CHECK(poly::rem(F, a, g).is_zero());
        CHECK(poly::rem(F, b, g).is_zero());
        if (!c.is_zero()) CHECK(poly::gcd(F, poly::mul(F, a, c), poly::mul(F, b, c)) == poly::mul(F, g, poly::make_monic(F, c)));
      }
    }
  }
}

TEST_CASE("irreducibility test agrees with trial division") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto F = gf::Field::of_order(q);
    const auto G = oracle::field_of_order(static_cast<int>(q));
    const int top = q == 2 ? 8 : (q == 3 ? 6 : 4);
    for (int n = 1; n <= top; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      for (std::uint64_t i = 0; i < oracle::ipow(q, n); ++i) {
        const auto f = oracle::monic_from_index(G, n, i);
        CHECK(poly::is_irreducible(F, from_oracle(f)) == oracle::irreducible(G, f));
      }
    }
  }
}

TEST_CASE("monic irreducibles match the sieve in index order") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u}) {
    const auto F = gf::Field::of_order(q);
    const auto G = oracle::field_of_order(static_cast<int>(q));
    for (int n = 1; oracle::ipow(q, n) <= 20000; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      const auto lib = poly::monic_irreducibles(F, n);
      const auto ref = oracle::irreducibles(G, n);
      REQUIRE(lib.size() == ref.size());
      for (std::size_t i = 0; i < lib.size(); ++i) CHECK(to_oracle(lib[i]) == ref[i]);
      CHECK(poly::count_irreducibles(q, n) == BigInt(static_cast<unsigned long>(ref.size())));
    }
  }
}

TEST_CASE("parallel enumeration of irreducibles is order-stable") {
  const auto F = gf::Field::of_order(3);
  CHECK(poly::monic_irreducibles(F, 7, 1) == poly::monic_irreducibles(F, 7, 4));
}

TEST_CASE("necklace counts") {
  CHECK(poly::count_irreducibles(2, 1) == 2);
  CHECK(poly::count_irreducibles(2, 2) == 1);
  CHECK(poly::count_irreducibles(2, 3) == 2);
  CHECK(poly::count_irreducibles(2, 4) == 3);
  CHECK(poly::count_irreducibles(3, 2) == 3);
  // Clock identity: sum_{d | n} d * pi_q(d) = q^n.
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 9u, 16u, 65536u})
    for (unsigned n = 1; n <= 12; ++n) {
      BigInt s = 0;
      for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) s += BigInt(d) * poly::count_irreducibles(q, d);
      CHECK(s == pow(BigInt(static_cast<unsigned long>(q)), n));
    }
  CHECK(poly::mobius(1) == 1);
  CHECK(poly::mobius(6) == 1);
  CHECK(poly::mobius(12) == 0);
  CHECK(poly::mobius(30) == -1);
}

TEST_CASE("valuations") {
  const auto F = gf::Field::of_order(2);
  const Poly x = poly::x();
  const Poly x1 = poly::parse(F, "x+1");
  const Poly f = poly::mul(F, poly::pow(F, x, 3), x1);
  CHECK(poly::valuation(F, f, x) == 3u);
  CHECK(poly::valuation(F, f, x1) == 1u);
  CHECK(poly::valuation(F, f, poly::parse(F, "x^2+x+1")) == 0u);
  CHECK_FALSE(poly::valuation(F, Poly{}, x).has_value());
}

TEST_CASE("text round trip") {
  const auto F = gf::Field::of_order(9);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Poly f = support::random_poly(rng, 9, 6);
    CHECK(poly::parse(F, poly::to_string(F, f)) == f);
  }
  const auto F2 = gf::Field::of_order(2);
  CHECK(poly::to_string(F2, poly::parse(F2, "x^2+x+1")) == "x^2+x+1");
  CHECK(poly::parse(F2, "t^2 + t + 1") == poly::parse(F2, "x^2+x+1"));
  CHECK(poly::parse(F2, "0").is_zero());
  CHECK_THROWS(poly::parse(F2, "x^"));
  CHECK_THROWS(poly::parse(F2, "2*x"));
}

TEST_CASE("monic index is a bijection") {
  const auto F = gf::Field::of_order(4);
  for (std::uint64_t i = 0; i < 64; ++i) CHECK(poly::monic_index(F, poly::monic_from_index(F, 3, i)) == i);
}

TEST_CASE("derivative and powmod") {
  const auto F = gf::Field::of_order(3);
  const Poly f = poly::parse(F, "x^3+2*x+1");
  CHECK(poly::derivative(F, f) == poly::parse(F, "2"));
  const Poly m = poly::parse(F, "x^2+1");
  Poly acc = poly::constant(gf::Elem{1});
  for (int i = 0; i < 11; ++i) acc = poly::rem(F, poly::mul(F, acc, f), m);
  CHECK(poly::powmod(F, f, 11, m) == acc);
}
