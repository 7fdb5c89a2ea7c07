#include "doctest.h"

#include "eisdens/density.hpp"
#include "eisdens/errors.hpp"
#include "eisdens/poly.hpp"
#include "support.hpp"

using namespace eisdens;
using density::Beyond;
using density::Kind;

namespace {

Rational R(const char* s) { return parse_rational(s); }

// |truncated(N') - truncated(N)| <= tail(N) checked through enclosures: the
// truncated product decreases in N, so the gap is at most hi(N) - lo(N').
bool tail_sound(const density::PlaceSpectrum& s, unsigned d, Kind kind, unsigned N, unsigned N2) {
  const auto a = density::truncated_enclosure(s, d, kind, N);
  const auto b = density::truncated_enclosure(s, d, kind, N2);
  return a.hi - b.lo <= density::tail_bound(s, d, kind, N) && b.hi <= a.hi;
}

}  // namespace

TEST_CASE("local factors") {
  CHECK(density::local_factor(2, 2, 1, Kind::monic) == R("7/8"));
  CHECK(density::local_factor(2, 2, 1, Kind::general) == R("15/16"));
  CHECK(density::local_factor(2, 2, 2, Kind::monic) == R("61/64"));
  CHECK_THROWS_AS(density::local_factor(2, 1, 1, Kind::monic), std::domain_error);
  CHECK_THROWS_AS(density::local_factor(2, 2, 0, Kind::monic), std::domain_error);
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 9u})
    for (unsigned d = 2; d <= 5; ++d)
      for (unsigned n = 1; n <= 6; ++n)
        for (Kind k : {Kind::monic, Kind::general}) {
          const auto f = density::local_factor(q, d, n, k);
          CHECK(f > 0);
          CHECK(f <= 1);
          CHECK(f == Rational(oracle::not_eisenstein_at_one_place(static_cast<int>(q), static_cast<int>(d),
                                                                  static_cast<int>(n), k == Kind::general)));
        }
}

TEST_CASE("truncated products") {
  const auto s2 = density::rational_field_spectrum(2);
  CHECK(density::truncated_not_eisenstein(s2, 2, Kind::monic, 1) == R("49/64"));
  CHECK(density::truncated_not_eisenstein(s2, 2, Kind::monic, 2) == R("2989/4096"));
  CHECK(density::truncated_not_eisenstein(density::finite_spectrum(2, {}), 2, Kind::monic, 5) == 1);
}

TEST_CASE("degree grouping equals the place-by-place product") {
  for (int q : {2, 3})
    for (unsigned d : {2u, 3u})
      for (Kind k : {Kind::monic, Kind::general})
        for (unsigned N = 1; N <= 6; ++N) {
          CAPTURE(q);
          CAPTURE(d);
          CAPTURE(N);
          const auto G = oracle::field_of_order(q);
          const auto s = density::rational_field_spectrum(q);
          CHECK(density::truncated_not_eisenstein(s, d, k, N) ==
                Rational(oracle::product_place_by_place(G, static_cast<int>(d), k == Kind::general, static_cast<int>(N))));
        }
  // With excluded finite places.
  const auto G = oracle::field_of_order(3);
  const auto F = support::field(3);
  const auto H = support::ring(F, "inf,(x),(x^2+1)");
  const auto s = density::rational_field_spectrum(H);
  CHECK(density::truncated_not_eisenstein(s, 2, Kind::monic, 4) ==
        Rational(oracle::product_place_by_place(G, 2, false, 4, {{0, 1}, {1, 0, 1}})));
}

TEST_CASE("enclosures contain the exact product") {
  const auto s = density::rational_field_spectrum(3);
  for (unsigned N = 1; N <= 5; ++N) {
    const Rational exact = density::truncated_not_eisenstein(s, 2, Kind::general, N);
    const auto e = density::truncated_enclosure(s, 2, Kind::general, N, 96);
    if (e.exact) {
      CHECK(e.lo == exact);
      continue;
    }
    CHECK(e.lo <= exact);
    CHECK(exact <= e.hi);
  }
}

TEST_CASE("tail soundness") {
  for (std::uint64_t q : {2u, 3u, 4u})
    for (unsigned d : {2u, 3u, 4u})
      for (Kind k : {Kind::monic, Kind::general})
        for (unsigned N = 2; N <= 12; ++N) {
          CAPTURE(q);
          CAPTURE(d);
          CAPTURE(N);
          CHECK(tail_sound(density::rational_field_spectrum(q), d, k, N, N + 15));
        }
}

TEST_CASE("tail examples") {
  const auto s2 = density::rational_field_spectrum(2);
  CHECK(density::tail_bound(s2, 2, Kind::monic, 10) <= R("2^-10"));
  const Rational r(1, 9);
  CHECK(density::tail_bound(density::rational_field_spectrum(3), 3, Kind::monic, 5) <= R("3^-12") / (1 - r));
  CHECK(density::tail_bound(s2, 2, Kind::monic, 20) < density::tail_bound(s2, 2, Kind::monic, 10));
  CHECK(density::tail_bound(s2, 2, Kind::general, 7) <= density::tail_bound(s2, 2, Kind::monic, 7));
}

TEST_CASE("truncated product decreases strictly") {
  const auto s = density::rational_field_spectrum(2, {1});
  Rational prev = 1;
  for (unsigned N = 1; N <= 8; ++N) {
    const Rational v = density::truncated_not_eisenstein(s, 3, Kind::monic, N);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("density intervals") {
  const auto s = density::rational_field_spectrum(2);
  const auto wide = density::eisenstein_density(s, 2, Kind::monic, R("2^-20"));
  const auto narrow = density::eisenstein_density(s, 2, Kind::monic, R("2^-40"));
  for (const auto& iv : {wide, narrow}) {
    CHECK(0 <= iv.lo);
    CHECK(iv.lo <= iv.hi);
    CHECK(iv.hi <= 1);
    CHECK(iv.width() <= 2 * iv.tail);
  }
  CHECK(wide.width() <= R("2^-20"));
  CHECK(narrow.width() <= R("2^-40"));
  CHECK(wide.lo <= narrow.lo);
  CHECK(narrow.hi <= wide.hi);
  // N is the least degree with 2 * tail(N) <= width.
  CHECK(2 * density::tail_bound(s, 2, Kind::monic, narrow.N) <= R("2^-40"));
  CHECK(2 * density::tail_bound(s, 2, Kind::monic, narrow.N - 1) > R("2^-40"));
  // Comparing two truncation levels.
  const auto deeper = density::eisenstein_density_at(s, 2, Kind::monic, narrow.N + 10);
  CHECK(narrow.lo <= deeper.lo);
  CHECK(deeper.hi <= narrow.hi);
  CHECK_THROWS_AS(density::eisenstein_density(s, 1, Kind::monic, R("1/2")), std::domain_error);
  CHECK_THROWS_AS(density::eisenstein_density(s, 2, Kind::monic, 0), std::domain_error);
}

TEST_CASE("finite spectra") {
  const auto empty = density::eisenstein_density(density::finite_spectrum(2, {}), 2, Kind::monic, R("2^-30"));
  CHECK(empty.lo == 0);
  CHECK(empty.hi == 0);
  const auto one = density::eisenstein_density(density::finite_spectrum(2, {1}), 2, Kind::monic, R("2^-30"));
  CHECK(one.lo == R("1/8"));
  CHECK(one.hi == R("1/8"));
  CHECK(one.tail == 0);
}

TEST_CASE("L-polynomial spectra") {
  const std::vector<std::pair<unsigned, BigInt>> inf{{1, BigInt(1)}};
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    const auto s = density::spectrum_from_L_polynomial(q, 0, {BigInt(1)}, inf, 10);
    for (unsigned n = 1; n <= 10; ++n) CHECK(s.count(n) == poly::count_irreducibles(q, n));
  }
  const auto N0 = density::point_counts(2, {BigInt(1)}, 3);
  CHECK(N0[1] == 3);
  CHECK(N0[2] == 5);
  // Supersingular genus-1 shape over F_2.
  const std::vector<BigInt> L{BigInt(1), BigInt(0), BigInt(2)};
  const auto N1 = density::point_counts(2, L, 4);
  CHECK(N1[1] == 3);
  CHECK(N1[2] == 9);
  const auto s1 = density::spectrum_from_L_polynomial(2, 1, L, inf, 12, true);
  CHECK(s1.count(1) == 2);
  CHECK(s1.beyond == Beyond::unverified);
  CHECK_THROWS_AS(density::eisenstein_density(s1, 2, Kind::monic, R("2^-10")), UnachievableWidth);
  const auto at = density::eisenstein_density_at(s1, 2, Kind::monic, 12);
  CHECK_FALSE(at.certified);
  CHECK_THROWS_AS(density::spectrum_from_L_polynomial(2, 1, {BigInt(1), BigInt(0), BigInt(3)}, inf, 4, true),
                  std::domain_error);
  CHECK_THROWS_AS(density::spectrum_from_L_polynomial(2, 0, {BigInt(1)}, {{1, BigInt(5)}}, 4), std::domain_error);
  CHECK_THROWS_AS(density::spectrum_from_L_polynomial(2, 1, {BigInt(1)}, inf, 4), std::domain_error);
}

TEST_CASE("genus prefactor majorant is sound along the known counts") {
  // y^2 + y = x^3 over F_2 and y^2 + y = x^3 + x over F_2 (genus 1).
  for (const auto& L : {std::vector<BigInt>{BigInt(1), BigInt(0), BigInt(2)},
                        std::vector<BigInt>{BigInt(1), BigInt(2), BigInt(2)}}) {
    const auto s = density::with_genus_prefactor(
        density::spectrum_from_L_polynomial(2, 1, L, {{1, BigInt(1)}}, 24, true));
    for (unsigned N = 1; N <= 8; ++N)
      for (Kind k : {Kind::monic, Kind::general}) CHECK(tail_sound(s, 2, k, N, 24));
    const auto iv = density::eisenstein_density(s, 2, Kind::monic, R("2^-12"));
    CHECK(iv.width() <= R("2^-12"));
  }
}

TEST_CASE("explicit spectra and tail regimes") {
  using M = std::map<unsigned, BigInt>;
  const auto unspecified = density::explicit_spectrum(2, 0, M{{1, BigInt(2)}}, 1, Beyond::unspecified);
  CHECK_THROWS_AS(density::tail_bound(unspecified, 2, Kind::monic, 1), std::domain_error);
  CHECK_THROWS_AS(density::eisenstein_density(unspecified, 2, Kind::monic, R("1/2")), std::domain_error);
  CHECK_THROWS_AS(density::explicit_spectrum(2, 0, M{{1, BigInt(-1)}}, 1, Beyond::zero), std::domain_error);
  CHECK_THROWS_AS(density::explicit_spectrum(6, 0, M{}, 1, Beyond::zero), std::domain_error);
  CHECK_THROWS_AS(density::explicit_spectrum(2, 0, M{}, 1, Beyond::majorant), std::domain_error);

  // Counts of F_2(x) up to degree 4, majorant 1 beyond: same interval regime
  // as the rational-field spectrum.
  M counts;
  for (unsigned n = 1; n <= 4; ++n) counts[n] = poly::count_irreducibles(2, n);
  const auto maj = density::explicit_spectrum(2, 0, counts, 4, Beyond::majorant, 1);
  const auto iv = density::eisenstein_density(maj, 2, Kind::monic, R("2^-3"));
  const auto exact = density::eisenstein_density(density::rational_field_spectrum(2), 2, Kind::monic, R("2^-30"));
  CHECK(iv.lo <= exact.lo);
  CHECK(exact.hi <= iv.hi);

  // A finite cutoff without a majorant cannot reach small widths.
  const auto zero_beyond = density::explicit_spectrum(2, 0, counts, 4, Beyond::zero);
  CHECK(density::tail_bound(zero_beyond, 2, Kind::monic, 4) == 0);
  auto s = zero_beyond;
  s.beyond = Beyond::majorant;
  s.majorant = 1000;
  try {
    density::eisenstein_density(s, 2, Kind::monic, R("2^-60"));
    FAIL("expected UnachievableWidth");
  } catch (const UnachievableWidth& e) {
    REQUIRE(e.best_width().has_value());
    CHECK(*e.best_width() == 2 * density::tail_bound(s, 2, Kind::monic, 4));
  }
}
