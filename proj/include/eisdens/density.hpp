#pragma once

// Closed-form densities of (monic and general) Eisenstein polynomials.
//
// The density of polynomials that are NOT Eisenstein at any place of a
// finite set T is the product over Q in T of a local factor depending only
// on deg Q; the Eisenstein density is one minus the product over all of S.
// Products are grouped by place degree: factor(n)^count(n).
//
// Truncated products are exact rationals when their size allows; beyond that
// they are enclosed between dyadic rationals computed with outward rounding,
// so every reported bound is still rigorous. Truncation error is bounded by
//   sum_{n>N} count(n) * (1 - factor(n)) <= C * sum_{n>N} q^{(1-d) n},
// with C = 1 for the rational function field and C = q^{d g} for a curve of
// genus g whose place counts obey the Weil bound.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eisdens/rational.hpp"
#include "eisdens/rff.hpp"

namespace eisdens::density {

enum class Kind { monic, general };

std::string to_string(Kind kind);
Kind parse_kind(const std::string& text);
// Number of coefficients drawn from H: d for monic, d + 1 for general.
inline unsigned arity(Kind kind, unsigned d) { return kind == Kind::monic ? d : d + 1; }

// 1 - (q^n - 1)/q^{(d+1)n} (monic) or 1 - (q^n - 1)^2/q^{(d+2)n} (general).
// Throws std::domain_error for d < 2.
Rational local_factor(std::uint64_t q, unsigned d, unsigned n, Kind kind);
// 1 - local_factor: the density of polynomials Eisenstein at one place of
// degree n.
Rational eisenstein_at_place(std::uint64_t q, unsigned d, unsigned n, Kind kind);

enum class Provenance { rational_field, l_polynomial, explicit_counts };

// What is known about place counts above the cutoff degree.
enum class Beyond {
  unspecified,      // nothing declared; tails cannot be bounded
  zero,             // no places above the cutoff: the spectrum is complete
  unverified,       // counts above the cutoff exist but are unknown
  majorant,         // count(n) <= majorant * q^n above the cutoff
  genus_prefactor,  // count(n) <= q^{d g} * q^n above the cutoff (Weil bound)
};

std::string to_string(Provenance p);
std::string to_string(Beyond b);

// Number of places of S of each degree.
struct PlaceSpectrum {
  std::uint64_t q = 2;
  unsigned genus = 0;
  Provenance provenance = Provenance::rational_field;
  // rational_field only: excluded finite places per degree (infinity is
  // always excluded). Counts are pi_q(n) minus these, for every n.
  std::map<unsigned, BigInt> excluded_by_degree;
  // Other provenances: counts for degrees 1..cutoff (missing keys are 0).
  std::map<unsigned, BigInt> counts;
  unsigned cutoff = 0;
  Beyond beyond = Beyond::unspecified;
  Rational majorant = 0;

  // True when count(n) is determined.
  bool knows(unsigned n) const;
  // Throws std::domain_error when count(n) is not determined.
  BigInt count(unsigned n) const;
};

PlaceSpectrum rational_field_spectrum(std::uint64_t q, const std::vector<unsigned>& excluded_finite_degrees = {});
PlaceSpectrum rational_field_spectrum(const rff::HolomorphySet& H);
// A complete finite spectrum: exactly these places and no others.
PlaceSpectrum finite_spectrum(std::uint64_t q, const std::vector<unsigned>& place_degrees);
PlaceSpectrum explicit_spectrum(std::uint64_t q, unsigned genus, std::map<unsigned, BigInt> counts, unsigned cutoff,
                                Beyond beyond, Rational majorant = 0);
// Throws std::domain_error when invariants fail (negative counts, q not a
// prime power, majorant missing, ...).
void validate(const PlaceSpectrum& spec);

// Point counts N_1..N_max of a curve from its L-polynomial
// L(T) = 1 + a_1 T + ... + a_{2g} T^{2g}, via power sums of the inverse
// roots (Newton's identities on -T L'(T)/L(T)).
std::vector<BigInt> point_counts(std::uint64_t q, const std::vector<BigInt>& L, unsigned max_degree);

// Place counts by Mobius inversion of the point counts, minus `excluded`
// (degree, number) pairs, up to degree `cutoff`. The result is flagged
// Beyond::unverified. Throws std::domain_error for malformed L or negative
// counts.
PlaceSpectrum spectrum_from_L_polynomial(std::uint64_t q, unsigned genus, const std::vector<BigInt>& L,
                                         const std::vector<std::pair<unsigned, BigInt>>& excluded, unsigned cutoff,
                                         bool check_functional_equation = false);
// Declares the Weil-bound majorant for a spectrum that comes from a genuine
// L-polynomial.
PlaceSpectrum with_genus_prefactor(PlaceSpectrum spec);

// prod_{n=1..N} local_factor(n)^count(n), exact. Throws std::length_error
// when the exact value would exceed kExactBitLimit bits.
inline constexpr double kExactBitLimit = 1 << 23;
Rational truncated_not_eisenstein(const PlaceSpectrum& spec, unsigned d, Kind kind, unsigned N);

// Rigorous bounds lo <= product <= hi for the same product. Exact (lo == hi)
// when the exact value has at most kEnclosureExactBits bits, otherwise dyadic with `precision_bits` bits (0 picks a
// precision from N and the spectrum).
inline constexpr double kEnclosureExactBits = 1024;
struct Enclosure {
  Rational lo;
  Rational hi;
  bool exact = false;
};
Enclosure truncated_enclosure(const PlaceSpectrum& spec, unsigned d, Kind kind, unsigned N, unsigned precision_bits = 0);

// Upper bound on |full product - product truncated at N|.
Rational tail_bound(const PlaceSpectrum& spec, unsigned d, Kind kind, unsigned N);

// Certified enclosure of the Eisenstein density 1 - prod_{Q in S} factor.
// truncated_lo/hi enclose 1 - product(N); the full density lies in
// [truncated_lo, truncated_hi + tail] since the product only decreases.
struct DensityInterval {
  unsigned N = 0;
  bool exact = false;
  bool certified = true;
  Rational truncated_lo;
  Rational truncated_hi;
  Rational tail;
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
};

// N is the least degree with 2 * tail_bound(N) <= target_width.
// Throws UnachievableWidth when the spectrum cannot support that width.
DensityInterval eisenstein_density(const PlaceSpectrum& spec, unsigned d, Kind kind, const Rational& target_width);
// Interval for a fixed truncation degree. For Beyond::unverified spectra the
// result is marked certified = false.
DensityInterval eisenstein_density_at(const PlaceSpectrum& spec, unsigned d, Kind kind, unsigned N);

}  // namespace eisdens::density
