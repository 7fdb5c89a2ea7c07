#include "eisdens/density.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eisdens/errors.hpp"
#include "eisdens/gf.hpp"
#include "eisdens/poly.hpp"

namespace eisdens::density {

std::string to_string(Kind kind) { return kind == Kind::monic ? "monic" : "general"; }

Kind parse_kind(const std::string& text) {
  if (text == "monic") return Kind::monic;
  if (text == "general" || text == "non-monic" || text == "nonmonic") return Kind::general;
  throw std::invalid_argument("unknown kind '" + text + "' (expected monic or general)");
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::rational_field: return "rational-field";
    case Provenance::l_polynomial: return "L-polynomial";
    case Provenance::explicit_counts: return "explicit";
  }
  return "?";
}

std::string to_string(Beyond b) {
  switch (b) {
    case Beyond::unspecified: return "unspecified";
    case Beyond::zero: return "zero";
    case Beyond::unverified: return "unverified";
    case Beyond::majorant: return "majorant";
    case Beyond::genus_prefactor: return "genus-prefactor";
  }
  return "?";
}

namespace {

void require_degree(unsigned d) {
  if (d < 2)
    throw std::domain_error("polynomial degree d = " + std::to_string(d) +
                            " is not supported: densities are defined here for d > 1 only");
}

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

// sum_{n>N} q^{(1-d) n} = r^{N+1} / (1 - r) with r = q^{1-d}.
Rational geometric_tail(std::uint64_t q, unsigned d, unsigned N) {
  const Rational r(BigInt(1), pow(big(q), d - 1));
  return pow(r, N + 1) / (1 - r);
}

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

  Rational to_rational() {
    Rational r;
    mpfr_get_q(r.get_mpq_t(), v_);
    return r;
  }

 private:
  mpfr_t v_;
};

double exact_bits(const PlaceSpectrum& spec, unsigned d, unsigned N) {
  const double lq = std::log2(static_cast<double>(spec.q));
  double bits = 0;
  for (unsigned n = 1; n <= N; ++n) {
    const BigInt c = spec.count(n);
    if (c == 0) continue;
    if (!c.fits_ulong_p()) return std::numeric_limits<double>::infinity();
    bits += c.get_d() * (d + 2.0) * n * lq;
    if (bits > kExactBitLimit) return bits;
  }
  return bits;
}

unsigned last_known_degree(const PlaceSpectrum& spec, unsigned N) {
  if (spec.provenance == Provenance::rational_field) return N;
  if (N <= spec.cutoff) return N;
  if (spec.beyond == Beyond::zero) return spec.cutoff;
  throw std::domain_error("place counts are unknown beyond the cutoff degree " + std::to_string(spec.cutoff) +
                          "; cannot truncate at N = " + std::to_string(N));
}

unsigned auto_precision(const PlaceSpectrum& spec, unsigned N, const Rational& tail) {
  // Relative rounding error of a factor is amplified by its exponent.
  std::size_t count_bits = 1;
  for (unsigned n = 1; n <= N; ++n) {
    const BigInt c = spec.count(n);
    if (c > 0) count_bits = std::max(count_bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  }
  std::size_t tail_bits = 128;
  if (tail > 0) {
    const long inv = static_cast<long>(mpz_sizeinbase(tail.get_den_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(tail.get_num_mpz_t(), 2));
    tail_bits = static_cast<std::size_t>(std::max(0L, inv)) + 2;
  }
  std::size_t n_bits = 1;
  while ((1u << n_bits) <= N + 1) ++n_bits;
  return static_cast<unsigned>(std::max<std::size_t>(128, count_bits + tail_bits + 2 * n_bits + 64));
}

Rational clip01(const Rational& r) {
  if (r < 0) return Rational(0);
  if (r > 1) return Rational(1);
  return r;
}

}  // namespace

Rational local_factor(std::uint64_t q, unsigned d, unsigned n, Kind kind) { return 1 - eisenstein_at_place(q, d, n, kind); }

Rational eisenstein_at_place(std::uint64_t q, unsigned d, unsigned n, Kind kind) {
  require_degree(d);
  if (n == 0) throw std::domain_error("place degree must be >= 1");
  const BigInt qn = pow(big(q), n);
  if (kind == Kind::monic) {
    Rational r(qn - 1, pow(qn, d + 1));
    r.canonicalize();
    return r;
  }
  const BigInt m = qn - 1;
  Rational r(m * m, pow(qn, d + 2));
  r.canonicalize();
  return r;
}

bool PlaceSpectrum::knows(unsigned n) const {
  return provenance == Provenance::rational_field || n <= cutoff || beyond == Beyond::zero;
}

BigInt PlaceSpectrum::count(unsigned n) const {
  if (n == 0) throw std::domain_error("place degree must be >= 1");
  if (provenance == Provenance::rational_field) {
    BigInt c = poly::count_irreducibles(q, n);
    if (auto it = excluded_by_degree.find(n); it != excluded_by_degree.end()) c -= it->second;
    return c;
  }
  if (n > cutoff) {
    if (beyond == Beyond::zero) return 0;
    throw std::domain_error("place count of degree " + std::to_string(n) + " is unknown (cutoff " +
                            std::to_string(cutoff) + ")");
  }
  auto it = counts.find(n);
  return it == counts.end() ? BigInt(0) : it->second;
}

PlaceSpectrum rational_field_spectrum(std::uint64_t q, const std::vector<unsigned>& excluded_finite_degrees) {
  PlaceSpectrum s;
  s.q = q;
  s.genus = 0;
  s.provenance = Provenance::rational_field;
  s.beyond = Beyond::majorant;
  s.majorant = 1;
  for (unsigned n : excluded_finite_degrees) s.excluded_by_degree[n] += 1;
  validate(s);
  return s;
}

PlaceSpectrum rational_field_spectrum(const rff::HolomorphySet& H) {
  std::vector<unsigned> degrees;
  for (const auto& P : H.excluded_finite()) degrees.push_back(P.degree());
  return rational_field_spectrum(H.field().q(), degrees);
}

PlaceSpectrum finite_spectrum(std::uint64_t q, const std::vector<unsigned>& place_degrees) {
  std::map<unsigned, BigInt> counts;
  unsigned cutoff = 0;
  for (unsigned n : place_degrees) {
    if (n == 0) throw std::domain_error("place degree must be >= 1");
    counts[n] += 1;
    cutoff = std::max(cutoff, n);
  }
  return explicit_spectrum(q, 0, std::move(counts), cutoff, Beyond::zero);
}

PlaceSpectrum explicit_spectrum(std::uint64_t q, unsigned genus, std::map<unsigned, BigInt> counts, unsigned cutoff,
                                Beyond beyond, Rational majorant) {
  PlaceSpectrum s;
  s.q = q;
  s.genus = genus;
  s.provenance = Provenance::explicit_counts;
  s.counts = std::move(counts);
  s.cutoff = cutoff;
  s.beyond = beyond;
  s.majorant = std::move(majorant);
  validate(s);
  return s;
}

void validate(const PlaceSpectrum& spec) {
  gf::prime_power(spec.q);
  if (spec.provenance == Provenance::rational_field) {
    if (spec.genus != 0) throw std::domain_error("the rational function field has genus 0");
    for (const auto& [n, e] : spec.excluded_by_degree) {
      if (n == 0) throw std::domain_error("place degree must be >= 1");
      if (e < 0 || e > poly::count_irreducibles(spec.q, n))
        throw std::domain_error("invalid spectrum: more excluded places of degree " + std::to_string(n) +
                                " than exist");
    }
    return;
  }
  for (const auto& [n, c] : spec.counts) {
    if (n == 0) throw std::domain_error("place degree must be >= 1");
    if (n > spec.cutoff) throw std::domain_error("count given above the cutoff degree");
    if (c < 0) throw std::domain_error("invalid spectrum: negative place count at degree " + std::to_string(n));
  }
  if (spec.beyond == Beyond::majorant && spec.majorant <= 0)
    throw std::domain_error("a majorant spectrum needs a positive majorant constant");
  if (spec.beyond == Beyond::genus_prefactor && spec.genus == 0 && spec.cutoff == 0)
    throw std::domain_error("the genus-0 prefactor majorant needs counts up to degree >= 1");
}

std::vector<BigInt> point_counts(std::uint64_t q, const std::vector<BigInt>& L, unsigned max_degree) {
  if (L.empty() || L[0] != 1) throw std::domain_error("L-polynomial must satisfy L(0) = 1");
  auto a = [&](unsigned k) { return k < L.size() ? L[k] : BigInt(0); };
  std::vector<BigInt> s(max_degree + 1, 0);
  std::vector<BigInt> N(max_degree + 1, 0);
  for (unsigned m = 1; m <= max_degree; ++m) {
    BigInt v = -BigInt(m) * a(m);
    for (unsigned k = 1; k < m; ++k) v -= a(k) * s[m - k];
    s[m] = v;
    N[m] = pow(big(q), m) + 1 - s[m];
  }
  return N;
}

PlaceSpectrum spectrum_from_L_polynomial(std::uint64_t q, unsigned genus, const std::vector<BigInt>& L,
                                         const std::vector<std::pair<unsigned, BigInt>>& excluded, unsigned cutoff,
                                         bool check_functional_equation) {
  gf::prime_power(q);
  if (L.size() != 2 * genus + 1 || L.back() == 0)
    throw std::domain_error("L-polynomial of a genus-" + std::to_string(genus) + " curve must have degree " +
                            std::to_string(2 * genus));
  if (L[0] != 1) throw std::domain_error("L-polynomial must satisfy L(0) = 1");
  if (excluded.empty()) throw std::domain_error("the exclusion set must be nonempty");
  if (check_functional_equation) {
    for (unsigned k = 0; k <= 2 * genus; ++k) {
      // a_{2g-k} = q^{g-k} a_k
      if (k <= genus) {
        if (L[2 * genus - k] != pow(big(q), genus - k) * L[k])
          throw std::domain_error("L-polynomial fails the functional equation at coefficient " + std::to_string(k));
      }
    }
  }
  const std::vector<BigInt> N = point_counts(q, L, cutoff);
  std::map<unsigned, BigInt> counts;
  for (unsigned n = 1; n <= cutoff; ++n) {
    BigInt sum = 0;
    for (unsigned m = 1; m <= n; ++m) {
      if (n % m != 0) continue;
      const int mu = poly::mobius(n / m);
      if (mu > 0) sum += N[m];
      if (mu < 0) sum -= N[m];
    }
    if (sum % n != 0) throw std::domain_error("L-polynomial gives non-integral place count at degree " + std::to_string(n));
    counts[n] = sum / n;
  }
  for (const auto& [deg, num] : excluded) {
    if (deg == 0) throw std::domain_error("excluded place degree must be >= 1");
    if (deg <= cutoff) counts[deg] -= num;
  }
  for (const auto& [n, c] : counts)
    if (c < 0) throw std::domain_error("invalid spectrum: negative place count at degree " + std::to_string(n));
  PlaceSpectrum s;
  s.q = q;
  s.genus = genus;
  s.provenance = Provenance::l_polynomial;
  s.counts = std::move(counts);
  s.cutoff = cutoff;
  s.beyond = Beyond::unverified;
  return s;
}

PlaceSpectrum with_genus_prefactor(PlaceSpectrum spec) {
  spec.beyond = Beyond::genus_prefactor;
  validate(spec);
  return spec;
}

Rational truncated_not_eisenstein(const PlaceSpectrum& spec, unsigned d, Kind kind, unsigned N) {
  require_degree(d);
  const unsigned top = last_known_degree(spec, N);
  if (exact_bits(spec, d, top) > kExactBitLimit)
    throw std::length_error("truncated product at N = " + std::to_string(N) + " is too large for exact evaluation");
  Rational prod = 1;
  for (unsigned n = 1; n <= top; ++n) {
    const BigInt c = spec.count(n);
    if (c == 0) continue;
    prod *= pow(local_factor(spec.q, d, n, kind), c.get_ui());
  }
  return prod;
}

Enclosure truncated_enclosure(const PlaceSpectrum& spec, unsigned d, Kind kind, unsigned N, unsigned precision_bits) {
  require_degree(d);
  const unsigned top = last_known_degree(spec, N);
  if (exact_bits(spec, d, top) <= kEnclosureExactBits) {
    Rational v = truncated_not_eisenstein(spec, d, kind, N);
    return Enclosure{v, v, true};
  }
  const unsigned prec = precision_bits != 0 ? precision_bits : auto_precision(spec, top, Rational(0));
  MpfrValue lo(prec), hi(prec), flo(prec), fhi(prec);
  mpfr_set_ui(lo.get(), 1, MPFR_RNDD);
  mpfr_set_ui(hi.get(), 1, MPFR_RNDU);
  for (unsigned n = 1; n <= top; ++n) {
    const BigInt c = spec.count(n);
    if (c == 0) continue;
    const Rational f = local_factor(spec.q, d, n, kind);
    // All quantities are in (0, 1], so rounding each step down (up) keeps
    // a lower (upper) bound.
    mpfr_set_q(flo.get(), f.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(fhi.get(), f.get_mpq_t(), MPFR_RNDU);
    mpfr_pow_z(flo.get(), flo.get(), c.get_mpz_t(), MPFR_RNDD);
    mpfr_pow_z(fhi.get(), fhi.get(), c.get_mpz_t(), MPFR_RNDU);
    mpfr_mul(lo.get(), lo.get(), flo.get(), MPFR_RNDD);
    mpfr_mul(hi.get(), hi.get(), fhi.get(), MPFR_RNDU);
  }
  return Enclosure{lo.to_rational(), hi.to_rational(), false};
}

Rational tail_bound(const PlaceSpectrum& spec, unsigned d, Kind kind, unsigned N) {
  require_degree(d);
  if (spec.provenance == Provenance::rational_field) return geometric_tail(spec.q, d, N);
  if (spec.beyond == Beyond::unspecified)
    throw std::domain_error("spectrum declares neither a majorant nor a cutoff flag; its tail cannot be bounded");
  if (N >= spec.cutoff) {
    if (spec.beyond == Beyond::zero || spec.beyond == Beyond::unverified) return 0;
  }
  Rational partial = 0;
  for (unsigned n = N + 1; n <= spec.cutoff; ++n) {
    const BigInt c = spec.count(n);
    if (c != 0) partial += Rational(c) * eisenstein_at_place(spec.q, d, n, kind);
  }
  const unsigned from = std::max(N, spec.cutoff);
  switch (spec.beyond) {
    case Beyond::zero:
    case Beyond::unverified:
      return partial;
    case Beyond::majorant:
      return partial + spec.majorant * geometric_tail(spec.q, d, from);
    case Beyond::genus_prefactor:
      return partial + Rational(pow(big(spec.q), d * spec.genus)) * geometric_tail(spec.q, d, from);
    case Beyond::unspecified:
      break;
  }
  throw std::logic_error("unreachable");
}

DensityInterval eisenstein_density_at(const PlaceSpectrum& spec, unsigned d, Kind kind, unsigned N) {
  require_degree(d);
  DensityInterval out;
  out.N = N;
  out.tail = tail_bound(spec, d, kind, N);
  out.certified = spec.beyond != Beyond::unverified;
  unsigned prec = 0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (prec == 0) {
      const unsigned top = last_known_degree(spec, N);
      prec = auto_precision(spec, top, out.tail);
    }
    const Enclosure e = truncated_enclosure(spec, d, kind, N, prec);
    out.exact = e.exact;
    out.truncated_lo = 1 - e.hi;
    out.truncated_hi = 1 - e.lo;
    out.lo = clip01(out.truncated_lo);
    out.hi = clip01(out.truncated_hi + out.tail);
    // Rounding must not dominate the truncation error.
    if (e.exact || out.tail == 0 || (e.hi - e.lo) <= out.tail) return out;
    prec *= 2;
  }
  return out;
}

DensityInterval eisenstein_density(const PlaceSpectrum& spec, unsigned d, Kind kind, const Rational& target_width) {
  require_degree(d);
  if (target_width <= 0) throw std::domain_error("target width must be positive");
  validate(spec);
  if (spec.beyond == Beyond::unspecified)
    throw std::domain_error("spectrum declares neither a majorant nor a cutoff flag; its density cannot be certified");
  if (spec.provenance != Provenance::rational_field && spec.beyond == Beyond::unverified)
    throw UnachievableWidth("place counts beyond degree " + std::to_string(spec.cutoff) +
                                " are unverified; only the truncated product is available",
                            std::nullopt);

  unsigned N = spec.provenance == Provenance::rational_field ? 1 : 0;
  while (true) {
    const Rational tail = tail_bound(spec, d, kind, N);
    if (2 * tail <= target_width) break;
    if (spec.provenance != Provenance::rational_field && N >= spec.cutoff) {
      throw UnachievableWidth("requested width " + eisdens::to_string(target_width) +
                                  " is below the best certifiable width " + eisdens::to_string(Rational(2 * tail)),
                              Rational(2 * tail));
    }
    ++N;
  }
  DensityInterval out = eisenstein_density_at(spec, d, kind, N);
  // Widen the precision further if rounding still leaves the interval too wide.
  for (unsigned prec = 512; out.width() > target_width && prec <= (1u << 16); prec *= 2) {
    const Enclosure e = truncated_enclosure(spec, d, kind, N, prec);
    out.truncated_lo = 1 - e.hi;
    out.truncated_hi = 1 - e.lo;
    out.lo = clip01(out.truncated_lo);
    out.hi = clip01(out.truncated_hi + out.tail);
  }
  if (out.width() > target_width) throw std::logic_error("could not reach the requested width");
  return out;
}

}  // namespace eisdens::density
