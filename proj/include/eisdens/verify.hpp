#pragma once

// Empirical side: the Eisenstein predicate on coefficient tuples, exact
// counts over boxes L(D)^k, seeded Monte Carlo estimates and convergence
// sweeps along growing divisors. Enumeration and sampling are implemented
// for the rational function field only.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eisdens/density.hpp"
#include "eisdens/rational.hpp"
#include "eisdens/rff.hpp"

namespace eisdens::verify {

using density::Kind;
using rff::Divisor;
using rff::HElem;
using rff::HolomorphySet;
using rff::Place;

// Coefficients h_0..h_{d-1} (monic; the leading 1 is implicit) or
// h_0..h_d (general).
struct CoeffTuple {
  Kind kind = Kind::monic;
  std::vector<HElem> coeffs;

  unsigned degree() const {
    return static_cast<unsigned>(kind == Kind::monic ? coeffs.size() : coeffs.size() - 1);
  }
};

// Throws std::domain_error when the length does not give d >= 2.
CoeffTuple make_tuple(Kind kind, std::vector<HElem> coeffs);

// v_P(h_i) >= 1 for i < d, v_P(h_0) == 1 and, for general tuples,
// v_P(h_d) == 0. Zero coefficients lie in every power of P.
bool is_eisenstein_at(const HolomorphySet& H, const CoeffTuple& f, const Place& P);

// All places of S at which f is Eisenstein, in canonical order. Throws
// std::domain_error when h_0..h_{d-1} are all zero.
std::vector<Place> eisenstein_places(const HolomorphySet& H, const CoeffTuple& f);

// Product of the squarefree part of the candidate set: a polynomial whose
// irreducible factors are exactly the Eisenstein places of the tuple with the
// given numerators (zero when none). Works on numerators over any common
// denominator, since excluded places are stripped.
poly::Poly eisenstein_kernel(const HolomorphySet& H, const std::vector<poly::Poly>& numerators, Kind kind);

// Monic irreducible factors of f with multiplicity, by trial division with
// monic polynomials of increasing degree.
std::vector<std::pair<poly::Poly, unsigned>> factor_by_trial_division(const gf::Field& F, const poly::Poly& f);

// A root of X^d + h_{d-1} X^{d-1} + ... + h_0 in F_q[x], searched among
// c * m for units c and monic divisors m of h_0.
std::optional<poly::Poly> find_polynomial_root(const gf::Field& F, const std::vector<poly::Poly>& lower);

struct ExactCount {
  BigInt hits;
  BigInt total;

  Rational fraction() const {
    Rational r(hits, total);
    r.canonicalize();
    return r;
  }
};

struct EnumerationOptions {
  std::uint64_t budget = std::uint64_t{1} << 26;
  unsigned workers = 1;
};

// Number of tuples in L(D)^arity that are NOT Eisenstein at any place of T.
// Throws BudgetExceeded when q^(arity * l(D)) exceeds the budget.
ExactCount exhaustive_fraction(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind,
                               const std::vector<Place>& T, const EnumerationOptions& opts = {});
// Number of tuples in L(D)^arity that are Eisenstein at some place of S.
ExactCount exhaustive_eisenstein_anywhere(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind,
                                          const EnumerationOptions& opts = {});

// Least deg D from which exhaustive counts equal the truncated product over
// T exactly: 2 * sum deg Q - 1 (genus 0).
unsigned long exactness_threshold(const std::vector<Place>& T, unsigned genus = 0);
// prod_{Q in T} local_factor(deg Q).
Rational product_over_places(std::uint64_t q, unsigned d, Kind kind, const std::vector<Place>& T);

enum class Mode { not_eisenstein_at_T, eisenstein_anywhere };
std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct MonteCarloResult {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double ratio = 0;
  double std_error = 0;
};

// Samples are processed in fixed blocks; block b draws from
// std::mt19937_64 seeded by std::seed_seq{seed lo, seed hi, b lo, b hi},
// so the result depends only on (seed, parameters), never on `workers`.
inline constexpr std::uint64_t kSampleBlock = 4096;
MonteCarloResult monte_carlo_fraction(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind, Mode mode,
                                      const std::vector<Place>& T, std::uint64_t samples, std::uint64_t seed,
                                      unsigned workers = 1);

struct ExperimentReport {
  std::string experiment;  // "exact", "mc" or "sweep"
  std::string method;      // "exhaustive" or "monte-carlo"
  std::uint64_t q = 0;
  unsigned d = 0;
  Kind kind = Kind::monic;
  Mode mode = Mode::not_eisenstein_at_T;
  std::vector<std::string> exclude;
  std::string divisor;
  long degree = 0;
  std::vector<std::string> T;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;

  BigInt observed_num;
  BigInt observed_den;
  std::optional<Rational> expected_exact;
  std::optional<density::DensityInterval> expected_interval;

  std::string verdict;
  std::optional<double> z_score;
  std::optional<double> std_error;
  double z_limit = 5.0;
  std::optional<unsigned long> threshold;
  bool below_threshold = false;
  std::string note;
  std::int64_t elapsed_ms = 0;

  bool passed() const;
};

struct ExperimentOptions {
  EnumerationOptions enumeration;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  // Width of the density interval used as the expected value in
  // eisenstein-anywhere experiments.
  Rational width = Rational(1, 1u << 30);
  // When exhaustive enumeration is over budget, sample instead of failing.
  bool fallback_to_monte_carlo = false;
  double z_limit = 5.0;
};

ExperimentReport run_exhaustive(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind, Mode mode,
                                const std::vector<Place>& T, const ExperimentOptions& opts);
ExperimentReport run_monte_carlo(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind, Mode mode,
                                 const std::vector<Place>& T, const ExperimentOptions& opts);

// One report per infinity coefficient in [first, last]; D = a * inf plus the
// finite part of `base`. Exhaustive when within budget, otherwise sampled.
std::vector<ExperimentReport> convergence_sweep(const HolomorphySet& H, unsigned d, Kind kind, Mode mode,
                                                const std::vector<Place>& T, unsigned first, unsigned last,
                                                const Divisor& base, const ExperimentOptions& opts);

}  // namespace eisdens::verify
