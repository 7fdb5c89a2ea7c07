#include "eisdens/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "eisdens/errors.hpp"
#include "eisdens/parallel.hpp"

namespace eisdens::verify {

using poly::Poly;

CoeffTuple make_tuple(Kind kind, std::vector<HElem> coeffs) {
  const std::size_t min_len = kind == Kind::monic ? 2 : 3;
  if (coeffs.size() < min_len)
    throw std::domain_error("a coefficient tuple of kind " + density::to_string(kind) + " needs degree d >= 2");
  return CoeffTuple{kind, std::move(coeffs)};
}

bool is_eisenstein_at(const HolomorphySet& H, const CoeffTuple& f, const Place& P) {
  if (!H.in_S(P)) throw std::domain_error("place " + rff::to_string(H.field(), P) + " is not in S");
  const unsigned d = f.degree();
  for (unsigned i = 0; i < d; ++i) {
    const auto v = rff::h_valuation(H, f.coeffs[i], P);
    if (v && *v < 1) return false;
  }
  const auto v0 = rff::h_valuation(H, f.coeffs[0], P);
  if (!v0 || *v0 != 1) return false;
  if (f.kind == Kind::general) {
    const auto vd = rff::h_valuation(H, f.coeffs[d], P);
    if (!vd || *vd != 0) return false;
  }
  return true;
}

namespace {

// Removes from a every irreducible factor it shares with c.
Poly strip_common(const gf::Field& F, Poly a, const Poly& c) {
  if (c.is_zero()) return poly::constant(gf::Elem{1});
  Poly k = poly::gcd(F, a, c);
  while (k.degree() > 0) {
    a = poly::divmod(F, a, k).first;
    k = poly::gcd(F, a, k);
  }
  return a;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned long e, const std::string& what, std::uint64_t budget) {
  const BigInt v = pow(BigInt(static_cast<unsigned long>(base)), e);
  if (v > BigInt(static_cast<unsigned long>(budget)))
    throw BudgetExceeded(what, v, BigInt(static_cast<unsigned long>(budget)));
  return v.get_ui();
}

}  // namespace

Poly eisenstein_kernel(const HolomorphySet& H, const std::vector<Poly>& numerators, Kind kind) {
  const gf::Field& F = H.field();
  const Poly one = poly::constant(gf::Elem{1});
  const std::size_t d = kind == Kind::monic ? numerators.size() : numerators.size() - 1;
  const Poly& h0 = numerators[0];
  if (h0.is_zero()) return one;
  if (kind == Kind::general && numerators[d].is_zero()) return one;
  // Any Eisenstein place divides every lower coefficient.
  Poly g;
  for (std::size_t i = 0; i < d; ++i) {
    g = poly::gcd(F, g, numerators[i]);
    if (g.degree() == 0) return one;
  }
  // v_P(g) = 1 and P not dividing h0/g means v_P(h0) = 1.
  Poly a = strip_common(F, g, poly::divmod(F, h0, g).first);
  if (a.degree() > 0 && H.u().degree() > 0) a = strip_common(F, a, H.u());
  if (a.degree() > 0 && kind == Kind::general) a = strip_common(F, a, numerators[d]);
  if (a.degree() <= 0) return one;
  // Drop primes of multiplicity >= 2: those divide gcd(a, a').
  return strip_common(F, a, poly::gcd(F, a, poly::derivative(F, a)));
}

std::vector<std::pair<Poly, unsigned>> factor_by_trial_division(const gf::Field& F, const Poly& f) {
  if (f.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
  std::vector<std::pair<Poly, unsigned>> out;
  Poly r = poly::make_monic(F, f);
  for (unsigned k = 1; 2 * k <= static_cast<unsigned>(std::max(0, r.degree())); ++k) {
    const BigInt n = pow(BigInt(static_cast<unsigned long>(F.q())), k);
    if (n > BigInt(1ul << 32)) throw std::domain_error("factor degree too large for trial division");
    for (std::uint64_t i = 0; i < n.get_ui() && 2 * k <= static_cast<unsigned>(r.degree()); ++i) {
      const Poly m = poly::monic_from_index(F, k, i);
      unsigned mult = 0;
      while (r.degree() >= static_cast<int>(k)) {
        auto q = poly::divide_exact(F, r, m);
        if (!q) break;
        r = std::move(*q);
        ++mult;
      }
      if (mult > 0) out.emplace_back(m, mult);
    }
  }
  if (r.degree() >= 1) out.emplace_back(r, 1);
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return poly::monic_index(F, a.first) < poly::monic_index(F, b.first);
  });
  return out;
}

std::vector<Place> eisenstein_places(const HolomorphySet& H, const CoeffTuple& f) {
  const unsigned d = f.degree();
  bool any = false;
  for (unsigned i = 0; i < d; ++i) any = any || !f.coeffs[i].is_zero();
  if (!any) throw std::domain_error("all lower coefficients are zero: the candidate place set is infinite");
  std::vector<Poly> nums;
  for (const auto& h : f.coeffs) nums.push_back(h.num);
  const Poly kernel = eisenstein_kernel(H, nums, f.kind);
  std::vector<Place> out;
  if (kernel.degree() <= 0) return out;
  for (auto& [p, mult] : factor_by_trial_division(H.field(), kernel)) {
    Place P = Place::finite(H.field(), p);
    if (H.in_S(P) && is_eisenstein_at(H, f, P)) out.push_back(std::move(P));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Poly> find_polynomial_root(const gf::Field& F, const std::vector<Poly>& lower) {
  if (lower.empty()) throw std::domain_error("empty coefficient list");
  const Poly& h0 = lower[0];
  if (h0.is_zero()) return Poly{};
  std::vector<Poly> divisors{poly::constant(gf::Elem{1})};
  for (const auto& [p, e] : factor_by_trial_division(F, h0)) {
    std::vector<Poly> next;
    for (const auto& m : divisors) {
      Poly t = m;
      for (unsigned k = 0; k <= e; ++k) {
        next.push_back(t);
        t = poly::mul(F, t, p);
      }
    }
    divisors = std::move(next);
  }
  for (const auto& m : divisors) {
    for (std::uint32_t c = 1; c < F.q(); ++c) {
      const Poly r = poly::scale(F, m, gf::Elem{c});
      Poly acc = poly::constant(gf::Elem{1});
      for (std::size_t i = lower.size(); i-- > 0;) acc = poly::add(F, poly::mul(F, acc, r), lower[i]);
      if (acc.is_zero()) return r;
    }
  }
  return std::nullopt;
}

unsigned long exactness_threshold(const std::vector<Place>& T, unsigned genus) {
  if (genus != 0) throw std::domain_error("exactness thresholds are implemented for genus 0 only");
  unsigned long s = 0;
  for (const auto& P : T) s += P.degree();
  return s == 0 ? 0 : 2 * s - 1;
}

Rational product_over_places(std::uint64_t q, unsigned d, Kind kind, const std::vector<Place>& T) {
  Rational prod = 1;
  for (const auto& P : T) prod *= density::local_factor(q, d, P.degree(), kind);
  return prod;
}

std::string to_string(Mode mode) {
  return mode == Mode::not_eisenstein_at_T ? "not-eisenstein-at-T" : "eisenstein-anywhere";
}

Mode parse_mode(const std::string& text) {
  if (text == "not-eisenstein-at-T" || text == "T") return Mode::not_eisenstein_at_T;
  if (text == "eisenstein-anywhere" || text == "anywhere") return Mode::eisenstein_anywhere;
  throw std::invalid_argument("unknown mode '" + text + "'");
}

namespace {

// Per-element bit masks over the places of T, one bit per place:
//   exactly_one: v_P(h) == 1, divisible: v_P(h) >= 1, unit: v_P(h) == 0.
struct MaskTable {
  std::size_t words = 0;
  std::size_t elements = 0;
  std::vector<std::uint64_t> exactly_one;
  std::vector<std::uint64_t> divisible;
  std::vector<std::uint64_t> unit;
};

MaskTable build_masks(const HolomorphySet& H, const Divisor& D, const std::vector<Place>& T, std::uint64_t elements) {
  MaskTable m;
  m.words = std::max<std::size_t>(1, (T.size() + 63) / 64);
  m.elements = elements;
  m.exactly_one.assign(m.words * elements, 0);
  m.divisible.assign(m.words * elements, 0);
  m.unit.assign(m.words * elements, 0);
  const gf::Field& F = H.field();
  for (std::uint64_t e = 0; e < elements; ++e) {
    const Poly num = rff::rr_numerator(H, D, e);
    for (std::size_t t = 0; t < T.size(); ++t) {
      const std::uint64_t bit = std::uint64_t{1} << (t % 64);
      const std::size_t w = e * m.words + t / 64;
      const auto v = poly::valuation(F, num, T[t].poly());
      if (!v || *v >= 1) m.divisible[w] |= bit;
      if (v && *v == 1) m.exactly_one[w] |= bit;
      if (v && *v == 0) m.unit[w] |= bit;
    }
  }
  return m;
}

// Counts tuples whose combined mask is nonzero, i.e. tuples that are
// Eisenstein at some place of T. Subtrees whose prefix mask is already zero
// contain no such tuple and are skipped.
class EisensteinCounter {
 public:
  EisensteinCounter(const MaskTable& m, unsigned d, Kind kind) : m_(m) {
    const unsigned k = density::arity(kind, d);
    tables_.push_back(&m.exactly_one);
    for (unsigned i = 1; i < d; ++i) tables_.push_back(&m.divisible);
    if (kind == Kind::general) tables_.push_back(&m.unit);
    stack_.assign((k + 1) * m.words, 0);
  }

  std::uint64_t count_first(std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    const std::size_t W = m_.words;
    for (std::uint64_t e = begin; e < end; ++e) {
      std::uint64_t any = 0;
      for (std::size_t w = 0; w < W; ++w) {
        stack_[W + w] = (*tables_[0])[e * W + w];
        any |= stack_[W + w];
      }
      if (any == 0) continue;
      hits += tables_.size() == 1 ? 1 : recurse(1);
    }
    return hits;
  }

 private:
  std::uint64_t recurse(std::size_t pos) {
    const std::size_t W = m_.words;
    const std::uint64_t* prefix = &stack_[pos * W];
    std::uint64_t* next = &stack_[(pos + 1) * W];
    const auto& table = *tables_[pos];
    const bool last = pos + 1 == tables_.size();
    std::uint64_t hits = 0;
    for (std::size_t e = 0; e < m_.elements; ++e) {
      std::uint64_t any = 0;
      for (std::size_t w = 0; w < W; ++w) {
        next[w] = prefix[w] & table[e * W + w];
        any |= next[w];
      }
      if (any == 0) continue;
      hits += last ? 1 : recurse(pos + 1);
    }
    return hits;
  }

  const MaskTable& m_;
  std::vector<const std::vector<std::uint64_t>*> tables_;
  std::vector<std::uint64_t> stack_;
};

std::uint64_t count_eisenstein_tuples(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind,
                                      const std::vector<Place>& T, std::uint64_t elements, unsigned workers) {
  if (T.empty()) return 0;
  const MaskTable masks = build_masks(H, D, T, elements);
  std::vector<std::uint64_t> partial(std::max(1u, workers), 0);
  parallel_ranges(elements, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    EisensteinCounter counter(masks, d, kind);
    partial[w] = counter.count_first(begin, end);
  });
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

void require_degree(unsigned d) {
  if (d < 2) throw std::domain_error("polynomial degree d must be > 1");
}

}  // namespace

ExactCount exhaustive_fraction(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind,
                               const std::vector<Place>& T, const EnumerationOptions& opts) {
  require_degree(d);
  if (T.empty()) throw std::domain_error("the truncation set T must be nonempty");
  for (const auto& P : T)
    if (!H.in_S(P)) throw std::domain_error("place " + rff::to_string(H.field(), P) + " of T is not in S");
  const unsigned long ell = rff::rr_dimension(H, D);
  const unsigned k = density::arity(kind, d);
  const std::uint64_t total = checked_pow(H.field().q(), ell * k, "tuple enumeration over L(D)^k", opts.budget);
  const std::uint64_t elements = checked_pow(H.field().q(), ell, "L(D)", opts.budget);
  const std::uint64_t eis = count_eisenstein_tuples(H, D, d, kind, T, elements, opts.workers);
  return ExactCount{BigInt(static_cast<unsigned long>(total - eis)), BigInt(static_cast<unsigned long>(total))};
}

ExactCount exhaustive_eisenstein_anywhere(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind,
                                          const EnumerationOptions& opts) {
  require_degree(d);
  const unsigned long ell = rff::rr_dimension(H, D);
  const unsigned k = density::arity(kind, d);
  const std::uint64_t total = checked_pow(H.field().q(), ell * k, "tuple enumeration over L(D)^k", opts.budget);
  const std::uint64_t elements = checked_pow(H.field().q(), ell, "L(D)", opts.budget);
  // Numerators have degree <= deg D, so no place of larger degree divides one.
  const auto T = H.places_up_to(static_cast<unsigned>(ell - 1), opts.workers);
  const std::uint64_t eis = count_eisenstein_tuples(H, D, d, kind, T, elements, opts.workers);
  return ExactCount{BigInt(static_cast<unsigned long>(eis)), BigInt(static_cast<unsigned long>(total))};
}

MonteCarloResult monte_carlo_fraction(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind, Mode mode,
                                      const std::vector<Place>& T, std::uint64_t samples, std::uint64_t seed,
                                      unsigned workers) {
  require_degree(d);
  if (samples == 0) throw std::domain_error("samples must be >= 1");
  if (mode == Mode::not_eisenstein_at_T) {
    if (T.empty()) throw std::domain_error("the truncation set T must be nonempty");
    for (const auto& P : T)
      if (!H.in_S(P)) throw std::domain_error("place " + rff::to_string(H.field(), P) + " of T is not in S");
  }
  const gf::Field& F = H.field();
  const unsigned long ell = rff::rr_dimension(H, D);
  const unsigned k = density::arity(kind, d);
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::uint64_t> block_hits(blocks, 0);

  auto eisenstein_at = [&](const std::vector<Poly>& nums, const Poly& p) {
    if (nums[0].is_zero()) return false;
    for (unsigned i = 0; i < d; ++i)
      if (!poly::rem(F, nums[i], p).is_zero()) return false;
    if (poly::valuation(F, nums[0], p).value() != 1) return false;
    if (kind == Kind::general && (nums[d].is_zero() || poly::rem(F, nums[d], p).is_zero())) return false;
    return true;
  };

  parallel_ranges(blocks, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    std::vector<Poly> nums(k);
    std::vector<gf::Elem> coeffs(ell);
    std::uniform_int_distribution<std::uint32_t> digit(0, F.q() - 1);
    for (std::uint64_t b = begin; b < end; ++b) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
      std::mt19937_64 rng(seq);
      const std::uint64_t n = std::min(kSampleBlock, samples - b * kSampleBlock);
      std::uint64_t hits = 0;
      for (std::uint64_t s = 0; s < n; ++s) {
        for (unsigned i = 0; i < k; ++i) {
          for (unsigned long j = 0; j < ell; ++j) coeffs[j] = gf::Elem{digit(rng)};
          nums[i] = Poly(coeffs);
        }
        bool hit;
        if (mode == Mode::eisenstein_anywhere) {
          hit = eisenstein_kernel(H, nums, kind).degree() > 0;
        } else {
          hit = true;
          for (const auto& P : T)
            if (eisenstein_at(nums, P.poly())) {
              hit = false;
              break;
            }
        }
        hits += hit ? 1 : 0;
      }
      block_hits[b] = hits;
    }
  });

  MonteCarloResult r;
  r.samples = samples;
  for (auto h : block_hits) r.hits += h;
  r.ratio = static_cast<double>(r.hits) / static_cast<double>(samples);
  r.std_error = std::sqrt(r.ratio * (1 - r.ratio) / static_cast<double>(samples));
  return r;
}

bool ExperimentReport::passed() const {
  if (verdict == "exact-match" || verdict == "within-interval" || verdict == "below-threshold" || verdict == "recorded")
    return true;
  if (verdict == "z-score") return z_score && std::abs(*z_score) <= z_limit;
  return false;
}

namespace {

using Clock = std::chrono::steady_clock;

ExperimentReport skeleton(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind, Mode mode,
                          const std::vector<Place>& T) {
  ExperimentReport r;
  r.q = H.field().q();
  r.d = d;
  r.kind = kind;
  r.mode = mode;
  for (const auto& P : H.excluded()) r.exclude.push_back(rff::to_string(H.field(), P));
  r.divisor = rff::to_string(H, D);
  r.degree = rff::degree(H, D);
  if (mode == Mode::not_eisenstein_at_T)
    for (const auto& P : T) r.T.push_back(rff::to_string(H.field(), P));
  return r;
}

std::int64_t millis_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

}  // namespace

ExperimentReport run_exhaustive(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind, Mode mode,
                                const std::vector<Place>& T, const ExperimentOptions& opts) {
  const auto t0 = Clock::now();
  ExperimentReport r = skeleton(H, D, d, kind, mode, T);
  r.experiment = "exact";
  r.method = "exhaustive";
  r.z_limit = opts.z_limit;
  ExactCount count;
  try {
    count = mode == Mode::not_eisenstein_at_T ? exhaustive_fraction(H, D, d, kind, T, opts.enumeration)
                                              : exhaustive_eisenstein_anywhere(H, D, d, kind, opts.enumeration);
  } catch (const BudgetExceeded& e) {
    if (!opts.fallback_to_monte_carlo) throw;
    ExperimentReport mc = run_monte_carlo(H, D, d, kind, mode, T, opts);
    mc.experiment = "exact";
    mc.note = std::string("exhaustive enumeration over budget (") + e.what() + "); sampled instead";
    return mc;
  }
  r.observed_num = count.hits;
  r.observed_den = count.total;
  const Rational observed = count.fraction();
  if (mode == Mode::not_eisenstein_at_T) {
    r.expected_exact = product_over_places(H.field().q(), d, kind, T);
    r.threshold = exactness_threshold(T);
    r.below_threshold = static_cast<unsigned long>(r.degree) < *r.threshold;
    if (r.below_threshold)
      r.verdict = "below-threshold";
    else
      r.verdict = observed == *r.expected_exact ? "exact-match" : "mismatch";
  } else {
    r.expected_interval = density::eisenstein_density(density::rational_field_spectrum(H), d, kind, opts.width);
    const bool inside = r.expected_interval->lo <= observed && observed <= r.expected_interval->hi;
    r.verdict = inside ? "within-interval" : "recorded";
    if (!inside) r.note = "finite box; the density is the limit over growing divisors";
  }
  r.elapsed_ms = millis_since(t0);
  return r;
}

ExperimentReport run_monte_carlo(const HolomorphySet& H, const Divisor& D, unsigned d, Kind kind, Mode mode,
                                 const std::vector<Place>& T, const ExperimentOptions& opts) {
  const auto t0 = Clock::now();
  ExperimentReport r = skeleton(H, D, d, kind, mode, T);
  r.experiment = "mc";
  r.method = "monte-carlo";
  r.seed = opts.seed;
  r.samples = opts.samples;
  r.z_limit = opts.z_limit;
  const MonteCarloResult mc =
      monte_carlo_fraction(H, D, d, kind, mode, T, opts.samples, opts.seed, opts.enumeration.workers);
  r.observed_num = BigInt(static_cast<unsigned long>(mc.hits));
  r.observed_den = BigInt(static_cast<unsigned long>(mc.samples));
  r.std_error = mc.std_error;
  double expected = 0;
  if (mode == Mode::not_eisenstein_at_T) {
    r.expected_exact = product_over_places(H.field().q(), d, kind, T);
    r.threshold = exactness_threshold(T);
    r.below_threshold = static_cast<unsigned long>(r.degree) < *r.threshold;
    expected = to_double(*r.expected_exact);
  } else {
    r.expected_interval = density::eisenstein_density(density::rational_field_spectrum(H), d, kind, opts.width);
    expected = to_double(r.expected_interval->midpoint());
  }
  double se = mc.std_error;
  if (se == 0) se = std::sqrt(expected * (1 - expected) / static_cast<double>(mc.samples));
  r.z_score = se == 0 ? (mc.ratio == expected ? 0.0 : INFINITY) : (mc.ratio - expected) / se;
  r.verdict = r.below_threshold ? "below-threshold" : "z-score";
  r.elapsed_ms = millis_since(t0);
  return r;
}

std::vector<ExperimentReport> convergence_sweep(const HolomorphySet& H, unsigned d, Kind kind, Mode mode,
                                                const std::vector<Place>& T, unsigned first, unsigned last,
                                                const Divisor& base, const ExperimentOptions& opts) {
  require_degree(d);
  if (first > last) throw std::domain_error("empty degree range");
  std::vector<ExperimentReport> out;
  const unsigned k = density::arity(kind, d);
  for (unsigned a = first; a <= last; ++a) {
    Divisor D = base;
    D.finite.resize(H.excluded_finite().size(), 0);
    D.infinite = a;
    const unsigned long ell = rff::rr_dimension(H, D);
    const BigInt total = pow(BigInt(static_cast<unsigned long>(H.field().q())), ell * k);
    ExperimentReport r;
    if (total <= BigInt(static_cast<unsigned long>(opts.enumeration.budget))) {
      r = run_exhaustive(H, D, d, kind, mode, T, opts);
    } else {
      r = run_monte_carlo(H, D, d, kind, mode, T, opts);
      r.note = "q^(k*l(D)) = " + total.get_str() + " exceeds the budget; sampled";
    }
    r.experiment = "sweep";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eisdens::verify
