#pragma once

// Geodesic length of a cyclic word: cosh(l/2) = |trace(M)|/2 where M is the
// product of the generator matrices along the word.
//
// Letter a maps to mat_a, A to mat_a_inv, b to mat_b, B to mat_b_inv, and the
// product is taken left to right in word order. Entries of M grow like
// exp(l/2), so products are kept as a normalized matrix times a power of two.
//
// A short word can have |trace| close to 2 while the entries of M are large
// (e.g. "ab" with A, B near 12 and C near 0.05); the trace then loses most of
// its digits to cancellation. geodesic_length estimates that loss and, when
// the length would be off by more than kRefineTolerance, recomputes the word
// in 113-bit floating point from the half-traces.

#include <array>
#include <cmath>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pants/errors.hpp"
#include "pants/matrix.hpp"
#include "pants/moduli.hpp"
#include "pants/words.hpp"

namespace pants {

// Represents 2^exponent * m with max|m| in [1, 2) after each renormalization.
// Rescaling by a power of two is exact, so the normalized entries carry no
// rounding beyond that of the plain product.
struct LogMatrix {
  Mat2 m;
  std::int64_t exponent = 0;

  double log_scale() const noexcept { return static_cast<double>(exponent) * std::numbers::ln2; }

  void renormalize() noexcept {
    int e = 0;
    std::frexp(m.max_abs(), &e);  // max_abs = f * 2^e, f in [0.5, 1)
    const int shift = e - 1;
    if (shift == 0) return;
    m = std::ldexp(1.0, -shift) * m;
    exponent += shift;
  }

  // log(det) of the represented matrix; 0 for products of generators.
  double log_det() const noexcept { return std::log(m.det()) + 2 * log_scale(); }

  // The represented matrix itself. Overflows for long words.
  Mat2 represented() const noexcept {
    return {std::ldexp(m.a, static_cast<int>(exponent)), std::ldexp(m.b, static_cast<int>(exponent)),
            std::ldexp(m.c, static_cast<int>(exponent)), std::ldexp(m.d, static_cast<int>(exponent))};
  }
};

struct GeodesicLength {
  double value;           // hyperbolic length
  double log_half_trace;  // ln(|trace| / 2)
};

// Letter lookup table over a GeneratorRep.
class LetterMatrices {
 public:
  explicit LetterMatrices(const GeneratorRep& rep) noexcept
      : table_{rep.mat_a, rep.mat_a_inv, rep.mat_b, rep.mat_b_inv}, params_(rep.params), traces_(rep.traces) {}

  const Mat2& operator[](Letter x) const noexcept { return table_[index_of(x)]; }

  const std::optional<FenchelParams>& params() const noexcept { return params_; }
  const std::optional<HalfTraces>& traces() const noexcept { return traces_; }

 private:
  std::array<Mat2, 4> table_;
  std::optional<FenchelParams> params_;
  std::optional<HalfTraces> traces_;
};

inline LogMatrix log_product(const CyclicWord& w, const LetterMatrices& mats) noexcept {
  LogMatrix p{mats[w[0]], 0};
  p.renormalize();
  for (std::size_t i = 1; i < w.size(); ++i) {
    p.m = p.m * mats[w[i]];
    p.renormalize();
  }
  return p;
}

inline LogMatrix log_product(const CyclicWord& w, const GeneratorRep& rep) noexcept {
  return log_product(w, LetterMatrices(rep));
}

// Below this half-trace 2*acosh(t) is evaluated directly.
inline constexpr double kArccoshCrossover = 10.0;

// |trace| must exceed 2 + kHyperbolicMargin for a hyperbolic element.
inline constexpr double kHyperbolicMargin = 1e-12;

namespace detail {

inline GeodesicLength length_from_half_trace(double half_trace_mantissa, std::int64_t exponent,
                                             const CyclicWord& w) {
  const double log_ht = std::log(half_trace_mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
  if (log_ht <= std::log(kArccoshCrossover)) {
    const double t = std::ldexp(half_trace_mantissa, static_cast<int>(exponent));
    if (!(t > 1.0 + kHyperbolicMargin / 2))
      throw EllipticOrParabolicTrace("|trace| <= 2 for word " + w.str() +
                                     ": element is not hyperbolic");
    return {2 * std::acosh(t), log_ht};
  }
  // 2*acosh(t) = 2*(ln t + ln(1 + sqrt(1 - t^-2))), finite for any ln t.
  return {2 * (log_ht + std::log1p(std::sqrt(-std::expm1(-2 * log_ht)))), log_ht};
}

using Quad = boost::multiprecision::cpp_bin_float_quad;
using QuadMat = std::array<Quad, 4>;  // row-major

inline QuadMat quad_mul(const QuadMat& p, const QuadMat& q) {
  return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
          p[2] * q[1] + p[3] * q[3]};
}

// Letter matrices in 113-bit precision, rebuilt from the most upstream data
// the table carries; a hand-made rep is taken as exact.
inline std::array<QuadMat, 4> quad_letters(const LetterMatrices& mats) {
  std::optional<std::array<Quad, 8>> e;
  if (mats.traces()) {
    const auto [al, be, ga] = fenchel_from_half_traces<Quad>(mats.traces()->x, mats.traces()->y, mats.traces()->z);
    e = generator_entries<Quad>(al, be, ga);
  } else if (mats.params()) {
    e = generator_entries<Quad>(mats.params()->alpha, mats.params()->beta, mats.params()->gamma);
  }
  std::array<QuadMat, 4> out;
  if (e) {
    const auto& v = *e;
    out[index_of(Letter::a)] = {v[0], v[1], v[2], v[3]};
    out[index_of(Letter::A)] = {v[3], -v[1], -v[2], v[0]};
    out[index_of(Letter::b)] = {v[4], v[5], v[6], v[7]};
    out[index_of(Letter::B)] = {v[7], -v[5], -v[6], v[4]};
  } else {
    for (Letter x : kAlphabet) out[index_of(x)] = {mats[x].a, mats[x].b, mats[x].c, mats[x].d};
  }
  return out;
}

inline GeodesicLength quad_length(const CyclicWord& w, const LetterMatrices& mats) {
  const auto letters = quad_letters(mats);
  QuadMat p{1, 0, 0, 1};
  std::int64_t exponent = 0;
  for (Letter x : w) {
    p = quad_mul(p, letters[index_of(x)]);
    int e = 0;
    using boost::multiprecision::abs;
    frexp(std::max({abs(p[0]), abs(p[1]), abs(p[2]), abs(p[3])}), &e);
    if (e != 0) {
      for (Quad& v : p) v = ldexp(v, -e);
      exponent += e;
    }
  }
  const Quad mant = abs(p[0] + p[3]) / 2;
  const Quad log_ht = log(mant) + Quad(exponent) * boost::math::constants::ln_two<Quad>();
  if (log_ht <= std::log(kArccoshCrossover)) {
    const Quad t = ldexp(mant, static_cast<int>(exponent));
    if (!(t > 1 + Quad(kHyperbolicMargin) / 2))
      throw EllipticOrParabolicTrace("|trace| <= 2 for word " + w.str() + ": element is not hyperbolic");
    return {static_cast<double>(2 * log(t + sqrt((t - 1) * (t + 1)))), static_cast<double>(log_ht)};
  }
  const double lh = static_cast<double>(log_ht);
  return {2 * (lh + std::log1p(std::sqrt(-std::expm1(-2 * lh)))), lh};
}

}  // namespace detail

// Relative length error above which a word is recomputed in extended precision.
inline constexpr double kRefineTolerance = 1e-12;

inline GeodesicLength geodesic_length(const CyclicWord& w, const LetterMatrices& mats) {
  const LogMatrix p = log_product(w, mats);
  const double mant = std::fabs(p.m.trace()) / 2;
  // Error bound for the half-trace t: every step rounds each entry at the
  // level of the largest one, so |dt| <~ 4 L u max|M|. The length then moves
  // by dt / sqrt(t^2 - 1) (or dt / t once t is large).
  const double u = std::numeric_limits<double>::epsilon() / 2;
  const double dt_over_t = 4 * static_cast<double>(w.size()) * u * p.m.max_abs() / mant;
  const double log_ht = std::log(mant) + static_cast<double>(p.exponent) * std::numbers::ln2;
  double rel = 0;
  if (!(mant > 0)) {
    rel = std::numeric_limits<double>::infinity();
  } else if (log_ht <= std::log(kArccoshCrossover)) {
    const double t = std::ldexp(mant, static_cast<int>(p.exponent));
    rel = t > 1 ? dt_over_t * t / (std::sqrt((t - 1) * (t + 1)) * std::acosh(t))
                : std::numeric_limits<double>::infinity();
  } else {
    rel = dt_over_t / log_ht;
  }
  if (rel > kRefineTolerance) return detail::quad_length(w, mats);
  return detail::length_from_half_trace(mant, p.exponent, w);
}

inline GeodesicLength geodesic_length(const CyclicWord& w, const GeneratorRep& rep) {
  return geodesic_length(w, LetterMatrices(rep));
}

inline constexpr std::size_t kDirectLengthGuard = 200;

// Plain double-precision product with no rescaling. Cross-check for
// geodesic_length; fails once any entry stops being finite.
inline GeodesicLength length_direct(const CyclicWord& w, const GeneratorRep& rep) {
  if (w.size() > kDirectLengthGuard)
    throw GuardExceeded("length_direct supports words of at most " +
                        std::to_string(kDirectLengthGuard) + " letters");
  const LetterMatrices mats(rep);
  Mat2 p = Mat2::identity();
  for (Letter x : w) {
    p = p * mats[x];
    if (!p.finite()) throw OverflowDetected("matrix product overflowed for word " + w.str());
  }
  const double t = std::fabs(p.trace()) / 2;
  if (!std::isfinite(t)) throw OverflowDetected("trace overflowed for word " + w.str());
  if (!(t > 1.0 + kHyperbolicMargin / 2))
    throw EllipticOrParabolicTrace("|trace| <= 2 for word " + w.str());
  return {2 * std::acosh(t), std::log(t)};
}

}  // namespace pants
