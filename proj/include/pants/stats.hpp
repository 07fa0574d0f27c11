#pragma once

// Moments, Lilliefors normality statistic, scaling estimators, histograms and
// the comb score used to detect length peaks at multiples of a spacing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pants/errors.hpp"
#include "pants/moduli.hpp"

namespace pants {

enum class Mode { sampled, enumerated };

inline std::string_view to_string(Mode m) noexcept {
  return m == Mode::sampled ? "sampled" : "enumerated";
}

inline std::optional<Mode> mode_from_string(std::string_view s) noexcept {
  if (s == "sampled") return Mode::sampled;
  if (s == "enumerated") return Mode::enumerated;
  return std::nullopt;
}

struct LengthSample {
  std::vector<double> values;
  std::size_t L = 0;
  BoundaryLengths metric;
  Mode mode = Mode::sampled;
  std::optional<std::uint64_t> seed;  // absent for enumerated samples

  std::size_t N() const noexcept { return values.size(); }
};

struct SummaryStats {
  double mean = 0;
  double sample_std = 0;  // denominator N-1
  double skewness = 0;    // adjusted Fisher-Pearson G1
  double excess_kurtosis = 0;  // adjusted G2
  double min = 0;
  double max = 0;
  double ks_statistic = 0;  // Lilliefors
};

struct ScalingEstimate {
  double kappa_hat = 0;   // mean / L
  double sigma_hat = 0;   // std / sqrt(L)
  double se_kappa = 0;    // std / (sqrt(N) L)
  double se_sigma = 0;    // std / (sqrt(2(N-1)) sqrt(L))
  double std_over_L = 0;  // std / L
};

struct Histogram {
  double bin_width = 1;
  double origin = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t size() const noexcept { return counts.size(); }
  double lower_edge(std::size_t k) const noexcept { return origin + static_cast<double>(k) * bin_width; }
  double upper_edge(std::size_t k) const noexcept { return origin + static_cast<double>(k + 1) * bin_width; }
};

// ---------------------------------------------------------------------------

// Pairwise summation; result depends only on the sequence, not on how a
// caller might have chunked its production.
template <class F>
double pairwise_sum(std::span<const double> xs, F&& f) {
  constexpr std::size_t kLeaf = 64;
  if (xs.size() <= kLeaf) {
    double s = 0;
    for (double x : xs) s += f(x);
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half), f) + pairwise_sum(xs.subspan(half), f);
}

inline double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum(xs, [](double x) { return x; });
}

inline double standard_normal_cdf(double z) noexcept {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// sup_x |F_n(x) - Phi((x - mean)/std)| over the empirical CDF F_n.
inline double lilliefors_statistic(std::span<const double> values, double mean, double std_dev) {
  std::vector<double> z(values.begin(), values.end());
  std::sort(z.begin(), z.end());
  const double n = static_cast<double>(z.size());
  double d = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double cdf = standard_normal_cdf((z[i] - mean) / std_dev);
    d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

inline constexpr std::size_t kMinSummarySize = 8;

inline SummaryStats summarize(std::span<const double> values) {
  const std::size_t count = values.size();
  if (count < kMinSummarySize)
    throw TooFewSamples("summary statistics need at least " + std::to_string(kMinSummarySize) +
                        " values, got " + std::to_string(count));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) throw ZeroVariance("all values are equal");

  const double n = static_cast<double>(count);
  SummaryStats s;
  s.min = *lo;
  s.max = *hi;
  s.mean = pairwise_sum(values) / n;
  const double mu = s.mean;
  const double ss2 = pairwise_sum(values, [mu](double x) { return (x - mu) * (x - mu); });
  const double ss3 = pairwise_sum(values, [mu](double x) { const double d = x - mu; return d * d * d; });
  const double ss4 = pairwise_sum(values, [mu](double x) { const double d = x - mu; return d * d * d * d; });
  const double m2 = ss2 / n, m3 = ss3 / n, m4 = ss4 / n;

  s.sample_std = std::sqrt(ss2 / (n - 1));
  const double g1 = m3 / std::pow(m2, 1.5);
  const double g2 = m4 / (m2 * m2) - 3.0;
  s.skewness = g1 * std::sqrt(n * (n - 1)) / (n - 2);
  s.excess_kurtosis = ((n + 1) * g2 + 6) * (n - 1) / ((n - 2) * (n - 3));
  s.ks_statistic = lilliefors_statistic(values, s.mean, s.sample_std);
  return s;
}

inline SummaryStats summarize(const LengthSample& s) { return summarize(std::span<const double>(s.values)); }

inline ScalingEstimate estimate_scaling(std::span<const double> values, std::size_t word_length) {
  if (values.size() < 2) throw TooFewSamples("scaling estimate needs at least 2 values");
  if (word_length == 0) throw InvalidArgument("word length must be >= 1");
  const double n = static_cast<double>(values.size());
  const double L = static_cast<double>(word_length);
  const double mean = pairwise_sum(values) / n;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double sd = 0;
  if (*lo != *hi)
    sd = std::sqrt(pairwise_sum(values, [mean](double x) { return (x - mean) * (x - mean); }) / (n - 1));
  return {mean / L, sd / std::sqrt(L), sd / (std::sqrt(n) * L),
          sd / (std::sqrt(2 * (n - 1)) * std::sqrt(L)), sd / L};
}

inline ScalingEstimate estimate_scaling(const LengthSample& s) { return estimate_scaling(s.values, s.L); }

// ---------------------------------------------------------------------------
// Histograms

// Right-open bins [origin + k w, origin + (k+1) w) with
// origin = w * floor(min / w).
inline Histogram histogram(std::span<const double> values, double bin_width) {
  if (!(bin_width > 0) || !std::isfinite(bin_width)) throw InvalidArgument("bin width must be positive");
  if (values.empty()) throw EmptySample("cannot histogram an empty sample");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  Histogram h;
  h.bin_width = bin_width;
  h.origin = bin_width * std::floor(*lo / bin_width);
  const auto bin_of = [&](double v) {
    auto k = static_cast<std::int64_t>(std::floor((v - h.origin) / bin_width));
    // Rounding in (v - origin)/w can land one bin off an edge.
    if (k > 0 && v < h.lower_edge(static_cast<std::size_t>(k))) --k;
    if (k < 0) k = 0;
    while (v >= h.upper_edge(static_cast<std::size_t>(k))) ++k;
    return static_cast<std::size_t>(k);
  };
  h.counts.assign(bin_of(*hi) + 1, 0);
  for (double v : values) ++h.counts[bin_of(v)];
  h.total = values.size();
  return h;
}

inline Histogram histogram(const LengthSample& s, double bin_width) { return histogram(s.values, bin_width); }

// Round a positive value to one significant digit.
inline double round_one_significant(double w) {
  const double p = std::pow(10.0, std::floor(std::log10(w)));
  return std::round(w / p) * p;
}

// Type-7 (linear interpolation) quantile of sorted data.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

// Freedman-Diaconis width 2 IQR N^(-1/3), rounded to one significant digit.
// Falls back to range/10, then to 1, when the spread is zero.
inline double default_bin_width(std::span<const double> values) {
  if (values.empty()) throw EmptySample("cannot choose a bin width for an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double w = 2 * iqr * std::cbrt(1.0 / static_cast<double>(sorted.size()));
  if (!(w > 0)) w = (sorted.back() - sorted.front()) / 10;
  if (!(w > 0)) return 1.0;
  return round_one_significant(w);
}

// Index range [first, last] of bins holding the central 90% of the mass:
// first is the bin where the cumulative count reaches 5%, last where it
// reaches 95%.
inline std::pair<std::size_t, std::size_t> central_bins(const Histogram& h) {
  const double total = static_cast<double>(h.total);
  std::size_t first = 0, last = h.size() - 1;
  bool have_first = false;
  std::uint64_t cum = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    cum += h.counts[k];
    if (!have_first && static_cast<double>(cum) >= 0.05 * total) {
      first = k;
      have_first = true;
    }
    if (static_cast<double>(cum) >= 0.95 * total) {
      last = k;
      break;
    }
  }
  return {first, last};
}

// True when [lo, hi) contains an integer multiple of spacing.
inline bool bin_contains_multiple(double lo, double hi, double spacing) noexcept {
  const double tol = 1e-9 * spacing;
  const double m = std::ceil((lo - tol) / spacing) * spacing;
  return m >= lo - tol && m < hi - tol;
}

// Mean count of the central-90% bins that contain a multiple of `spacing`,
// divided by the mean count of all central-90% bins, minus one. Positive
// values mean mass concentrates near multiples of the spacing.
inline double comb_score(const Histogram& h, double spacing) {
  if (!(spacing > 2 * h.bin_width))
    throw SpacingTooFine("comb spacing must exceed twice the bin width");
  if (h.counts.empty() || h.total == 0) throw EmptySample("comb score of an empty histogram");
  const auto [first, last] = central_bins(h);
  double all_sum = 0, comb_sum = 0;
  std::size_t all_n = 0, comb_n = 0;
  for (std::size_t k = first; k <= last; ++k) {
    const auto c = static_cast<double>(h.counts[k]);
    all_sum += c;
    ++all_n;
    if (bin_contains_multiple(h.lower_edge(k), h.upper_edge(k), spacing)) {
      comb_sum += c;
      ++comb_n;
    }
  }
  if (comb_n == 0)
    throw InvalidArgument("no central bin contains a multiple of the comb spacing");
  return (comb_sum / static_cast<double>(comb_n)) / (all_sum / static_cast<double>(all_n)) - 1.0;
}

}  // namespace pants
