#pragma once

// Sampling runs, exhaustive enumerations and word-length sweeps.
//
// Sampled mode: word i (0 <= i < N) is drawn from
// SplitMix64(word_seed(master_seed, L, i)), see rng.hpp. Work is split into
// `chunks` contiguous index ranges executed concurrently; each length lands at
// its own index, so the sample, and every statistic computed from it, is
// independent of the chunk count and of scheduling. Samples are drawn with
// replacement, without deduplicating repeated classes.
//
// Enumerated mode: all classes of word length L in canonical lexicographic
// order, split into chunks the same way.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pants/errors.hpp"
#include "pants/geometry.hpp"
#include "pants/moduli.hpp"
#include "pants/rng.hpp"
#include "pants/stats.hpp"
#include "pants/words.hpp"

#ifndef PANTS_VERSION
#define PANTS_VERSION "1.0.0"
#endif

namespace pants {

inline constexpr std::string_view kVersion = PANTS_VERSION;

struct ExperimentConfig {
  BoundaryLengths metric;
  std::size_t L = 1;
  std::size_t N = 1;  // ignored in enumerated mode
  Mode mode = Mode::sampled;
  std::uint64_t master_seed = 1;
  std::size_t chunks = 1;
  std::optional<double> bin_width;  // Freedman-Diaconis when absent
  std::size_t enumeration_guard = kEnumerationGuard;
};

struct ExperimentResult {
  ExperimentConfig config;
  LengthSample sample;
  // Absent when the sample is too small or constant (e.g. L = 1).
  std::optional<SummaryStats> stats;
  ScalingEstimate scaling;
  Histogram hist;
  double wall_time_seconds = 0;
  std::string version{kVersion};
};

inline void validate(const ExperimentConfig& c) {
  if (c.L == 0) throw ConfigInvalid("word length must be >= 1");
  if (c.chunks == 0) throw ConfigInvalid("chunks must be >= 1");
  if (c.mode == Mode::sampled && c.N == 0) throw ConfigInvalid("sample size must be >= 1");
  if (c.mode == Mode::enumerated && c.L > c.enumeration_guard)
    throw ConfigInvalid("word length " + std::to_string(c.L) + " exceeds the enumeration guard of " +
                        std::to_string(c.enumeration_guard));
  if (c.bin_width && !(*c.bin_width > 0 && std::isfinite(*c.bin_width)))
    throw ConfigInvalid("bin width must be positive");
  // Metric problems surface as the moduli errors.
  generator_matrices(c.metric);
}

namespace detail {

// Runs body(begin, end) over `chunks` contiguous slices of [0, n), one thread
// per slice, and rethrows the first failure in slice order.
template <class Body>
void run_chunked(std::size_t n, std::size_t chunks, Body&& body) {
  chunks = std::max<std::size_t>(1, std::min(chunks, std::max<std::size_t>(n, 1)));
  if (chunks == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      workers.emplace_back([&, c, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

// Lengths of the N sampled words of a run, in index order.
inline std::vector<double> sampled_lengths(const ExperimentConfig& c, const GeneratorRep& rep) {
  const LetterMatrices mats(rep);
  std::vector<double> out(c.N);
  detail::run_chunked(c.N, c.chunks, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng(word_seed(c.master_seed, c.L, i));
      out[i] = geodesic_length(sample_word(c.L, rng), mats).value;
    }
  });
  return out;
}

inline std::vector<double> enumerated_lengths(const ExperimentConfig& c, const GeneratorRep& rep) {
  const std::vector<CyclicWord> words = enumerate_classes(c.L, c.enumeration_guard);
  const LetterMatrices mats(rep);
  std::vector<double> out(words.size());
  detail::run_chunked(words.size(), c.chunks, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = geodesic_length(words[i], mats).value;
  });
  return out;
}

inline ExperimentResult run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const GeneratorRep rep = generator_matrices(config.metric);

  ExperimentResult r;
  r.config = config;
  r.sample.L = config.L;
  r.sample.metric = config.metric;
  r.sample.mode = config.mode;
  if (config.mode == Mode::sampled) {
    r.sample.seed = config.master_seed;
    r.sample.values = sampled_lengths(config, rep);
  } else {
    r.sample.values = enumerated_lengths(config, rep);
  }

  const std::span<const double> values(r.sample.values);
  try {
    r.stats = summarize(values);
  } catch (const TooFewSamples&) {
  } catch (const ZeroVariance&) {
  }
  if (values.size() >= 2) r.scaling = estimate_scaling(values, config.L);
  else r.scaling.kappa_hat = values.front() / static_cast<double>(config.L);
  r.hist = histogram(values, config.bin_width ? *config.bin_width : default_bin_width(values));
  r.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// One run per word length, all with the same master seed; the per-word seeds
// already mix in L, so the runs use distinct streams.
inline std::vector<ExperimentResult> sweep(const ExperimentConfig& config,
                                           std::span<const std::size_t> lengths) {
  if (lengths.empty()) throw ConfigInvalid("sweep needs at least one word length");
  for (std::size_t i = 1; i < lengths.size(); ++i)
    if (lengths[i] <= lengths[i - 1]) throw ConfigInvalid("sweep lengths must be strictly increasing");
  std::vector<ExperimentResult> out;
  out.reserve(lengths.size());
  for (std::size_t L : lengths) {
    ExperimentConfig c = config;
    c.L = L;
    validate(c);
  }
  for (std::size_t L : lengths) {
    ExperimentConfig c = config;
    c.L = L;
    out.push_back(run(c));
  }
  return out;
}

}  // namespace pants
