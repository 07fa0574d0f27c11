// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// All sampled runs use master seed 1 unless a criterion asks for two seeds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pants/cli.hpp"
#include "pants/pants.hpp"

namespace {

namespace fs = std::filesystem;
using pants::BoundaryLengths;
using pants::CyclicWord;

struct Verdict {
  bool pass;
  std::string detail;
};

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

double uniform(pants::SplitMix64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

pants::ExperimentConfig sampled(BoundaryLengths m, std::size_t L, std::size_t N, std::uint64_t seed = 1) {
  pants::ExperimentConfig c;
  c.metric = m;
  c.L = L;
  c.N = N;
  c.master_seed = seed;
  return c;
}

Verdict boundary_identities() {
  pants::SplitMix64 rng(1);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const BoundaryLengths bl{uniform(rng, 0.05, 12), uniform(rng, 0.05, 12), uniform(rng, 0.05, 12)};
    const auto rep = pants::generator_matrices(bl);
    worst = std::max({worst, rel(pants::geodesic_length(CyclicWord::parse("a"), rep).value, bl.A),
                      rel(pants::geodesic_length(CyclicWord::parse("b"), rep).value, bl.B),
                      rel(pants::geodesic_length(CyclicWord::parse("ab"), rep).value, bl.C)});
  }
  return {worst <= 1e-9, "max rel err " + fmt("%.3g", worst)};
}

Verdict oracle_equivalence() {
  pants::SplitMix64 rng(1);
  double worst = 0;
  for (const BoundaryLengths bl : {BoundaryLengths{1, 1, 1}, BoundaryLengths{1, 10, 0.1}}) {
    const auto rep = pants::generator_matrices(bl);
    for (int i = 0; i < 1000; ++i) {
      const auto w = pants::sample_word(1 + pants::uniform_below(rng, 30), rng);
      worst = std::max(worst, rel(pants::geodesic_length(w, rep).value, pants::length_direct(w, rep).value));
    }
  }
  return {worst <= 1e-9, "2000 words, max rel err " + fmt("%.3g", worst)};
}

Verdict invariants() {
  const auto rep = pants::generator_matrices(BoundaryLengths{1, 1, 1});
  pants::SplitMix64 rng(1);
  double worst_conj = 0, worst_pow = 0;
  for (int i = 0; i < 500; ++i) {
    const auto w = pants::sample_word(1 + pants::uniform_below(rng, 100), rng);
    const double l = pants::geodesic_length(w, rep).value;
    worst_conj = std::max(worst_conj, rel(pants::geodesic_length(pants::inverse(w), rep).value, l));
    const std::size_t k = pants::uniform_below(rng, w.size());
    worst_conj = std::max(worst_conj, rel(pants::geodesic_length(pants::rotate(w, k), rep).value, l));
  }
  for (int i = 0; i < 500; ++i) {
    const auto w = pants::sample_word(1 + pants::uniform_below(rng, 10), rng);
    const std::size_t n = 1 + pants::uniform_below(rng, 10);
    worst_pow = std::max(worst_pow, rel(pants::geodesic_length(pants::power(w, n), rep).value,
                                        static_cast<double>(n) * pants::geodesic_length(w, rep).value));
  }
  return {worst_conj <= 1e-9 && worst_pow <= 1e-8,
          "rotation/inversion " + fmt("%.3g", worst_conj) + ", power " + fmt("%.3g", worst_pow)};
}

Verdict counting() {
  for (std::size_t L = 1; L <= 10; ++L) {
    if (pants::count_strings(L) != oracle::all_reduced_strings(L).size())
      return {false, "count_strings differs at L=" + std::to_string(L)};
    if (pants::count_classes(L) != oracle::brute_classes(L).size())
      return {false, "count_classes differs at L=" + std::to_string(L)};
  }
  std::uint64_t streamed = 0;
  pants::ClassEnumerator(14).for_each([&](const CyclicWord&) { ++streamed; });
  return {pants::count_classes(14) == streamed, "L<=10 brute force ok, stream(14) = " + std::to_string(streamed)};
}

Verdict sampler() {
  // 28 reduced strings at L=3; chi-square 0.999 quantile with 27 dof.
  constexpr double kCritical = 55.476;
  constexpr int n = 280000;
  std::map<std::string, int> hits;
  for (int i = 0; i < n; ++i) {
    pants::SplitMix64 rng(pants::word_seed(1, 3, static_cast<std::uint64_t>(i)));
    ++hits[pants::sample_word(3, rng).str()];
  }
  double chi2 = 0;
  const double expected = n / 28.0;
  for (const auto& [w, c] : hits) chi2 += (c - expected) * (c - expected) / expected;
  const bool all_strings = hits.size() == 28;

  auto c = sampled({1, 1, 1}, 100, 100000);
  const auto one = pants::run(c);
  c.chunks = 8;
  const auto eight = pants::run(c);
  // The JSON echoes the chunk count; everything else must match bit for bit.
  auto echo = pants::to_json(eight, false);
  echo["config"]["chunks"] = 1;
  const bool same = one.sample.values == eight.sample.values && pants::to_json(one, false).dump() == echo.dump();
  return {all_strings && chi2 < kCritical && same,
          "chi2 " + fmt("%.2f", chi2) + " (< 55.476), chunks 1 vs 8 " + (same ? "identical" : "DIFFER")};
}

Verdict comb_trend() {
  const BoundaryLengths m{1, 1, 5};
  auto e = sampled(m, 14, 0);
  e.mode = pants::Mode::enumerated;
  e.bin_width = 0.25;
  auto s50 = sampled(m, 50, 20000);
  s50.bin_width = 0.25;
  auto s100 = sampled(m, 100, 20000);
  s100.bin_width = 0.25;
  const double c14 = pants::comb_score(pants::run(e).hist, 2.5);
  const double c50 = pants::comb_score(pants::run(s50).hist, 2.5);
  const double c100 = pants::comb_score(pants::run(s100).hist, 2.5);
  // Regression pin from the first verified run (seed 1, bin width 0.25).
  const bool pinned = std::fabs(c14 - 0.2634) < 5e-4;
  return {c14 > c50 && c50 > c100 && c14 > 0.25 && pinned,
          "comb L14 " + fmt("%.4f", c14) + " > L50 " + fmt("%.4f", c50) + " > L100 " + fmt("%.4f", c100)};
}

Verdict normality_trend() {
  const auto r20 = pants::run(sampled({1, 1, 1}, 20, 20000));
  const auto r100 = pants::run(sampled({1, 1, 1}, 100, 20000));
  const double ks20 = r20.stats->ks_statistic, ks100 = r100.stats->ks_statistic;
  const double skew = r100.stats->skewness;
  return {ks100 < ks20 && std::fabs(skew) < 0.15,
          "ks L20 " + fmt("%.4f", ks20) + ", L100 " + fmt("%.4f", ks100) + "; |skew| L100 " + fmt("%.4f", std::fabs(skew)) +
              " (bound 0.15)"};
}

Verdict kappa_convergence() {
  const auto a = pants::run(sampled({1, 1, 1}, 50, 50000, 1));
  const auto b = pants::run(sampled({1, 1, 1}, 100, 50000, 1));
  const auto c = pants::run(sampled({1, 1, 1}, 100, 50000, 2));
  const double d_len = std::fabs(a.scaling.kappa_hat - b.scaling.kappa_hat);
  const double tol_len = 4 * (a.scaling.se_kappa + b.scaling.se_kappa);
  const double d_seed = std::fabs(b.scaling.kappa_hat - c.scaling.kappa_hat);
  const double tol_seed = 4 * (b.scaling.se_kappa + c.scaling.se_kappa);
  return {d_len < tol_len && d_seed < tol_seed,
          "kappa L50 " + fmt("%.5f", a.scaling.kappa_hat) + " L100 " + fmt("%.5f", b.scaling.kappa_hat) + " (|d| " +
              fmt("%.5f", d_len) + " < " + fmt("%.5f", tol_len) + "), seeds 1/2 |d| " + fmt("%.5f", d_seed) + " < " +
              fmt("%.5f", tol_seed)};
}

Verdict desk_scale() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = pants::run(sampled({1, 1, 1}, 100, 100000));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {secs < 60 && r.hist.total == 100000, "N=100000 L=100 in " + fmt("%.2f", secs) + " s"};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

Verdict golden_files() {
  const fs::path golden = PANTS_GOLDEN_DIR;
  const fs::path tmp = fs::temp_directory_path() / "pants_acceptance";
  fs::create_directories(tmp);
  struct Case {
    std::string name;
    std::vector<std::string> args;
  };
  const std::vector<Case> cases{
      {"run_115_L8_enumerated", {"run", "--boundary", "1,1,5", "-L", "8", "--mode", "enumerated", "--bins", "0.25"}},
      {"run_111_L30_sampled", {"run", "--boundary", "1,1,1", "-L", "30", "-n", "2000", "--seed", "1", "--chunks", "3"}},
  };
  std::string detail;
  bool ok = true;
  for (const auto& c : cases) {
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path svg = tmp / (c.name + std::to_string(rep) + ".svg");
      auto args = c.args;
      args.insert(args.end(), {"--svg", svg.string()});
      std::ostringstream out, err;
      if (pants::cli::run(args, {out, err, false}) != 0) {
        ok = false;
        detail += c.name + " exit!=0 ";
        continue;
      }
      const bool json_ok = out.str() == slurp(golden / (c.name + ".json"));
      const bool svg_ok = slurp(svg) == slurp(golden / (c.name + ".svg"));
      if (!json_ok || !svg_ok) {
        ok = false;
        detail += c.name + (json_ok ? "" : " json") + (svg_ok ? "" : " svg") + " differ; ";
      }
    }
  }
  return {ok, ok ? "2 configs x 2 reruns byte-identical to golden JSON and SVG" : detail};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Verdict()> check;
    double time_limit_s;  // 0: none stated
  };
  const std::vector<Criterion> criteria{
      {"1 boundary identities", boundary_identities, 1},
      {"2 oracle equivalence", oracle_equivalence, 5},
      {"3 conjugacy/inversion/power invariants", invariants, 0},
      {"4 counting", counting, 120},
      {"5 sampler correctness", sampler, 0},
      {"6 peak trend (comb score)", comb_trend, 180},
      {"7 normality trend", normality_trend, 120},
      {"8 kappa convergence", kappa_convergence, 0},
      {"9 desk-scale capacity", desk_scale, 0},
      {"10 determinism golden files", golden_files, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      v.pass = false;
      v.detail += "; over the " + fmt("%g", c.time_limit_s) + " s limit";
    }
    failures += !v.pass;
    std::printf("[%s] %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", c.name.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
