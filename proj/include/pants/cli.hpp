#pragma once

// The pants-spectrum command line. Kept in a header so tests can drive it
// in-process with string streams.
//
// Exit codes: 0 success, 1 computational error, 2 usage error.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pants/errors.hpp"
#include "pants/experiment.hpp"
#include "pants/geometry.hpp"
#include "pants/moduli.hpp"
#include "pants/report.hpp"
#include "pants/stats.hpp"
#include "pants/words.hpp"

namespace pants::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSynopsis =
    "usage: pants-spectrum <length|count|enumerate|sample|run|sweep|comb> [options]\n"
    "       pants-spectrum <command> --help for the options of a command\n";

// Bad flag values found after parsing; reported like parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double parse_double(const std::string& text, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
    throw UsageError(what + ": '" + text + "' is not a decimal number");
  return v;
}

inline std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) parts.push_back(cur);
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

inline BoundaryLengths parse_boundary(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 3) throw UsageError("--boundary expects A,B,C, got '" + text + "'");
  BoundaryLengths bl{parse_double(parts[0], "--boundary"), parse_double(parts[1], "--boundary"),
                     parse_double(parts[2], "--boundary")};
  if (!(bl.A > 0 && bl.B > 0 && bl.C > 0))
    throw UsageError("--boundary lengths must all be positive, got '" + text + "'");
  return bl;
}

inline std::vector<std::size_t> parse_lengths(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& p : split_commas(text)) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(p.c_str(), &end, 10);
    if (p.empty() || p[0] == '-' || end != p.c_str() + p.size() || errno == ERANGE || v == 0)
      throw UsageError("--lengths expects positive integers separated by commas, got '" + text + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw UsageError("--lengths is empty");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw UsageError("--lengths must be strictly increasing");
  return out;
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

inline void report_error(const Streams& s, std::string_view kind, std::string_view message) {
  if (s.color) s.err << "\x1b[31m";
  s.err << "pants-spectrum: " << kind << ": " << message;
  if (s.color) s.err << "\x1b[0m";
  s.err << '\n';
}

inline int run(int argc, const char* const* argv, Streams s) {
  CLI::App app{"Geodesic length statistics of cyclic words on the hyperbolic pair of pants",
               "pants-spectrum"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // length
  std::string boundary_text, word_text;
  auto* length_cmd = app.add_subcommand("length", "Geodesic length of one cyclic word");
  length_cmd->add_option("--boundary", boundary_text, "Boundary lengths A,B,C")->required();
  length_cmd->add_option("--word", word_text, "Word over a, A, b, B (A = a^-1, B = b^-1)")->required();

  // count
  std::size_t word_length = 0;
  bool count_classes_flag = false, count_strings_flag = false;
  auto* count_cmd = app.add_subcommand("count", "Number of classes (default) or strings of a word length");
  auto* classes_opt = count_cmd->add_flag("--classes", count_classes_flag, "Count rotation classes");
  auto* strings_opt = count_cmd->add_flag("--strings", count_strings_flag, "Count cyclically reduced strings");
  classes_opt->excludes(strings_opt);
  count_cmd->add_option("-L,--word-length", word_length, "Word length")
      ->required()
      ->check(CLI::PositiveNumber);

  // enumerate
  std::optional<std::size_t> limit;
  bool allow_large = false;
  std::string format = "json";
  auto* enum_cmd = app.add_subcommand("enumerate", "List every class of a word length in canonical form");
  enum_cmd->add_option("-L,--word-length", word_length, "Word length")->required()->check(CLI::PositiveNumber);
  enum_cmd->add_option("--limit", limit, "Stop after this many classes")->check(CLI::NonNegativeNumber);
  enum_cmd->add_flag("--allow-large", allow_large, "Lift the word length guard of 16");
  enum_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  // sample
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::size_t chunks = 1;
  std::string dump_path;
  auto* sample_cmd = app.add_subcommand("sample", "Sample words uniformly and print their lengths");
  sample_cmd->add_option("--boundary", boundary_text, "Boundary lengths A,B,C")->required();
  sample_cmd->add_option("-L,--word-length", word_length, "Word length")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("-n,--samples", samples, "Number of words")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed, "Master seed (default 1)");
  sample_cmd->add_option("--chunks", chunks, "Parallel chunks")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--dump", dump_path, "Also write the lengths as CSV to this file");
  sample_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  // run / sweep share their flags
  std::string mode_text = "sampled", svg_path, lengths_text;
  std::optional<double> bins;
  bool timing = false;
  const auto add_experiment_flags = [&](CLI::App* cmd) {
    cmd->add_option("--boundary", boundary_text, "Boundary lengths A,B,C")->required();
    cmd->add_option("-n,--samples", samples, "Words per run in sampled mode (default 100000)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mode", mode_text, "sampled or enumerated")->check(CLI::IsMember({"sampled", "enumerated"}));
    cmd->add_option("--seed", seed, "Master seed (default 1)");
    cmd->add_option("--chunks", chunks, "Parallel chunks; results do not depend on it")->check(CLI::PositiveNumber);
    cmd->add_option("--bins", bins, "Histogram bin width (default Freedman-Diaconis)")->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "json (result) or csv (histogram)")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--timing", timing, "Record wall time in the result (makes output non-reproducible)");
    cmd->add_flag("--allow-large", allow_large, "Lift the enumeration guard of word length 16");
  };
  auto* run_cmd = app.add_subcommand("run", "One experiment: statistics and histogram of lengths");
  add_experiment_flags(run_cmd);
  run_cmd->add_option("-L,--word-length", word_length, "Word length")->required()->check(CLI::PositiveNumber);
  run_cmd->add_option("--svg", svg_path, "Write the histogram as SVG to this file");
  run_cmd->add_option("--dump", dump_path, "Write all lengths as CSV to this file");

  auto* sweep_cmd = app.add_subcommand("sweep", "One experiment per word length");
  add_experiment_flags(sweep_cmd);
  sweep_cmd->add_option("--lengths", lengths_text, "Strictly increasing word lengths, e.g. 20,50,100")
      ->required();
  sweep_cmd->add_option("--svg-prefix", svg_path, "Write PREFIX_L<L>.svg for every length");

  // comb
  double spacing = 0;
  std::string input_path;
  auto* comb_cmd = app.add_subcommand("comb", "Comb score of a histogram CSV at a spacing");
  comb_cmd->add_option("--spacing", spacing, "Peak spacing, e.g. C/2")->required()->check(CLI::PositiveNumber);
  comb_cmd->add_option("--input", input_path, "Histogram CSV (bin_lo,bin_hi,count)")->required();

  std::optional<BoundaryLengths> metric;
  std::vector<std::size_t> lengths;
  try {
    app.parse(argc, argv);
    if (!boundary_text.empty()) metric = parse_boundary(boundary_text);
    if (!lengths_text.empty()) lengths = parse_lengths(lengths_text);
    const bool experiment = run_cmd->parsed() || sweep_cmd->parsed();
    if (experiment && mode_text == "enumerated" && !allow_large) {
      const std::size_t longest = run_cmd->parsed() ? word_length : lengths.back();
      if (longest > kEnumerationGuard)
        throw UsageError("enumerated mode is limited to word length " + std::to_string(kEnumerationGuard) +
                         "; pass --allow-large to override");
    }
    if (enum_cmd->parsed() && word_length > kEnumerationGuard && !allow_large)
      throw UsageError("enumerate is limited to word length " + std::to_string(kEnumerationGuard) +
                       "; pass --allow-large to override");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, s.out, s.err);
    report_error(s, "error", e.what());
    s.err << kSynopsis;
    return kExitUsage;
  } catch (const UsageError& e) {
    report_error(s, "error", e.what());
    s.err << kSynopsis;
    return kExitUsage;
  }

  const std::size_t guard = allow_large ? std::numeric_limits<std::size_t>::max() : kEnumerationGuard;

  try {
    if (length_cmd->parsed()) {
      const auto word = CyclicWord::parse(word_text);
      s.out << format_length(geodesic_length(word, generator_matrices(*metric)).value) << '\n';
      return kExitOk;
    }

    if (count_cmd->parsed()) {
      s.out << (count_strings_flag ? count_strings(word_length) : count_classes(word_length)) << '\n';
      return kExitOk;
    }

    if (enum_cmd->parsed()) {
      ClassEnumerator classes(word_length, guard);
      const std::size_t cap = limit.value_or(std::numeric_limits<std::size_t>::max());
      if (format == "csv") {
        s.out << "word\n";
        for (std::size_t i = 0; i < cap; ++i) {
          auto w = classes.next();
          if (!w) break;
          s.out << w->str() << '\n';
        }
      } else {
        ordered_json words = ordered_json::array();
        for (std::size_t i = 0; i < cap; ++i) {
          auto w = classes.next();
          if (!w) break;
          words.push_back(w->str());
        }
        s.out << words.dump() << '\n';
      }
      return kExitOk;
    }

    if (sample_cmd->parsed()) {
      const LetterMatrices mats(generator_matrices(*metric));
      std::vector<std::string> words(samples);
      std::vector<double> values(samples);
      detail::run_chunked(samples, chunks, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          SplitMix64 rng(word_seed(seed, word_length, i));
          const CyclicWord w = sample_word(word_length, rng);
          words[i] = w.str();
          values[i] = geodesic_length(w, mats).value;
        }
      });
      if (format == "csv") {
        s.out << "word,length\n";
        for (std::size_t i = 0; i < samples; ++i) s.out << words[i] << ',' << format_decimal(values[i]) << '\n';
      } else {
        ordered_json j;
        j["config"] = {{"A", round_significant(metric->A)},
                       {"B", round_significant(metric->B)},
                       {"C", round_significant(metric->C)},
                       {"L", word_length},
                       {"N", samples},
                       {"seed", seed}};
        ordered_json list = ordered_json::array();
        for (std::size_t i = 0; i < samples; ++i)
          list.push_back({{"word", words[i]}, {"length", round_significant(values[i])}});
        j["words"] = std::move(list);
        s.out << j.dump() << '\n';
      }
      if (!dump_path.empty()) write_file(dump_path, [&](std::ostream& f) { write_lengths_csv(f, values); });
      return kExitOk;
    }

    if (run_cmd->parsed() || sweep_cmd->parsed()) {
      ExperimentConfig cfg;
      cfg.metric = *metric;
      cfg.L = word_length;
      cfg.N = samples ? samples : 100000;
      cfg.mode = *mode_from_string(mode_text);
      cfg.master_seed = seed;
      cfg.chunks = chunks;
      cfg.bin_width = bins;
      cfg.enumeration_guard = guard;

      if (run_cmd->parsed()) {
        const ExperimentResult r = pants::run(cfg);
        if (!svg_path.empty()) emit_svg(r.hist, svg_path, svg_title(r));
        if (!dump_path.empty())
          write_file(dump_path, [&](std::ostream& f) { write_lengths_csv(f, r.sample.values); });
        if (format == "csv")
          write_histogram_csv(s.out, r.hist);
        else
          s.out << to_json(r, timing).dump() << '\n';
        return kExitOk;
      }

      const auto results = pants::sweep(cfg, lengths);
      if (!svg_path.empty())
        for (const auto& r : results)
          emit_svg(r.hist, svg_path + "_L" + std::to_string(r.config.L) + ".svg", svg_title(r));
      if (format == "csv") {
        s.out << "L,N,mean,std,skewness,excess_kurtosis,ks,kappa_hat,sigma_hat,se_kappa,se_sigma,std_over_L\n";
        for (const auto& r : results) {
          s.out << r.config.L << ',' << r.sample.N();
          if (r.stats)
            for (double v : {r.stats->mean, r.stats->sample_std, r.stats->skewness, r.stats->excess_kurtosis,
                             r.stats->ks_statistic})
              s.out << ',' << format_decimal(v);
          else
            s.out << ",,,,,";
          for (double v : {r.scaling.kappa_hat, r.scaling.sigma_hat, r.scaling.se_kappa, r.scaling.se_sigma,
                           r.scaling.std_over_L})
            s.out << ',' << format_decimal(v);
          s.out << '\n';
        }
      } else {
        ordered_json arr = ordered_json::array();
        for (const auto& r : results) arr.push_back(to_json(r, timing));
        s.out << arr.dump() << '\n';
      }
      return kExitOk;
    }

    if (comb_cmd->parsed()) {
      std::ifstream in(input_path, std::ios::binary);
      if (!in) throw IoError("cannot open '" + input_path + "'");
      const Histogram h = read_histogram_csv(in);
      s.out << format_decimal(comb_score(h, spacing)) << '\n';
      return kExitOk;
    }
  } catch (const BadLetter& e) {
    report_error(s, "error", e.what());
    return kExitUsage;
  } catch (const EmptyWord& e) {
    report_error(s, "error", e.what());
    return kExitUsage;
  } catch (const NonReducedWord& e) {
    report_error(s, "error", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    report_error(s, "error", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

inline int run(const std::vector<std::string>& args, Streams s) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("pants-spectrum");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), s);
}

}  // namespace pants::cli
