#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "treecode/ecc.hpp"
#include "treecode/lagged.hpp"
#include "treecode/linear_code.hpp"
#include "treecode/pascal.hpp"
#include "treecode/pipeline.hpp"
#include "treecode/verify.hpp"

namespace treecode::cli {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

/// Opens --input / --output, with "-" or an empty path meaning the standard streams.
class Streams {
 public:
  Streams(std::istream& in, std::ostream& out) : in_(&in), out_(&out) {}

  std::istream& input(const std::string& path) {
    if (path.empty() || path == "-") return *in_;
    file_in_ = std::make_unique<std::ifstream>(path);
    if (!*file_in_) throw std::invalid_argument("cannot open input file '" + path + "'");
    return *file_in_;
  }

  std::ostream& output(const std::string& path) {
    if (path.empty() || path == "-") return *out_;
    file_out_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_out_) throw std::invalid_argument("cannot open output file '" + path + "'");
    return *file_out_;
  }

 private:
  std::istream* in_;
  std::ostream* out_;
  std::unique_ptr<std::ifstream> file_in_;
  std::unique_ptr<std::ofstream> file_out_;
};

struct Claim {
  Rational bound{0};
  bool strict = false;
  bool holds(const Rational& value) const { return strict ? value > bound : value >= bound; }
};

json report_json(const std::string& mode, const DistanceReport& report, const Claim& claim,
                 const std::vector<std::string>& names) {
  json j;
  j["mode"] = mode;
  j["value"] = to_string(report.value);
  j["claim"] = (claim.strict ? "> " : ">= ") + to_string(claim.bound);
  j["holds"] = claim.holds(report.value);
  j["space"] = report.space;
  j["pairs_examined"] = report.pairs_examined;
  if (report.witness) {
    const auto& w = *report.witness;
    const auto named = [&names](const std::vector<std::size_t>& idx) {
      json arr = json::array();
      for (auto i : idx) arr.push_back(i < names.size() ? names[i] : std::to_string(i));
      return arr;
    };
    j["witness"] = {{"x", named(w.x)},
                    {"y", named(w.y)},
                    {"split", w.split},
                    {"distance", w.distance},
                    {"denominator", w.denominator}};
  }
  return j;
}

std::vector<Integer> integer_range(std::size_t size) {
  std::vector<Integer> out;
  for (std::size_t v = 0; v < size; ++v) out.emplace_back(static_cast<unsigned long>(v));
  return out;
}

std::vector<std::string> integer_names(std::size_t size) {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < size; ++v) out.push_back(std::to_string(v));
  return out;
}

// ---- pascal / search-tns ------------------------------------------------

struct PascalOptions {
  std::size_t n = 0;
  bool check_tns = false;
  std::uint64_t budget = kDefaultMinorBudget;
};

int run_pascal(const PascalOptions& o, std::ostream& out) {
  const auto p = pascal_matrix(o.n);
  out << p.to_string();
  if (!o.check_tns) return kExitOk;
  const auto verdict = is_totally_nonsingular(p, o.budget);
  out << "tns: " << (verdict.totally_nonsingular ? "true" : "false") << '\n'
      << "minors_checked: " << verdict.minors_checked << '\n';
  if (verdict.witness) out << "witness: " << verdict.witness->to_string() << '\n';
  return verdict.totally_nonsingular ? kExitOk : kExitVerificationFailed;
}

struct SearchOptions {
  std::size_t n = 0;
  std::int64_t bound = 1;
  std::optional<std::uint64_t> seed;
  bool non_negative = false;
  std::uint64_t budget = TnsSearchOptions{}.candidate_budget;
  std::uint64_t trials = TnsSearchOptions{}.random_trials;
};

int run_search(const SearchOptions& o, std::ostream& out) {
  TnsSearchOptions opts;
  opts.seed = o.seed;
  opts.allow_negative = !o.non_negative;
  opts.candidate_budget = o.budget;
  opts.random_trials = o.trials;
  const auto found = search_tns(o.n, o.bound, opts);
  if (found) {
    out << found->to_string();
  } else {
    out << "none\n";
  }
  return kExitOk;
}

// ---- encode-int ---------------------------------------------------------

int run_encode_int(std::istream& in, std::ostream& out) {
  IntTreeEncoder enc;
  std::string line;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    const auto text = trim(line);
    if (text.empty()) continue;
    if (!std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
      throw std::invalid_argument("line " + std::to_string(index + 1) + ": expected a decimal natural, got '" +
                                  text + "'");
    }
    const auto pair = enc.push(Nat(text));
    ++index;
    out << json{{"i", index}, {"a", pair.a.get_str()}, {"b", pair.b.get_str()}}.dump() << '\n' << std::flush;
  }
  return kExitOk;
}

// ---- encode-chs ---------------------------------------------------------

struct ChsOptions {
  std::size_t n = 0;
  std::optional<std::string> eta;
  std::uint64_t seed = 0;
  std::string format = "auto";
};

int run_encode_chs(const ChsOptions& o, std::istream& in, std::ostream& out) {
  PipelineConfig config;
  if (o.eta) config = boosted_config(parse_rational(*o.eta), o.n);
  config.n = o.n;
  config.seed = o.seed;
  auto plan = std::make_shared<const PipelinePlan>(config);
  PipelineEncoder enc(plan);

  std::string format = o.format;
  const auto emit = [&](bool bit) {
    const auto symbol = enc.push(bit);
    const std::size_t i = enc.position();
    out << json{{"i", i}, {"symbol", symbol.serialize()}, {"gamma_bits", plan->alphabet_at(i).total_bits}}.dump()
        << '\n';
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    }
    if (text.empty()) continue;
    if (format == "auto") format = (text == "0" || text == "1") ? "bits" : "hex";
    if (format == "bits") {
      if (text != "0" && text != "1") {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected a single bit, got '" + text + "'");
      }
      emit(text == "1");
    } else {
      for (char c : text) {
        if (!std::isxdigit(static_cast<unsigned char>(c))) {
          throw std::invalid_argument("line " + std::to_string(line_no) + ": invalid hex digit '" +
                                      std::string(1, c) + "'");
        }
        const auto digit = BitString::from_hex(std::string(1, c), 4);
        for (std::size_t b = 0; b < 4; ++b) emit(digit[b]);
      }
    }
    out << std::flush;
  }
  return kExitOk;
}

// ---- schedule -----------------------------------------------------------

struct ScheduleOptions {
  std::size_t n = 0;
  std::size_t s_min = 16;
  std::size_t a = 6;
  std::string delta = "1/4";
  std::string recipe = "concat";
  std::uint64_t seed = 0;
};

int run_schedule(const ScheduleOptions& o, std::ostream& out) {
  const auto delta = parse_rational(o.delta);
  const auto recipe = parse_recipe(o.recipe);
  const auto schedule = build_schedule(o.n, o.s_min, o.a);
  out << "g\tell\ts\tfrom\tto\tc_delta\n";
  for (const auto& level : schedule.levels) {
    const auto code = build_code_c(level.s, delta, recipe, o.seed);
    out << level.g << '\t' << level.ell << '\t' << level.s << '\t' << level.ell << '\t' << level.covers_up_to << '\t'
        << code.c << '\n';
  }
  return kExitOk;
}

// ---- verify -------------------------------------------------------------

struct VerifyOptions {
  std::string mode;
  std::string code = "pascal";
  std::size_t k = 5;
  std::size_t range = 3;
  std::optional<std::size_t> s;
  std::size_t r = 1;
  std::size_t a = 4;
  std::string delta;
  bool untruncated = false;
  std::size_t min_lag = 0;
  std::size_t max_lag = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::uint64_t sigma = 0;
  std::uint64_t gamma = 0;
  unsigned q = 4;
  std::size_t d = 2;
};

int emit_report(std::ostream& out, const std::string& mode, const DistanceReport& report, const Claim& claim,
                const std::vector<std::string>& names) {
  out << report_json(mode, report, claim, names).dump() << '\n';
  return claim.holds(report.value) ? kExitOk : kExitVerificationFailed;
}

int verify_distance(const VerifyOptions& o, std::ostream& out) {
  if (o.code == "pascal") {
    auto p = std::make_shared<const LowerTriangularMatrix>(pascal_matrix(o.k == 0 ? 0 : o.k - 1));
    const auto report = tree_distance_exhaustive(TcAEncoder(p), integer_range(o.range), o.k);
    return emit_report(out, "distance", report, Claim{Rational(1, 2), true}, integer_names(o.range));
  }
  if (o.code == "boosted") {
    const std::size_t s = o.s.value_or(1);
    const BoostParams params{s, o.r};
    auto p = std::make_shared<const LowerTriangularMatrix>(pascal_matrix(params.block_width() * o.k));
    std::vector<IntegerVector> alphabet;
    std::vector<std::string> names;
    for (std::size_t v = 0; v < (std::size_t{1} << s); ++v) {
      IntegerVector block;
      for (std::size_t b = 0; b < s; ++b) block.emplace_back(static_cast<unsigned long>((v >> (s - 1 - b)) & 1u));
      alphabet.push_back(block);
      names.push_back(BitString::from_uint(v, s).to_string());
    }
    const auto report = tree_distance_exhaustive(TcASrEncoder(p, params), alphabet, o.k);
    const Rational bound(static_cast<std::int64_t>(o.r), static_cast<std::int64_t>(o.r + s));
    return emit_report(out, "distance", report, Claim{bound, true}, names);
  }
  throw std::invalid_argument("unknown code '" + o.code + "' (expected pascal or boosted)");
}

int verify_tilde(const VerifyOptions& o, std::ostream& out) {
  const auto report = weight_distance_linear(pascal_matrix(o.k == 0 ? 0 : o.k - 1), integer_range(o.range), o.k);
  return emit_report(out, "tilde", report, Claim{Rational(1, 2), true}, integer_names(o.range));
}

int verify_lagged(const VerifyOptions& o, std::ostream& out) {
  const std::size_t s = o.s.value_or(4);
  const Rational delta = o.delta.empty() ? Rational(1, 2) : parse_rational(o.delta);
  auto code = std::make_shared<const CodeSpecC>(build_code_c(s, delta, EccRecipe::RsOnly));
  auto params = std::make_shared<const LaggedParams>(LaggedParams::make(s, o.a, code));
  const LagRange lags{o.min_lag == 0 ? params->ell() : o.min_lag, o.max_lag == 0 ? s * s : o.max_lag};
  const std::vector<bool> bits{false, true};
  const Claim claim{params->distance_bound(), false};
  const std::vector<std::string> names{"0", "1"};
  DistanceReport report;
  if (o.untruncated) {
    report = o.samples > 0 ? lagged_distance_sampled(UntruncatedLaggedEncoder(params), bits, o.k, lags, o.seed, o.samples)
                           : lagged_distance_exhaustive(UntruncatedLaggedEncoder(params), bits, o.k, lags);
  } else {
    report = o.samples > 0 ? lagged_distance_sampled(TruncatedLaggedEncoder(params), bits, o.k, lags, o.seed, o.samples)
                           : lagged_distance_exhaustive(TruncatedLaggedEncoder(params), bits, o.k, lags);
  }
  return emit_report(out, "lagged", report, claim, names);
}

int verify_singleton(const VerifyOptions& o, std::ostream& out) {
  if (o.n == 0 || o.sigma < 2 || o.gamma < 2) throw std::invalid_argument("singleton needs --n >= 1, --sigma >= 2, --gamma >= 2");
  out << to_string(singleton_bound(o.n, o.sigma, o.gamma)) << '\n';
  return kExitOk;
}

int verify_toeplitz(const VerifyOptions& o, std::ostream& out) {
  const std::size_t n = o.n == 0 ? 6 : o.n;
  double r = 1;
  for (std::size_t i = 0; i < o.d; ++i) r *= o.q;
  const double delta = o.delta.empty() ? max_toeplitz_delta(o.q, r) : to_double(parse_rational(o.delta));
  if (!toeplitz_condition(o.q, r, delta)) {
    throw std::invalid_argument("delta " + std::to_string(delta) + " fails log_r(2q) + H_r(delta) <= 1");
  }
  const auto code = sample_toeplitz_code(o.q, o.d, n, o.seed);
  const auto report = weight_distance_toeplitz(code, n);
  json j = report_json("toeplitz", report, Claim{}, integer_names(o.q));
  const bool holds = to_double(report.value) > delta;
  j["claim"] = "> " + std::to_string(delta);
  j["holds"] = holds;
  out << j.dump() << '\n';
  return holds ? kExitOk : kExitVerificationFailed;
}

int run_verify(const VerifyOptions& o, std::ostream& out) {
  if (o.mode == "distance") return verify_distance(o, out);
  if (o.mode == "tilde") return verify_tilde(o, out);
  if (o.mode == "lagged") return verify_lagged(o, out);
  if (o.mode == "singleton") return verify_singleton(o, out);
  return verify_toeplitz(o, out);
}

// ---- ecc ----------------------------------------------------------------

struct EccOptions {
  std::size_t s = 0;
  std::string delta = "1/4";
  std::string recipe = "concat";
  std::uint64_t seed = 0;
};

int run_ecc_build(const EccOptions& o, std::ostream& out) {
  out << describe(build_code_c(o.s, parse_rational(o.delta), parse_recipe(o.recipe), o.seed));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit tree codes: construction, encoding and verification"};
  app.name("treecode");
  app.require_subcommand(1);
  std::string input_path;
  std::string output_path;

  const auto add_output = [&output_path](CLI::App* sub) {
    sub->add_option("--output", output_path, "Output file (default: standard output)");
  };

  PascalOptions pascal;
  auto* pascal_cmd = app.add_subcommand("pascal", "Print the Pascal matrix P_n (rows 0..n)");
  pascal_cmd->add_option("--n", pascal.n, "Matrix index n")->required();
  pascal_cmd->add_flag("--check-tns", pascal.check_tns, "Check every staircase minor");
  pascal_cmd->add_option("--budget", pascal.budget, "Maximum number of staircase minors");
  add_output(pascal_cmd);

  SearchOptions search;
  auto* search_cmd = app.add_subcommand("search-tns", "Search for a small-entry totally non-singular matrix");
  search_cmd->add_option("--n", search.n, "Matrix dimension")->required();
  search_cmd->add_option("--bound", search.bound, "Entry magnitude bound")->required()->check(CLI::PositiveNumber);
  search_cmd->add_option("--seed", search.seed, "Sample randomly with this seed instead of enumerating");
  search_cmd->add_flag("--non-negative", search.non_negative, "Only non-negative entries");
  search_cmd->add_option("--budget", search.budget, "Maximum candidates for exhaustive search");
  search_cmd->add_option("--trials", search.trials, "Sampled matrices in randomized mode");
  add_output(search_cmd);

  auto* encode_int_cmd = app.add_subcommand("encode-int", "Stream the integer tree code over decimal naturals");
  encode_int_cmd->add_option("--input", input_path, "Input file, one natural per line ('-' for stdin)")->required();
  add_output(encode_int_cmd);

  ChsOptions chs;
  auto* chs_cmd = app.add_subcommand("encode-chs", "Stream the binary tree code with polylog alphabets");
  chs_cmd->add_option("--n", chs.n, "Maximum input length")->required();
  chs_cmd->add_option("--eta", chs.eta, "Target distance in [0, 1), e.g. 1/2");
  chs_cmd->add_option("--seed", chs.seed, "Inner-code seed");
  chs_cmd->add_option("--format", chs.format, "Input format")->check(CLI::IsMember({"auto", "bits", "hex"}));
  chs_cmd->add_option("--input", input_path, "Input file ('-' for stdin)")->required();
  add_output(chs_cmd);

  ScheduleOptions sched;
  auto* sched_cmd = app.add_subcommand("schedule", "Print the level schedule for length n");
  sched_cmd->add_option("--n", sched.n, "Target length")->required();
  sched_cmd->add_option("--s-min", sched.s_min, "Smallest block size");
  sched_cmd->add_option("--a", sched.a, "Lag-to-block ratio");
  sched_cmd->add_option("--delta", sched.delta, "Block-code distance");
  sched_cmd->add_option("--recipe", sched.recipe, "Block-code recipe")->check(CLI::IsMember({"rs", "concat"}));
  sched_cmd->add_option("--seed", sched.seed, "Inner-code seed");
  add_output(sched_cmd);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Compute a distance report and check it against its claim");
  verify_cmd->add_option("--mode", verify.mode, "What to verify")
      ->required()
      ->check(CLI::IsMember({"distance", "tilde", "lagged", "singleton", "toeplitz"}));
  verify_cmd->add_option("--code", verify.code, "distance: pascal or boosted");
  verify_cmd->add_option("--k", verify.k, "Maximum input length");
  verify_cmd->add_option("--range", verify.range, "Input integers 0..range-1");
  verify_cmd->add_option("--s", verify.s, "Block size");
  verify_cmd->add_option("--r", verify.r, "Zeros per block (boosted code)");
  verify_cmd->add_option("--a", verify.a, "Lag-to-block ratio (lagged)");
  verify_cmd->add_option("--delta", verify.delta, "Block-code distance (lagged) or target (toeplitz)");
  verify_cmd->add_flag("--untruncated", verify.untruncated, "Use the untruncated lagged code");
  verify_cmd->add_option("--min-lag", verify.min_lag, "Smallest lag (default a*s)");
  verify_cmd->add_option("--max-lag", verify.max_lag, "Largest lag (default s^2)");
  verify_cmd->add_option("--samples", verify.samples, "Sample this many pairs instead of enumerating");
  verify_cmd->add_option("--seed", verify.seed, "Sampling or code seed");
  verify_cmd->add_option("--n", verify.n, "Length (singleton, toeplitz)");
  verify_cmd->add_option("--sigma", verify.sigma, "Input alphabet size (singleton)");
  verify_cmd->add_option("--gamma", verify.gamma, "Output alphabet size (singleton)");
  verify_cmd->add_option("--q", verify.q, "Field size (toeplitz)");
  verify_cmd->add_option("--d", verify.d, "Coordinates per output (toeplitz)");
  add_output(verify_cmd);

  EccOptions ecc;
  auto* ecc_cmd = app.add_subcommand("ecc", "Block-code utilities");
  ecc_cmd->require_subcommand(1);
  auto* ecc_build = ecc_cmd->add_subcommand("build", "Build and describe the block code");
  ecc_build->add_option("--s", ecc.s, "Block size")->required();
  ecc_build->add_option("--delta", ecc.delta, "Target distance");
  ecc_build->add_option("--recipe", ecc.recipe, "rs or concat")->check(CLI::IsMember({"rs", "concat"}));
  ecc_build->add_option("--seed", ecc.seed, "Inner-code seed");
  add_output(ecc_build);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    Streams streams(in, out);
    std::ostream& sink = streams.output(output_path);
    int code = kExitOk;
    if (*pascal_cmd) {
      code = run_pascal(pascal, sink);
    } else if (*search_cmd) {
      code = run_search(search, sink);
    } else if (*encode_int_cmd) {
      code = run_encode_int(streams.input(input_path), sink);
    } else if (*chs_cmd) {
      code = run_encode_chs(chs, streams.input(input_path), sink);
    } else if (*sched_cmd) {
      code = run_schedule(sched, sink);
    } else if (*verify_cmd) {
      code = run_verify(verify, sink);
    } else if (*ecc_build) {
      code = run_ecc_build(ecc, sink);
    }
    sink.flush();
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace treecode::cli
