// qfdiv: divergence computations on explicit matrix pairs, convergence
// sweeps, reverse-test extraction, and the randomized property suites.
//
// Exit codes: 0 success, 1 property violation, 2 input error, 3 numeric
// failure. Output is byte-deterministic for a fixed command line and seed.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfdiv/divergences.hpp"
#include "qfdiv/json_io.hpp"
#include "qfdiv/propsuite.hpp"
#include "qfdiv/reverse_test.hpp"

namespace {

using namespace qfdiv;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw SchemaError("cannot open output file: " + out_path);
  out << text;
  if (!out) throw SchemaError("cannot write output file: " + out_path);
}

std::uint64_t default_seed() {
  const char* env = std::getenv("QFDIV_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw SchemaError("QFDIV_SEED must be an unsigned integer");
  }
  return static_cast<std::uint64_t>(v);
}

PairInput load_pair(const std::string& path, int max_dim) {
  PairInput pair = parse_pair_json(read_file(path));
  if (pair.rho.dim() > max_dim) {
    throw SchemaError("pair dimension " + std::to_string(pair.rho.dim()) +
                      " exceeds --dims limit " + std::to_string(max_dim));
  }
  return pair;
}

std::string extended_text(const ExtendedReal& v) {
  return v.is_infinite() ? std::string("\"inf\"") : format_double(v.value());
}

// Difference b - a of chain-ordered extended values (a <= b expected).
ExtendedReal extended_gap(const ExtendedReal& a, const ExtendedReal& b) {
  if (b.is_infinite()) {
    return a.is_infinite() ? ExtendedReal(0.0) : ExtendedReal::infinity();
  }
  if (a.is_infinite()) {
    throw NumericError("gap: lower chain member infinite, upper finite");
  }
  return ExtendedReal(b.value() - a.value());
}

struct CommonFlags {
  std::string input;
  std::string f_spec = "xlogx";
  std::string out_path;
  std::string format = "json";
  int max_dim = 8;
};

void add_pair_flags(CLI::App* cmd, CommonFlags* flags, bool with_f) {
  cmd->add_option("input", flags->input, "pair JSON file")->required();
  if (with_f) {
    cmd->add_option("--f", flags->f_spec,
                    "function: builtin name or JSON spec");
  }
  cmd->add_option("--out", flags->out_path, "output file (default stdout)");
  cmd->add_option("--format", flags->format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--dims", flags->max_dim,
                  "reject pairs larger than this dimension")
      ->check(CLI::PositiveNumber);
}

int run_compute(const CommonFlags& flags, const std::string& which_arg) {
  const PairInput pair = load_pair(flags.input, flags.max_dim);
  const OperatorConvexFunction f = parse_function_spec(flags.f_spec);
  std::vector<std::string> which;
  std::stringstream ss(which_arg);
  std::string item;
  while (std::getline(ss, item, ',')) which.push_back(item);
  if (which.empty()) throw SchemaError("--which: empty");

  std::vector<std::pair<std::string, DivergenceReport>> reports;
  for (const auto& name : which) {
    if (name == "standard") {
      reports.emplace_back(name, standard_f_divergence(pair.rho, pair.sigma, f));
    } else if (name == "maximal") {
      reports.emplace_back(name, maximal_f_divergence(pair.rho, pair.sigma, f));
    } else if (name == "bs") {
      DivergenceReport rep = maximal_f_divergence(
          pair.rho, pair.sigma, OperatorConvexFunction::xlogx());
      rep.method = "bs";
      reports.emplace_back(name, std::move(rep));
    } else {
      throw SchemaError("--which: unknown divergence \"" + name +
                        "\" (standard, maximal, bs)");
    }
  }

  std::string text;
  if (flags.format == "csv") {
    std::vector<SequenceRow> rows;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      rows.push_back({static_cast<int>(i), reports[i].first,
                      reports[i].second.value});
    }
    text = emit_sequence_csv(rows);
  } else if (reports.size() == 1) {
    text = emit_report_json(reports[0].second);
  } else {
    text = "{";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) text += ',';
      text += '"' + reports[i].first + "\":";
      std::string one = emit_report_json(reports[i].second);
      one.pop_back();  // trailing newline
      text += one;
    }
    text += "}\n";
  }
  write_output(flags.out_path, text);
  return kExitOk;
}

int run_compare(const CommonFlags& flags, std::uint64_t seed, double tol) {
  const PairInput pair = load_pair(flags.input, flags.max_dim);
  const OperatorConvexFunction f = parse_function_spec(flags.f_spec);
  const bool comm = commutes(pair.rho, pair.sigma, tol);
  const MeasuredEstimate measured =
      measured_estimate(pair.rho, pair.sigma, f, 12, 60, seed);
  const ExtendedReal standard =
      standard_f_divergence(pair.rho, pair.sigma, f).value;
  const ExtendedReal maximal =
      maximal_f_divergence(pair.rho, pair.sigma, f).value;

  std::string text;
  if (flags.format == "csv") {
    text = emit_sequence_csv({{0, "measured", measured.value},
                              {1, "standard", standard},
                              {2, "maximal", maximal}});
  } else {
    text = "{\"commutes\":";
    text += comm ? "true" : "false";
    text += ",\"measured\":" + extended_text(measured.value);
    text += ",\"standard\":" + extended_text(standard);
    text += ",\"maximal\":" + extended_text(maximal);
    text += ",\"gap_standard_measured\":" +
            extended_text(extended_gap(measured.value, standard));
    text += ",\"gap_maximal_standard\":" +
            extended_text(extended_gap(standard, maximal));
    text += "}\n";
  }
  write_output(flags.out_path, text);
  return kExitOk;
}

int run_renyi(const CommonFlags& flags, double alpha,
              const std::string& variant) {
  const PairInput pair = load_pair(flags.input, flags.max_dim);
  std::vector<std::pair<std::string, RenyiVariant>> wanted;
  if (variant == "standard" || variant == "all") {
    wanted.emplace_back("standard", RenyiVariant::standard);
  }
  if (variant == "sandwiched" || variant == "all") {
    wanted.emplace_back("sandwiched", RenyiVariant::sandwiched);
  }
  if (variant == "maximal" || variant == "all") {
    wanted.emplace_back("maximal", RenyiVariant::maximal);
  }
  if (wanted.empty()) {
    throw SchemaError("--variant: expected standard, sandwiched, maximal, or all");
  }
  std::vector<std::pair<std::string, ExtendedReal>> values;
  for (const auto& [name, v] : wanted) {
    values.emplace_back(name, renyi(pair.rho, pair.sigma, alpha, v));
  }
  std::string text;
  if (flags.format == "csv") {
    std::vector<SequenceRow> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
      rows.push_back({static_cast<int>(i), values[i].first, values[i].second});
    }
    text = emit_sequence_csv(rows);
  } else {
    text = "{\"alpha\":" + format_double(alpha);
    for (const auto& [name, v] : values) {
      text += ",\"" + name + "\":" + extended_text(v);
    }
    text += "}\n";
  }
  write_output(flags.out_path, text);
  return kExitOk;
}

int run_sweep_eps(const CommonFlags& flags, const std::string& schedule_arg,
                  const std::string& variant) {
  const PairInput pair = load_pair(flags.input, flags.max_dim);
  const OperatorConvexFunction f = parse_function_spec(flags.f_spec);
  const std::vector<double> schedule = parse_schedule(schedule_arg);
  EpsMode mode;
  if (variant == "add_eta") {
    mode = EpsMode::add_eta;
  } else if (variant == "add_sigma") {
    mode = EpsMode::add_sigma;
  } else if (variant == "add_rho") {
    mode = EpsMode::add_rho;
  } else {
    throw SchemaError("--variant: expected add_eta, add_sigma, or add_rho");
  }
  const std::vector<ExtendedReal> vals =
      eps_regularized_maximal(pair.rho, pair.sigma, f, schedule, mode);
  std::vector<SequenceRow> rows;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    rows.push_back({static_cast<int>(i), format_double(schedule[i]), vals[i]});
  }
  write_output(flags.out_path, flags.format == "csv"
                                   ? emit_sequence_csv(rows)
                                   : emit_sequence_json(rows));
  return kExitOk;
}

int run_martingale(const CommonFlags& flags, const std::string& chain_arg,
                   const std::string& variant) {
  const PairInput pair = load_pair(flags.input, flags.max_dim);
  const OperatorConvexFunction f = parse_function_spec(flags.f_spec);
  if (chain_arg.empty()) throw SchemaError("--chain is required");
  std::vector<SequenceRow> rows;
  if (variant == "pinching") {
    const std::vector<Partition> chain = parse_partition_chain(chain_arg);
    const std::vector<ExtendedReal> vals =
        martingale_sequence(pair.rho, pair.sigma, f, chain);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      rows.push_back({static_cast<int>(i),
                      std::to_string(chain[i].size()), vals[i]});
    }
  } else if (variant == "compression") {
    const std::vector<std::vector<int>> chain = parse_index_chain(chain_arg);
    const std::vector<ExtendedReal> vals =
        compression_sequence(pair.rho, pair.sigma, f, chain);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      rows.push_back({static_cast<int>(i),
                      std::to_string(chain[i].size()), vals[i]});
    }
  } else {
    throw SchemaError("--variant: expected pinching or compression");
  }
  write_output(flags.out_path, flags.format == "csv"
                                   ? emit_sequence_csv(rows)
                                   : emit_sequence_json(rows));
  return kExitOk;
}

int run_reverse_test(const CommonFlags& flags, double tol) {
  const PairInput pair = load_pair(flags.input, flags.max_dim);
  if (flags.format == "csv") {
    throw SchemaError("reverse-test: only json output is defined");
  }
  const ReverseTest rt = minimal_reverse_test(pair.rho, pair.sigma);
  const ReverseTestCheck check =
      verify_reverse_test(rt, pair.rho, pair.sigma, tol);
  if (!check.pass) {
    throw NumericError("reverse-test: reconstruction residual exceeds tolerance");
  }
  write_output(flags.out_path, emit_reverse_test_json(rt));
  return kExitOk;
}

int run_propcheck(const std::string& suite, int trials, std::uint64_t seed,
                  const std::string& out_path) {
  std::vector<SuiteResult> results;
  if (suite == "all") {
    results = run_all_properties(trials, seed);
  } else {
    results.push_back(run_property(suite, trials, seed));
  }
  std::string text = "seed=" + std::to_string(seed) +
                     " trials=" + std::to_string(trials) + "\n";
  bool all_pass = true;
  for (const auto& r : results) {
    text += r.property + (r.pass() ? " PASS " : " FAIL ") + r.summary +
            ": checks=" + std::to_string(r.checks) +
            " violations=" + std::to_string(r.violations);
    if (!r.pass()) {
      text += " worst_excess=" + format_double(r.worst_excess);
    }
    text += "\n";
    for (const auto& detail : r.failures) {
      text += "  " + detail + "\n";
    }
    all_pass = all_pass && r.pass();
  }
  write_output(out_path, text);
  return all_pass ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Standard and maximal f-divergences of positive matrix pairs: "
      "values, Renyi variants, convergence sweeps, reverse tests, and "
      "randomized property suites."};
  app.require_subcommand(1);
  std::function<int()> job;

  CommonFlags compute_flags;
  std::string which = "maximal";
  CLI::App* compute = app.add_subcommand("compute", "divergence values");
  add_pair_flags(compute, &compute_flags, true);
  compute->add_option("--which", which,
                      "comma list from standard, maximal, bs");
  compute->callback([&] { job = [&] { return run_compute(compute_flags, which); }; });

  CommonFlags compare_flags;
  std::uint64_t compare_seed = 0;
  double compare_tol = 1e-10;
  CLI::App* compare =
      app.add_subcommand("compare", "measured <= standard <= maximal chain");
  add_pair_flags(compare, &compare_flags, true);
  compare->add_option("--seed", compare_seed, "measurement search seed");
  compare->add_option("--tol", compare_tol, "commutation tolerance");
  compare->callback([&] {
    job = [&] {
      return run_compare(compare_flags,
                         compare->count("--seed") ? compare_seed
                                                  : default_seed(),
                         compare_tol);
    };
  });

  CommonFlags renyi_flags;
  double alpha = 2.0;
  std::string renyi_variant = "all";
  CLI::App* renyi_cmd = app.add_subcommand("renyi", "Renyi divergences");
  add_pair_flags(renyi_cmd, &renyi_flags, false);
  renyi_cmd->add_option("--alpha", alpha, "order, in (0,1) or (1,inf)")
      ->required();
  renyi_cmd->add_option("--variant", renyi_variant,
                        "standard, sandwiched, maximal, or all");
  renyi_cmd->callback([&] {
    job = [&] { return run_renyi(renyi_flags, alpha, renyi_variant); };
  });

  CommonFlags sweep_flags;
  std::string schedule = "2^-4..2^-20";
  std::string sweep_variant = "add_eta";
  CLI::App* sweep = app.add_subcommand(
      "sweep-eps", "regularized maximal divergence along an epsilon schedule");
  add_pair_flags(sweep, &sweep_flags, true);
  sweep->add_option("--schedule", schedule,
                    "2^-A..2^-B or comma list, positive decreasing");
  sweep->add_option("--variant", sweep_variant,
                    "add_eta, add_sigma, or add_rho");
  sweep->callback([&] {
    job = [&] { return run_sweep_eps(sweep_flags, schedule, sweep_variant); };
  });

  CommonFlags mart_flags;
  std::string chain;
  std::string mart_variant = "pinching";
  CLI::App* mart = app.add_subcommand(
      "martingale", "divergences along a coarsening or growing chain");
  add_pair_flags(mart, &mart_flags, true);
  mart->add_option("--chain", chain,
                   "JSON: partitions (pinching) or index sets (compression)")
      ->required();
  mart->add_option("--variant", mart_variant, "pinching or compression");
  mart->callback([&] {
    job = [&] { return run_martingale(mart_flags, chain, mart_variant); };
  });

  CommonFlags rt_flags;
  double rt_tol = 1e-8;
  CLI::App* rt = app.add_subcommand(
      "reverse-test", "minimal classical reverse test of a pair");
  add_pair_flags(rt, &rt_flags, false);
  rt->add_option("--tol", rt_tol, "reconstruction residual tolerance");
  rt->callback([&] { job = [&] { return run_reverse_test(rt_flags, rt_tol); }; });

  std::string suite = "all";
  int trials = 100;
  std::uint64_t prop_seed = 0;
  std::string prop_out;
  CLI::App* prop = app.add_subcommand("propcheck", "randomized property suites");
  prop->add_option("--suite", suite, "all or one of P1..P10");
  prop->add_option("--trials", trials, "trials per property")
      ->check(CLI::PositiveNumber);
  prop->add_option("--seed", prop_seed, "base seed");
  prop->add_option("--out", prop_out, "output file (default stdout)");
  prop->callback([&] {
    job = [&] {
      return run_propcheck(suite, trials,
                           prop->count("--seed") ? prop_seed : default_seed(),
                           prop_out);
    };
  });

  try {
    app.parse(argc, argv);
    return job();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  }
}
