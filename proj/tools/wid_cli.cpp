// wid: sample and verify weakly infinitely divisible laws on T, Delta_p, S_p.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "wid/io.hpp"
#include "wid/selftest.hpp"
#include "wid/verification.hpp"

namespace {

using wid::io::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string config;
  std::string out;
  std::string csv;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth;
  std::optional<double> tolerance_c;
  unsigned threads = 1;
  bool timing = false;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw wid::io::ConfigError("--out", "cannot write " + path);
  f << text;
}

void print_summary(const wid::VerificationReport& r) {
  std::fprintf(stderr, "%s on %s (p=%lld, depth=%d), N=%zu, seed=%llu, tol=%.4g\n", r.suite.c_str(), r.group.c_str(),
               static_cast<long long>(r.p), r.depth, r.samples, static_cast<unsigned long long>(r.seed),
               r.rows.empty() ? 0.0 : r.rows.front().tolerance);
  std::fprintf(stderr, "  %-12s %22s %22s %10s  %s\n", "character", "theory", "empirical", "abs_err", "");
  for (const auto& row : r.rows) {
    std::fprintf(stderr, "  %-12s %10.6f%+10.6fi %10.6f%+10.6fi %10.3g  %s\n", row.character.c_str(),
                 row.theory.real(), row.theory.imag(), row.empirical.real(), row.empirical.imag(), row.abs_error,
                 row.pass ? "ok" : "FAIL");
  }
  std::fprintf(stderr, "%s: %s (%.2f s)\n", r.suite.c_str(), r.overall_pass ? "PASS" : "FAIL", r.wall_time_s);
}

int emit_report(const wid::VerificationReport& r, const json& config, const Common& c) {
  json doc = wid::io::report_to_json(r, c.timing);
  doc["command"] = r.suite == "haar_demo" ? "haar-demo" : "verify";
  doc["config"] = config;
  write_text(c.out, doc.dump(2) + "\n");
  if (!c.csv.empty()) {
    std::ofstream f(c.csv, std::ios::binary);
    if (!f) throw wid::io::ConfigError("--csv", "cannot write " + c.csv);
    f << wid::io::report_to_csv(r);
  }
  print_summary(r);
  return r.overall_pass ? kExitPass : kExitFail;
}

wid::io::Overrides overrides(const Common& c) { return {c.samples, c.seed, c.depth, c.tolerance_c}; }

int cmd_verify(const Common& c) {
  const auto cfg = wid::io::load_config(c.config, overrides(c));
  wid::SuiteOptions opt = cfg.options;
  opt.threads = c.threads;
  const auto report = std::visit(
      [&](const auto& q) {
        using G = std::decay_t<decltype(q.group)>;
        return wid::run_suite(q, std::get<std::vector<wid::character_t<G>>>(cfg.characters), opt);
      },
      cfg.quadruplet);
  return emit_report(report, wid::io::config_to_json(cfg), c);
}

int cmd_sample(const Common& c, std::size_t count, const std::string& format) {
  const auto cfg = wid::io::load_config(c.config, overrides(c));
  const auto fmt = format == "jsonl" ? wid::io::SampleFormat::Jsonl : wid::io::SampleFormat::Csv;
  std::string text;
  std::visit(
      [&](const auto& q) {
        const auto sampler = wid::make_sampler(q);
        wid::RngStream rng(cfg.options.seed, 0);
        for (std::size_t i = 0; i < count; ++i) text += wid::io::format_sample(sampler(rng), fmt) + "\n";
      },
      cfg.quadruplet);
  write_text(c.out, text);
  return kExitPass;
}

int cmd_haar_demo(const Common& c, const std::string& group, std::int64_t p, int depth) {
  const wid::Prime prime = [&] {
    try {
      return wid::Prime(p);
    } catch (const wid::Error& e) {
      throw wid::io::ConfigError("--p", e.what());
    }
  }();
  if (depth < 0 || depth > 30) throw wid::io::ConfigError("--depth", "must lie in 0..30");
  wid::SuiteOptions opt;
  opt.samples = c.samples.value_or(100000);
  opt.seed = c.seed.value_or(0);
  opt.tolerance_c = c.tolerance_c.value_or(4.0);
  opt.threads = c.threads;
  if (opt.samples < 1) throw wid::io::ConfigError("--samples", "must be >= 1");
  wid::io::ExperimentConfig cfg{wid::TorusQuadruplet::dirac_identity(wid::TorusGroup{}),
                                std::vector<wid::TorusCharacter>{}, opt};
  wid::VerificationReport report;
  if (group == "padic") {
    const auto q = wid::fixtures::padic_haar(prime, depth);
    cfg.quadruplet = q;
    cfg.characters = wid::default_characters(q.group);
    report = wid::run_suite(q, wid::default_characters(q.group), opt);
  } else {
    const auto q = wid::fixtures::solenoid_haar(prime, depth);
    cfg.quadruplet = q;
    cfg.characters = wid::default_characters(q.group);
    report = wid::run_suite(q, wid::default_characters(q.group), opt);
  }
  report.suite = "haar_demo";
  return emit_report(report, wid::io::config_to_json(cfg), c);
}

int cmd_selftest(const Common& c, bool inject_fault) {
  wid::SelftestOptions opt;
  opt.suite.samples = c.samples.value_or(100000);
  opt.suite.seed = c.seed.value_or(0);
  opt.suite.tolerance_c = c.tolerance_c.value_or(4.0);
  opt.suite.threads = c.threads;
  opt.inject_arithmetic_fault = inject_fault;
  if (opt.suite.samples < 1) throw wid::io::ConfigError("--samples", "must be >= 1");
  const auto result = wid::run_selftest(opt);
  write_text(c.out, wid::io::selftest_to_json(result, opt.suite.seed, opt.suite.samples).dump(2) + "\n");
  for (const auto& check : result.checks) {
    std::fprintf(stderr, "  %-28s %s  %s\n", check.name.c_str(), check.pass ? "ok  " : "FAIL", check.detail.c_str());
  }
  std::fprintf(stderr, "selftest: %s\n", result.pass() ? "PASS" : "FAIL");
  return result.pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample and verify weakly infinitely divisible measures on the torus, "
               "the p-adic integers and the p-adic solenoid"};
  app.require_subcommand(1);

  Common c;
  const auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) sub->add_option("--config", c.config, "JSON experiment config")->required();
    sub->add_option("--out", c.out, "machine-readable output file (default stdout)");
    sub->add_option("--samples", c.samples, "Monte Carlo sample count N");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--tolerance-c", c.tolerance_c, "tolerance constant c in c/sqrt(N)");
    sub->add_option("--threads", c.threads, "worker threads for verification rows")->check(CLI::Range(1u, 256u));
  };

  auto* verify = app.add_subcommand("verify", "compare empirical and closed-form Fourier transforms");
  add_common(verify, true);
  verify->add_option("--depth", c.depth, "override the truncation depth");
  verify->add_option("--csv", c.csv, "also write the rows as CSV");
  verify->add_flag("--timing", c.timing, "include wall-clock time in the JSON report");

  std::size_t count = 10;
  std::string format = "csv";
  auto* sample = app.add_subcommand("sample", "write raw samples");
  add_common(sample, true);
  sample->add_option("--depth", c.depth, "override the truncation depth");
  sample->add_option("--count", count, "number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  std::string group = "solenoid";
  std::int64_t p = 2;
  int depth = 3;
  auto* haar = app.add_subcommand("haar-demo", "Haar constructions on Delta_p and S_p");
  add_common(haar, false);
  haar->add_option("--group", group, "padic or solenoid")->check(CLI::IsMember({"padic", "solenoid"}));
  haar->add_option("--p", p, "prime");
  haar->add_option("--depth", depth, "truncation depth");
  haar->add_option("--csv", c.csv, "also write the rows as CSV");
  haar->add_flag("--timing", c.timing, "include wall-clock time in the JSON report");

  bool inject_fault = false;
  auto* selftest = app.add_subcommand("selftest", "built-in oracle and structural checks");
  add_common(selftest, false);
  selftest->add_flag("--inject-fault", inject_fault, "negative control: break p-adic carry propagation")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(c);
    if (*sample) return cmd_sample(c, count, format);
    if (*haar) return cmd_haar_demo(c, group, p, depth);
    if (*selftest) return cmd_selftest(c, inject_fault);
  } catch (const wid::io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const wid::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
