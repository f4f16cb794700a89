#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wid/fixtures.hpp"
#include "wid/verification.hpp"

namespace wid {

struct SelftestCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestResult {
  std::vector<SelftestCheck> checks;
  std::vector<VerificationReport> reports;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

struct SelftestOptions {
  SuiteOptions suite;
  std::size_t oracle_trials = 10000;
  std::size_t grid_size = 1000;
  /// Negative control: replaces padic_add with a version that drops carries.
  bool inject_arithmetic_fault = false;
};

inline PadicInt padic_add_without_carry(const PadicInt& x, const PadicInt& y) {
  std::vector<int> z(x.digit_count());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = (x.digit(j) + y.digit(j)) % static_cast<int>(x.prime().value());
  return PadicInt(x.prime(), std::move(z));
}

/// Oracle arithmetic, the comparison inequality, depth compatibility for
/// n = 1, 2, 3 and 4-fold divisibility on the built-in fixtures. Each suite
/// derives its seed from opt.suite.seed so that the checks are independent.
inline SelftestResult run_selftest(const SelftestOptions& opt) {
  SelftestResult out;
  std::uint64_t salt = 0;
  const auto suite_options = [&] {
    SuiteOptions s = opt.suite;
    s.seed = opt.suite.seed * 1000003ULL + (++salt);
    return s;
  };

  {
    PadicOps ops;
    if (opt.inject_arithmetic_fault) ops.add = padic_add_without_carry;
    const OracleResult r = oracle_padic_arithmetic(opt.oracle_trials, opt.suite.seed, ops);
    out.checks.push_back({"padic_arithmetic_oracle", r.pass(),
                          std::to_string(r.mismatches) + " mismatches in " + std::to_string(r.cases) + " cases"});
  }

  const auto record_inequality = [&](const std::string& name, const std::vector<InequalityResult>& rs) {
    std::size_t failed = 0;
    for (const auto& r : rs) failed += r.pass ? 0 : 1;
    out.checks.push_back({name, failed == 0, std::to_string(failed) + " of " + std::to_string(rs.size()) +
                                                 " characters violate the bounds"});
  };
  record_inequality("compare_inequality_torus",
                    check_compare_inequality(TorusGroup{}, default_characters(TorusGroup{}), opt.grid_size));
  const SolenoidGroup sol{Prime(2), 3};
  record_inequality("compare_inequality_solenoid",
                    check_compare_inequality(sol, default_characters(sol), opt.grid_size));

  const auto record = [&](const std::string& name, VerificationReport r) {
    std::size_t failed = 0;
    for (const auto& row : r.rows) failed += row.pass ? 0 : 1;
    out.checks.push_back({name, r.overall_pass, std::to_string(failed) + " of " + std::to_string(r.rows.size()) +
                                                    " rows outside tolerance"});
    r.suite = name;
    out.reports.push_back(std::move(r));
  };

  const auto padic = fixtures::padic_poisson(Prime(3), 4);
  const auto solenoid = fixtures::solenoid_poisson(Prime(2), 4);
  for (int n = 1; n <= 3; ++n) {
    record("compatibility_padic_n" + std::to_string(n), check_compatibility(padic, n, suite_options()));
    record("compatibility_solenoid_n" + std::to_string(n), check_compatibility(solenoid, n, suite_options()));
  }

  record("divisibility_torus", check_divisibility(fixtures::torus_gauss_poisson(1.0), 4, suite_options()));
  record("divisibility_padic", check_divisibility(fixtures::padic_poisson(Prime(3), 3), 4, suite_options()));
  record("divisibility_solenoid",
         check_divisibility(fixtures::solenoid_gauss_poisson(Prime(2), 3, 1.0), 4, suite_options()));
  return out;
}

}  // namespace wid
