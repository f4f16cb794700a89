#pragma once

// Monte Carlo and exact checks: empirical characteristic functions compared
// against closed-form transforms, depth compatibility of the lattice
// constructions, divisibility, the local-inner-product comparison inequality,
// and a big-integer oracle for p-adic arithmetic.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "wid/duality.hpp"
#include "wid/group.hpp"
#include "wid/measure.hpp"
#include "wid/random.hpp"
#include "wid/samplers.hpp"

namespace wid {

struct ComparisonRow {
  std::string character;
  Complex theory;
  Complex empirical;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

inline ComparisonRow make_row(std::string character, Complex theory, Complex empirical, double tolerance) {
  const double err = std::abs(theory - empirical);
  return {std::move(character), theory, empirical, err, tolerance, err <= tolerance};
}

struct VerificationReport {
  std::string suite;
  std::string group;
  std::int64_t p = 0;  // 0 on the torus
  int depth = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tolerance_c = 4.0;
  std::vector<ComparisonRow> rows;
  bool overall_pass = true;
  double wall_time_s = 0.0;

  void finalize() {
    overall_pass = true;
    for (const auto& r : rows) overall_pass = overall_pass && r.pass;
  }
};

struct SuiteOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  double tolerance_c = 4.0;
  unsigned threads = 1;

  double tolerance() const { return tolerance_c / std::sqrt(static_cast<double>(samples)); }
};

/// (1/N) sum chi(X_i) over N draws of `sampler`.
template <class Sampler, class Character>
Complex empirical_cf(const Sampler& sampler, const Character& chi, std::size_t n, RngStream& rng) {
  if (n == 0) throw Error("empirical_cf requires N >= 1");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += eval_char(chi, sampler(rng));
  return acc / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Character sets

inline std::vector<TorusCharacter> default_characters(const TorusGroup&) {
  std::vector<TorusCharacter> out;
  for (std::int64_t l = -8; l <= 8; ++l) out.push_back({l});
  return out;
}

/// All (d, l) with d <= min(3, depth) and 0 <= l < p^{d+1}.
inline std::vector<PadicCharacter> default_characters(const PadicGroup& g) {
  std::vector<PadicCharacter> out;
  for (int d = 0; d <= std::min(3, g.depth); ++d) {
    const std::int64_t m = checked_pow(g.p.value(), d + 1);
    for (std::int64_t l = 0; l < m; ++l) out.push_back({d, l});
  }
  return out;
}

/// (d, l) with d <= min(3, depth) and |l| <= 8.
inline std::vector<SolenoidCharacter> default_characters(const SolenoidGroup& g) {
  std::vector<SolenoidCharacter> out;
  for (int d = 0; d <= std::min(3, g.depth); ++d) {
    for (std::int64_t l = -8; l <= 8; ++l) out.push_back({d, l});
  }
  return out;
}

inline int character_depth(const TorusCharacter&) { return 0; }
inline int character_depth(const PadicCharacter& c) { return c.depth; }
inline int character_depth(const SolenoidCharacter& c) { return c.depth; }

inline std::int64_t group_prime(const TorusGroup&) { return 0; }
inline std::int64_t group_prime(const PadicGroup& g) { return g.p.value(); }
inline std::int64_t group_prime(const SolenoidGroup& g) { return g.p.value(); }
inline int group_depth(const TorusGroup&) { return 0; }
inline int group_depth(const PadicGroup& g) { return g.depth; }
inline int group_depth(const SolenoidGroup& g) { return g.depth; }

namespace detail {

/// Evaluates fn(0..count-1) on up to `threads` workers. Each row owns its RNG
/// stream, so the result does not depend on scheduling.
template <class Fn>
void for_each_row(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(count));
  for (unsigned w = 0; w < n; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += n) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

template <class G>
VerificationReport report_header(std::string suite, const G& g, const SuiteOptions& opt) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.group = G::name;
  r.p = group_prime(g);
  r.depth = group_depth(g);
  r.samples = opt.samples;
  r.seed = opt.seed;
  r.tolerance_c = opt.tolerance_c;
  return r;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void require_valid(const SuiteOptions& opt) {
  if (opt.samples == 0) throw Error("sample count must be >= 1");
  if (!(opt.tolerance_c > 0.0)) throw Error("tolerance constant must be positive");
}

template <class G>
void require_depth(const G& g, const std::vector<character_t<G>>& chars) {
  for (const auto& c : chars) {
    if (character_depth(c) > group_depth(g)) {
      throw Error("character " + to_string(c) + " is deeper than the truncation depth " +
                  std::to_string(group_depth(g)));
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites

/// Compares the empirical characteristic function of the quadruplet sampler
/// with ft_quadruplet at every character. Row k uses stream k of `seed`.
template <class G>
VerificationReport run_suite(const Quadruplet<G>& q, const std::vector<character_t<G>>& chars,
                             const SuiteOptions& opt) {
  detail::Stopwatch clock;
  detail::require_valid(opt);
  validate_quadruplet(q);
  detail::require_depth(q.group, chars);
  const WidSampler<G> sampler(q);
  VerificationReport report = detail::report_header("run_suite", q.group, opt);
  report.rows.resize(chars.size());
  detail::for_each_row(chars.size(), opt.threads, [&](std::size_t k) {
    RngStream rng(opt.seed, k);
    report.rows[k] = make_row(to_string(chars[k]), ft_quadruplet(q, chars[k]),
                              empirical_cf(sampler, chars[k], opt.samples, rng), opt.tolerance());
  });
  report.finalize();
  report.wall_time_s = clock.seconds();
  return report;
}

/// Samplers truncated at depths n and n+1 must both reproduce the closed form
/// at every character both can see (depth <= n).
template <class G>
VerificationReport check_compatibility(const Quadruplet<G>& q, int n, const SuiteOptions& opt) {
  static_assert(!std::is_same_v<G, TorusGroup>, "compatibility concerns the lattice constructions");
  detail::Stopwatch clock;
  detail::require_valid(opt);
  validate_quadruplet(q);
  if (n < 0 || n + 1 > q.group.depth) throw Error("compatibility check needs 0 <= n and n+1 <= depth");
  const WidSampler<G> shallow(q, n);
  const WidSampler<G> deep(q, n + 1);
  std::vector<character_t<G>> chars;
  for (const auto& c : default_characters(q.group)) {
    if (character_depth(c) <= n) chars.push_back(c);
  }
  VerificationReport report = detail::report_header("compatibility", q.group, opt);
  report.rows.resize(2 * chars.size());
  detail::for_each_row(report.rows.size(), opt.threads, [&](std::size_t k) {
    const auto& chi = chars[k / 2];
    const bool at_deep = (k % 2) == 1;
    RngStream rng(opt.seed, k);
    const Complex emp = at_deep ? empirical_cf(deep, chi, opt.samples, rng)
                                : empirical_cf(shallow, chi, opt.samples, rng);
    report.rows[k] = make_row(to_string(chi) + "@depth" + std::to_string(at_deep ? n + 1 : n),
                              ft_quadruplet(q, chi), emp, opt.tolerance());
  });
  report.finalize();
  report.wall_time_s = clock.seconds();
  return report;
}

namespace detail {

template <class G>
bool is_centered(const Quadruplet<G>& q) {
  return q.H.is_trivial() && q.group.is_identity(q.a);
}

/// Sum of n independent draws from `part`.
template <class G>
class ConvolutionPower {
 public:
  ConvolutionPower(const Quadruplet<G>& part, int n) : sampler_(part), n_(n) {}

  typename G::Element operator()(RngStream& rng) const {
    auto x = sampler_(rng);
    for (int i = 1; i < n_; ++i) x = sampler_.group().combine(x, sampler_(rng));
    return x;
  }

 private:
  WidSampler<G> sampler_;
  int n_;
};

}  // namespace detail

/// The n-fold convolution of the law with parameters (b/n, eta/n) must
/// reproduce the transform of (b, eta).
template <class G>
VerificationReport check_divisibility(const Quadruplet<G>& q, int n, const std::vector<character_t<G>>& chars,
                                      const SuiteOptions& opt) {
  detail::Stopwatch clock;
  detail::require_valid(opt);
  validate_quadruplet(q);
  if (!detail::is_centered(q)) throw Error("divisibility check requires centered measure");
  if (n < 2) throw Error("divisibility check requires n >= 2");
  detail::require_depth(q.group, chars);
  Quadruplet<G> part = q;
  part.b = q.b / n;
  part.eta = q.eta.scaled(1.0 / n);
  const detail::ConvolutionPower<G> sampler(part, n);
  VerificationReport report = detail::report_header("divisibility", q.group, opt);
  report.rows.resize(chars.size());
  detail::for_each_row(chars.size(), opt.threads, [&](std::size_t k) {
    RngStream rng(opt.seed, k);
    report.rows[k] = make_row(to_string(chars[k]), ft_quadruplet(q, chars[k]),
                              empirical_cf(sampler, chars[k], opt.samples, rng), opt.tolerance());
  });
  report.finalize();
  report.wall_time_s = clock.seconds();
  return report;
}

template <class G>
VerificationReport check_divisibility(const Quadruplet<G>& q, int n, const SuiteOptions& opt) {
  return check_divisibility(q, n, default_characters(q.group), opt);
}

/// Compares the empirical transform of the group product of independent
/// draws from q1 and q2 with ft(q1) * ft(q2).
template <class G>
VerificationReport check_convolution(const Quadruplet<G>& q1, const Quadruplet<G>& q2,
                                     const std::vector<character_t<G>>& chars, const SuiteOptions& opt) {
  detail::Stopwatch clock;
  detail::require_valid(opt);
  const WidSampler<G> s1(q1);
  const WidSampler<G> s2(q2);
  if (!(s1.group() == s2.group())) throw Error("convolution operands live on different groups");
  detail::require_depth(q1.group, chars);
  const auto product = [&](RngStream& rng) {
    auto x = s1(rng);
    return s1.group().combine(x, s2(rng));
  };
  VerificationReport report = detail::report_header("convolution", q1.group, opt);
  report.rows.resize(chars.size());
  detail::for_each_row(chars.size(), opt.threads, [&](std::size_t k) {
    RngStream rng(opt.seed, k);
    report.rows[k] = make_row(to_string(chars[k]), ft_quadruplet(q1, chars[k]) * ft_quadruplet(q2, chars[k]),
                              empirical_cf(product, chars[k], opt.samples, rng), opt.tolerance());
  });
  report.finalize();
  report.wall_time_s = clock.seconds();
  return report;
}

// ---------------------------------------------------------------------------
// Comparison inequality  g^2/4 <= 1 - Re chi(x) <= g^2/2  near the identity

struct InequalityResult {
  std::string character;
  double radius = 0.0;          // half-width of the sampled neighbourhood in arg x_0
  double worst_lower = 0.0;     // min over grid of (1 - Re chi) - g^2/4
  double worst_upper = 0.0;     // min over grid of g^2/2 - (1 - Re chi)
  bool pass = false;
};

inline constexpr double kInequalitySlack = 1e-12;

namespace detail {

template <class Point, class G, class Character>
InequalityResult inequality_on_grid(const G& g, const Character& chi, double radius, std::size_t grid_size,
                                    const std::function<Point(double)>& point_at) {
  InequalityResult out{to_string(chi), radius, INFINITY, INFINITY, true};
  const auto visit = [&](const Point& x) {
    const double gv = local_inner_product(g, x, chi);
    const double gap = 1.0 - eval_char(chi, x).real();
    out.worst_lower = std::min(out.worst_lower, gap - 0.25 * gv * gv);
    out.worst_upper = std::min(out.worst_upper, 0.5 * gv * gv - gap);
  };
  visit(point_at(0.0));
  const double step = 2.0 * radius / static_cast<double>(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) visit(point_at(-radius + (static_cast<double>(k) + 0.5) * step));
  out.pass = out.worst_lower >= -kInequalitySlack && out.worst_upper >= -kInequalitySlack;
  return out;
}

}  // namespace detail

/// Grid over |arg y| < pi / (4(|l|+1)), where |g| < pi/4.
inline std::vector<InequalityResult> check_compare_inequality(const TorusGroup& g,
                                                              const std::vector<TorusCharacter>& chars,
                                                              std::size_t grid_size) {
  std::vector<InequalityResult> out;
  for (const auto& chi : chars) {
    const double radius = kPi / (4.0 * (static_cast<double>(std::abs(chi.ell)) + 1.0));
    out.push_back(detail::inequality_on_grid<TorusPoint>(g, chi, radius, grid_size,
                                                         [](double t) { return torus_from_angle(t); }));
  }
  return out;
}

/// Grid over the points phi(t; 0, ..., 0) with |t| < min(pi p^d / (4(|l|+1)), pi/2):
/// there arg y_d = t / p^d, so chi_{d,l} = exp(i g) and |g| < pi/4.
inline std::vector<InequalityResult> check_compare_inequality(const SolenoidGroup& g,
                                                              const std::vector<SolenoidCharacter>& chars,
                                                              std::size_t grid_size) {
  detail::require_depth(g, chars);
  std::vector<InequalityResult> out;
  for (const auto& chi : chars) {
    const double pd = std::pow(static_cast<double>(g.p.value()), chi.depth);
    const double radius = std::min(kPi * pd / (4.0 * (static_cast<double>(std::abs(chi.ell)) + 1.0)), kPi / 2.0);
    const auto point_at = [&](double t) {
      return phi_solenoid(RealIntSequence{t, std::vector<std::int64_t>(g.depth, 0)}, g.p, g.depth);
    };
    out.push_back(detail::inequality_on_grid<SolenoidPoint>(g, chi, radius, grid_size, point_at));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Big-integer oracle for p-adic arithmetic

/// The operations under test; defaults are the library's.
struct PadicOps {
  std::function<PadicInt(const PadicInt&, const PadicInt&)> add = padic_add;
  std::function<PadicInt(const PadicInt&)> neg = padic_neg;
  std::function<PadicInt(std::uint64_t, const PadicInt&)> mul_nat = padic_mul_nat;
};

struct OracleResult {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  bool pass() const { return mismatches == 0; }
};

namespace detail {

using u128 = unsigned __int128;

inline u128 padic_value(const PadicInt& x) {
  u128 v = 0;
  for (std::size_t j = x.digit_count(); j-- > 0;) v = v * static_cast<u128>(x.prime().value()) + x.digit(j);
  return v;
}

inline PadicInt padic_from_value(u128 v, Prime p, std::size_t digits) {
  std::vector<int> d(digits);
  for (auto& x : d) {
    x = static_cast<int>(v % static_cast<u128>(p.value()));
    v /= static_cast<u128>(p.value());
  }
  return PadicInt(p, std::move(d));
}

}  // namespace detail

/// For `trials` random elements per prime in {2, 3, 5} at 16 digits, compares
/// add, neg and mul_nat with arithmetic on the integer values mod p^16, and
/// checks x + (-x) = 0 and that p * x has leading digit 0.
inline OracleResult oracle_padic_arithmetic(std::size_t trials, std::uint64_t seed, const PadicOps& ops = {}) {
  using detail::u128;
  constexpr std::size_t kDigits = 16;
  OracleResult result;
  std::uint64_t stream = 0;
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    RngStream rng(seed, stream++);
    u128 modulus = 1;
    for (std::size_t j = 0; j < kDigits; ++j) modulus *= static_cast<u128>(pv);
    const auto random_element = [&] {
      std::vector<int> d(kDigits);
      for (auto& x : d) x = sample_uniform_digit(rng, p);
      return PadicInt(p, std::move(d));
    };
    const auto check = [&](bool ok) {
      ++result.cases;
      if (!ok) ++result.mismatches;
    };
    for (std::size_t t = 0; t < trials; ++t) {
      const PadicInt x = random_element();
      const PadicInt y = random_element();
      const std::uint64_t k = rng() >> 40;
      const u128 xv = detail::padic_value(x);
      const u128 yv = detail::padic_value(y);
      const PadicInt zero = PadicInt::zero(p, kDigits);
      const PadicInt nx = ops.neg(x);
      check(ops.add(x, y) == detail::padic_from_value((xv + yv) % modulus, p, kDigits));
      check(nx == detail::padic_from_value((modulus - xv) % modulus, p, kDigits));
      check(ops.mul_nat(k, x) == detail::padic_from_value((static_cast<u128>(k) * xv) % modulus, p, kDigits));
      check(ops.add(x, nx) == zero);
      check(ops.mul_nat(static_cast<std::uint64_t>(pv), x).digit(0) == 0);
    }
  }
  return result;
}

}  // namespace wid
