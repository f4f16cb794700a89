#pragma once

// Finite-precision elements and group arithmetic for the circle group T,
// the p-adic integers Delta_p and the p-adic solenoid S_p, together with the
// homomorphisms from Z^infty and R x Z^infty onto them.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Representative of x mod 2*pi in [-pi, pi).
inline double canonical_angle(double x) {
  if (!std::isfinite(x)) throw Error("non-finite angle");
  double r = std::remainder(x, kTwoPi);
  if (r >= kPi) r -= kTwoPi;
  if (r < -kPi) r += kTwoPi;
  return r;
}

/// Distance between two angles measured along the circle, in [0, pi].
inline double circular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, kTwoPi));
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - floor_div(a, b) * b;
}

/// p^k, throwing if the result leaves the signed 64-bit range.
inline std::int64_t checked_pow(std::int64_t p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > INT64_MAX / p) throw Error("p^" + std::to_string(k) + " overflows 64-bit integers");
    r *= p;
  }
  return r;
}

class Prime {
 public:
  explicit Prime(std::int64_t p) : p_(p) {
    if (p < 2) throw Error("prime must be >= 2, got " + std::to_string(p));
    for (std::int64_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) throw Error(std::to_string(p) + " is not prime");
    }
  }

  std::int64_t value() const noexcept { return p_; }
  operator std::int64_t() const noexcept { return p_; }

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::int64_t p_;
};

// ---------------------------------------------------------------------------
// Torus

struct TorusPoint {
  double angle = 0.0;  // always in [-pi, pi)

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

inline TorusPoint torus_from_angle(double x) { return TorusPoint{canonical_angle(x)}; }

inline TorusPoint torus_mul(TorusPoint a, TorusPoint b) {
  return torus_from_angle(a.angle + b.angle);
}

inline TorusPoint torus_inverse(TorusPoint a) { return torus_from_angle(-a.angle); }

// ---------------------------------------------------------------------------
// p-adic integers

/// Element of Delta_p truncated to its first digit_count() digits,
/// least significant digit first. Arithmetic is carried out mod p^digit_count().
class PadicInt {
 public:
  PadicInt(Prime p, std::vector<int> digits) : p_(p), digits_(std::move(digits)) {
    for (int d : digits_) {
      if (d < 0 || d >= p_.value()) {
        throw Error("p-adic digit " + std::to_string(d) + " outside {0,...," +
                    std::to_string(p_.value() - 1) + "}");
      }
    }
  }

  static PadicInt zero(Prime p, std::size_t digit_count) {
    return PadicInt(p, std::vector<int>(digit_count, 0));
  }

  const Prime& prime() const noexcept { return p_; }
  const std::vector<int>& digits() const noexcept { return digits_; }
  std::size_t digit_count() const noexcept { return digits_.size(); }
  int digit(std::size_t j) const { return digits_.at(j); }

  bool is_zero() const noexcept {
    for (int d : digits_) {
      if (d != 0) return false;
    }
    return true;
  }

  /// First `count` digits as an element of lower precision.
  PadicInt truncated(std::size_t count) const {
    if (count > digits_.size()) throw Error("cannot extend a p-adic integer by truncation");
    return PadicInt(p_, std::vector<int>(digits_.begin(), digits_.begin() + count));
  }

  friend bool operator==(const PadicInt&, const PadicInt&) = default;

 private:
  Prime p_;
  std::vector<int> digits_;
};

namespace detail {
inline void require_compatible(const PadicInt& x, const PadicInt& y) {
  if (x.prime() != y.prime()) throw Error("p-adic operands have different primes");
  if (x.digit_count() != y.digit_count()) throw Error("p-adic operands have different digit counts");
}
}  // namespace detail

inline PadicInt padic_add(const PadicInt& x, const PadicInt& y) {
  detail::require_compatible(x, y);
  const int p = static_cast<int>(x.prime().value());
  std::vector<int> z(x.digit_count());
  int carry = 0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    int s = x.digit(j) + y.digit(j) + carry;
    carry = s >= p ? 1 : 0;
    z[j] = s - carry * p;
  }
  return PadicInt(x.prime(), std::move(z));
}

/// Additive inverse: complement every digit to p-1, then add one.
inline PadicInt padic_neg(const PadicInt& x) {
  const int p = static_cast<int>(x.prime().value());
  std::vector<int> z(x.digit_count());
  int carry = 1;
  for (std::size_t j = 0; j < z.size(); ++j) {
    int s = (p - 1 - x.digit(j)) + carry;
    carry = s >= p ? 1 : 0;
    z[j] = s - carry * p;
  }
  return PadicInt(x.prime(), std::move(z));
}

inline PadicInt padic_sub(const PadicInt& x, const PadicInt& y) { return padic_add(x, padic_neg(y)); }

/// k-fold sum x + ... + x.
inline PadicInt padic_mul_nat(std::uint64_t k, const PadicInt& x) {
  using u128 = unsigned __int128;
  const u128 p = static_cast<u128>(x.prime().value());
  std::vector<int> z(x.digit_count());
  u128 carry = 0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    u128 s = static_cast<u128>(k) * static_cast<u128>(x.digit(j)) + carry;
    z[j] = static_cast<int>(s % p);
    carry = s / p;
  }
  return PadicInt(x.prime(), std::move(z));
}

/// True iff x lies in Lambda_r, i.e. its digits 0..r-1 vanish.
inline bool padic_in_lambda(const PadicInt& x, std::size_t r) {
  if (r > x.digit_count()) throw Error("Lambda_r index exceeds digit count");
  for (std::size_t j = 0; j < r; ++j) {
    if (x.digit(j) != 0) return false;
  }
  return true;
}

struct IntSequence {
  std::vector<std::int64_t> entries;
};

/// Image of an integer sequence in Delta_p: the unique digits with
/// sum_{j<=d} y_j p^j == sum_{j<=d} phi(y)_j p^j mod p^{d+1} for every d.
inline PadicInt phi_padic(const IntSequence& y, Prime p) {
  const std::int64_t base = p.value();
  std::vector<int> digits(y.entries.size());
  std::int64_t carry = 0;
  for (std::size_t j = 0; j < digits.size(); ++j) {
    const std::int64_t t = y.entries[j] + carry;
    digits[j] = static_cast<int>(floor_mod(t, base));
    carry = floor_div(t, base);
  }
  return PadicInt(p, std::move(digits));
}

// ---------------------------------------------------------------------------
// Solenoid

/// Element (y_0, ..., y_D) of S_p truncated at depth D. Only the angle of y_D
/// is stored; y_j is obtained by raising y_{j+1} to the p-th power, so the
/// defining relation y_j = y_{j+1}^p holds by construction.
class SolenoidPoint {
 public:
  SolenoidPoint(Prime p, int depth, double deep_angle)
      : p_(p), depth_(depth), deep_angle_(canonical_angle(deep_angle)) {
    if (depth < 0) throw Error("solenoid depth must be nonnegative");
  }

  static SolenoidPoint identity(Prime p, int depth) { return SolenoidPoint(p, depth, 0.0); }

  const Prime& prime() const noexcept { return p_; }
  int depth() const noexcept { return depth_; }
  double deep_angle() const noexcept { return deep_angle_; }
  bool is_identity() const noexcept { return deep_angle_ == 0.0; }

  /// Angle of coordinate y_d.
  double coordinate_angle(int d) const {
    if (d < 0 || d > depth_) {
      throw Error("solenoid coordinate " + std::to_string(d) + " outside 0.." + std::to_string(depth_));
    }
    const double p = static_cast<double>(p_.value());
    double a = deep_angle_;
    for (int j = depth_; j > d; --j) a = canonical_angle(p * a);
    return a;
  }

  /// The same element viewed at a smaller depth.
  SolenoidPoint truncated(int depth) const { return SolenoidPoint(p_, depth, coordinate_angle(depth)); }

  friend bool operator==(const SolenoidPoint&, const SolenoidPoint&) = default;

 private:
  Prime p_;
  int depth_;
  double deep_angle_;
};

inline SolenoidPoint solenoid_mul(const SolenoidPoint& a, const SolenoidPoint& b) {
  if (a.prime() != b.prime() || a.depth() != b.depth()) {
    throw Error("solenoid operands have different prime or depth");
  }
  return SolenoidPoint(a.prime(), a.depth(), a.deep_angle() + b.deep_angle());
}

inline SolenoidPoint solenoid_inverse(const SolenoidPoint& a) {
  return SolenoidPoint(a.prime(), a.depth(), -a.deep_angle());
}

inline TorusPoint solenoid_project(const SolenoidPoint& x, int d) {
  return TorusPoint{x.coordinate_angle(d)};
}

/// (y_0; y_1, y_2, ...) in R x Z^n.
struct RealIntSequence {
  double y0 = 0.0;
  std::vector<std::int64_t> y_int;
};

/// phi(y)_j = exp(i (y_0 + 2 pi y_1 + 2 pi y_2 p + ... + 2 pi y_j p^{j-1}) / p^j),
/// returned at depth D. The integer part is reduced mod p^D exactly before
/// the division so that large arguments keep full precision.
inline SolenoidPoint phi_solenoid(const RealIntSequence& y, Prime p, int depth) {
  if (depth < 0) throw Error("solenoid depth must be nonnegative");
  if (y.y_int.size() < static_cast<std::size_t>(depth)) {
    throw Error("integer part shorter than solenoid depth");
  }
  const std::int64_t modulus = checked_pow(p.value(), depth);
  const double r = canonical_angle(y.y0);
  std::int64_t turns = floor_mod(static_cast<std::int64_t>(std::llround((y.y0 - r) / kTwoPi)), modulus);
  std::int64_t weight = 1;
  for (int j = 1; j <= depth; ++j) {
    const std::int64_t term = static_cast<std::int64_t>(
        (static_cast<__int128>(floor_mod(y.y_int[j - 1], modulus)) * weight) % modulus);
    turns = (turns + term) % modulus;
    if (j < depth) weight *= p.value();
  }
  // Extended precision here makes phi_solenoid(tau(x)) land on the stored
  // deep angle of x, instead of within p^D ulps of it.
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double deep = (r + two_pi * static_cast<long double>(turns)) / static_cast<long double>(modulus);
  return SolenoidPoint(p, depth, static_cast<double>(deep));
}

inline constexpr double kTauIntegralityTolerance = 1e-6;

/// tau(x) = (arg x_0, (p arg x_1 - arg x_0)/(2 pi), (p arg x_2 - arg x_1)/(2 pi), ...),
/// a section of phi_solenoid: phi_solenoid(tau(x)) == x.
inline RealIntSequence tau(const SolenoidPoint& x) {
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const auto p = static_cast<long double>(x.prime().value());
  RealIntSequence out;
  std::vector<long double> angles(static_cast<std::size_t>(x.depth()) + 1);
  angles[x.depth()] = x.deep_angle();
  for (int j = x.depth(); j > 0; --j) {
    long double a = std::remainder(p * angles[j], two_pi);
    if (a >= two_pi / 2) a -= two_pi;
    angles[j - 1] = a;
  }
  out.y0 = canonical_angle(static_cast<double>(angles[0]));
  angles[0] = out.y0;  // keep y_1 consistent with the rounded y_0
  out.y_int.reserve(x.depth());
  for (int j = 1; j <= x.depth(); ++j) {
    const long double v = (p * angles[j] - angles[j - 1]) / two_pi;
    const long double n = std::round(v);
    if (std::abs(v - n) > kTauIntegralityTolerance) throw Error("not a solenoid point");
    out.y_int.push_back(static_cast<std::int64_t>(n));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group descriptors. They carry the parameters (prime, truncation depth) that
// individual elements need to agree on, and give the algorithms below a
// uniform vocabulary: identity, group operation, inverse.

struct TorusGroup {
  using Element = TorusPoint;
  static constexpr const char* name = "torus";

  TorusPoint identity() const { return TorusPoint{}; }
  TorusPoint combine(TorusPoint a, TorusPoint b) const { return torus_mul(a, b); }
  TorusPoint inverse(TorusPoint a) const { return torus_inverse(a); }
  bool is_identity(TorusPoint a) const { return a.angle == 0.0; }
  bool contains(TorusPoint) const { return true; }

  friend bool operator==(const TorusGroup&, const TorusGroup&) = default;
};

/// Delta_p with elements kept to digits 0..depth.
struct PadicGroup {
  using Element = PadicInt;
  static constexpr const char* name = "padic";

  Prime p;
  int depth = 0;

  std::size_t digit_count() const { return static_cast<std::size_t>(depth) + 1; }
  PadicInt identity() const { return PadicInt::zero(p, digit_count()); }
  PadicInt combine(const PadicInt& a, const PadicInt& b) const { return padic_add(a, b); }
  PadicInt inverse(const PadicInt& a) const { return padic_neg(a); }
  bool is_identity(const PadicInt& a) const { return a.is_zero(); }
  bool contains(const PadicInt& a) const { return a.prime() == p && a.digit_count() == digit_count(); }

  friend bool operator==(const PadicGroup&, const PadicGroup&) = default;
};

/// S_p with elements kept to coordinates 0..depth.
struct SolenoidGroup {
  using Element = SolenoidPoint;
  static constexpr const char* name = "solenoid";

  Prime p;
  int depth = 0;

  SolenoidPoint identity() const { return SolenoidPoint::identity(p, depth); }
  SolenoidPoint combine(const SolenoidPoint& a, const SolenoidPoint& b) const { return solenoid_mul(a, b); }
  SolenoidPoint inverse(const SolenoidPoint& a) const { return solenoid_inverse(a); }
  bool is_identity(const SolenoidPoint& a) const { return a.is_identity(); }
  bool contains(const SolenoidPoint& a) const { return a.prime() == p && a.depth() == depth; }

  friend bool operator==(const SolenoidGroup&, const SolenoidGroup&) = default;
};

}  // namespace wid
