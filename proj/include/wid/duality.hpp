#pragma once

// Characters of T, Delta_p and S_p, the quadratic forms psi_b, the cutoff h
// and the local inner products used to centre Poisson jumps.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "wid/group.hpp"

namespace wid {

using Complex = std::complex<double>;

/// chi_l(y) = y^l.
struct TorusCharacter {
  std::int64_t ell = 0;
  friend bool operator==(const TorusCharacter&, const TorusCharacter&) = default;
  friend auto operator<=>(const TorusCharacter&, const TorusCharacter&) = default;
};

/// chi_{d,l}(x) = exp(2 pi i l (x_0 + p x_1 + ... + p^d x_d) / p^{d+1}), 0 <= l < p^{d+1}.
struct PadicCharacter {
  int depth = 0;
  std::int64_t ell = 0;
  friend bool operator==(const PadicCharacter&, const PadicCharacter&) = default;
  friend auto operator<=>(const PadicCharacter&, const PadicCharacter&) = default;
};

/// chi_{d,l}(y) = y_d^l.
struct SolenoidCharacter {
  int depth = 0;
  std::int64_t ell = 0;
  friend bool operator==(const SolenoidCharacter&, const SolenoidCharacter&) = default;
  friend auto operator<=>(const SolenoidCharacter&, const SolenoidCharacter&) = default;
};

inline std::string to_string(const TorusCharacter& c) { return std::to_string(c.ell); }
inline std::string to_string(const PadicCharacter& c) {
  return "(" + std::to_string(c.depth) + "," + std::to_string(c.ell) + ")";
}
inline std::string to_string(const SolenoidCharacter& c) {
  return "(" + std::to_string(c.depth) + "," + std::to_string(c.ell) + ")";
}

// ---------------------------------------------------------------------------
// Compact subgroups

/// Compact subgroups of T: T itself or the r-th roots of unity H_r.
struct TorusSubgroup {
  enum class Kind { Full, Cyclic };
  Kind kind = Kind::Cyclic;
  std::int64_t r = 1;

  static TorusSubgroup full() { return {Kind::Full, 0}; }
  static TorusSubgroup cyclic(std::int64_t r) {
    if (r < 1) throw Error("cyclic subgroup order must be >= 1");
    return {Kind::Cyclic, r};
  }
  static TorusSubgroup trivial() { return cyclic(1); }
  bool is_trivial() const { return kind == Kind::Cyclic && r == 1; }

  friend bool operator==(const TorusSubgroup&, const TorusSubgroup&) = default;
};

/// Lambda_r = {x : x_0 = ... = x_{r-1} = 0}; an empty `r` stands for {0}.
struct PadicSubgroup {
  std::optional<int> r;

  static PadicSubgroup lambda(int r) {
    if (r < 0) throw Error("Lambda_r index must be >= 0");
    return {r};
  }
  static PadicSubgroup trivial() { return {std::nullopt}; }
  bool is_trivial() const { return !r.has_value(); }

  friend bool operator==(const PadicSubgroup&, const PadicSubgroup&) = default;
};

/// The only compact subgroups of S_p handled here: {e} and S_p.
struct SolenoidSubgroup {
  enum class Kind { Trivial, Full };
  Kind kind = Kind::Trivial;

  static SolenoidSubgroup trivial() { return {Kind::Trivial}; }
  static SolenoidSubgroup full() { return {Kind::Full}; }
  bool is_trivial() const { return kind == Kind::Trivial; }

  friend bool operator==(const SolenoidSubgroup&, const SolenoidSubgroup&) = default;
};

template <class G>
struct group_traits;

template <>
struct group_traits<TorusGroup> {
  using Character = TorusCharacter;
  using Subgroup = TorusSubgroup;
};

template <>
struct group_traits<PadicGroup> {
  using Character = PadicCharacter;
  using Subgroup = PadicSubgroup;
};

template <>
struct group_traits<SolenoidGroup> {
  using Character = SolenoidCharacter;
  using Subgroup = SolenoidSubgroup;
};

template <class G>
using character_t = typename group_traits<G>::Character;
template <class G>
using subgroup_t = typename group_traits<G>::Subgroup;

// ---------------------------------------------------------------------------
// Cutoff function

/// Continuous odd sawtooth that agrees with x near 0 and vanishes outside [-pi, pi).
inline double h(double x) {
  if (x < -kPi || x >= kPi) return 0.0;
  if (x < -kPi / 2) return -x - kPi;
  if (x < kPi / 2) return x;
  return -x + kPi;
}

// ---------------------------------------------------------------------------
// Character evaluation

/// exp(i t) with t reduced mod 2 pi first, so that exact multiples of 2 pi give exactly 1.
inline Complex unit_phase(double t) { return std::polar(1.0, std::remainder(t, kTwoPi)); }

inline Complex eval_char(const TorusCharacter& chi, const TorusPoint& y) {
  return unit_phase(static_cast<double>(chi.ell) * y.angle);
}

inline Complex eval_char(const PadicCharacter& chi, const PadicInt& x) {
  if (chi.depth < 0 || static_cast<std::size_t>(chi.depth) >= x.digit_count()) {
    throw Error("character depth exceeds element depth");
  }
  const std::int64_t p = x.prime().value();
  const std::int64_t modulus = checked_pow(p, chi.depth + 1);
  if (chi.ell < 0 || chi.ell >= modulus) {
    throw Error("p-adic character index " + std::to_string(chi.ell) + " outside [0, p^{d+1})");
  }
  std::int64_t value = 0;
  std::int64_t weight = 1;
  for (int j = 0; j <= chi.depth; ++j) {
    value += weight * x.digit(static_cast<std::size_t>(j));
    if (j < chi.depth) weight *= p;
  }
  const std::int64_t k = modulus <= (std::int64_t{1} << 31)
                             ? (chi.ell * value) % modulus
                             : static_cast<std::int64_t>((static_cast<__int128>(chi.ell) * value) % modulus);
  return std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(modulus));
}

inline Complex eval_char(const SolenoidCharacter& chi, const SolenoidPoint& y) {
  if (chi.depth < 0 || chi.depth > y.depth()) throw Error("character depth exceeds element depth");
  return unit_phase(static_cast<double>(chi.ell) * y.coordinate_angle(chi.depth));
}

// ---------------------------------------------------------------------------
// Character group arithmetic. On Delta_p and S_p characters of different
// depth are compared after lifting chi_{d,l} to chi_{d+1,pl}.

inline TorusCharacter character_product(const TorusGroup&, TorusCharacter a, TorusCharacter b) {
  return {a.ell + b.ell};
}
inline TorusCharacter character_inverse(const TorusGroup&, TorusCharacter a) { return {-a.ell}; }

inline PadicCharacter lift(const PadicGroup& g, PadicCharacter c, int depth) {
  while (c.depth < depth) {
    c.ell *= g.p.value();
    ++c.depth;
  }
  return c;
}

inline PadicCharacter character_product(const PadicGroup& g, PadicCharacter a, PadicCharacter b) {
  const int depth = std::max(a.depth, b.depth);
  a = lift(g, a, depth);
  b = lift(g, b, depth);
  return {depth, floor_mod(a.ell + b.ell, checked_pow(g.p.value(), depth + 1))};
}

inline PadicCharacter character_inverse(const PadicGroup& g, PadicCharacter a) {
  return {a.depth, floor_mod(-a.ell, checked_pow(g.p.value(), a.depth + 1))};
}

inline SolenoidCharacter lift(const SolenoidGroup& g, SolenoidCharacter c, int depth) {
  while (c.depth < depth) {
    c.ell *= g.p.value();
    ++c.depth;
  }
  return c;
}

inline SolenoidCharacter character_product(const SolenoidGroup& g, SolenoidCharacter a, SolenoidCharacter b) {
  const int depth = std::max(a.depth, b.depth);
  a = lift(g, a, depth);
  b = lift(g, b, depth);
  return {depth, a.ell + b.ell};
}

inline SolenoidCharacter character_inverse(const SolenoidGroup&, SolenoidCharacter a) {
  return {a.depth, -a.ell};
}

inline bool is_trivial(const TorusCharacter& c) { return c.ell == 0; }
inline bool is_trivial(const PadicCharacter& c) { return c.ell == 0; }
inline bool is_trivial(const SolenoidCharacter& c) { return c.ell == 0; }

// ---------------------------------------------------------------------------
// Quadratic forms psi_b

inline double quad_form(const TorusGroup&, double b, const TorusCharacter& chi) {
  const auto l = static_cast<double>(chi.ell);
  return b * l * l;
}

/// Delta_p is totally disconnected, so psi = 0 is its only quadratic form.
inline double quad_form(const PadicGroup&, double, const PadicCharacter&) { return 0.0; }

inline double quad_form(const SolenoidGroup& g, double b, const SolenoidCharacter& chi) {
  const auto l = static_cast<double>(chi.ell);
  const double pd = std::pow(static_cast<double>(g.p.value()), chi.depth);
  return b * l * l / (pd * pd);
}

// ---------------------------------------------------------------------------
// Local inner products

inline double local_inner_product(const TorusGroup&, const TorusPoint& y, const TorusCharacter& chi) {
  return static_cast<double>(chi.ell) * h(y.angle);
}

inline double local_inner_product(const PadicGroup&, const PadicInt&, const PadicCharacter&) { return 0.0; }

inline double local_inner_product(const SolenoidGroup& g, const SolenoidPoint& y, const SolenoidCharacter& chi) {
  const double pd = std::pow(static_cast<double>(g.p.value()), chi.depth);
  return static_cast<double>(chi.ell) * h(y.coordinate_angle(0)) / pd;
}

// ---------------------------------------------------------------------------
// Annihilators

inline bool annihilates(const TorusGroup&, const TorusSubgroup& H, const TorusCharacter& chi) {
  if (H.kind == TorusSubgroup::Kind::Full) return chi.ell == 0;
  return chi.ell % H.r == 0;
}

/// chi_{d,l} is identically 1 on Lambda_r iff d < r or p^{d+1-r} divides l.
inline bool annihilates(const PadicGroup& g, const PadicSubgroup& H, const PadicCharacter& chi) {
  if (!H.r || chi.depth < *H.r) return true;
  return chi.ell % checked_pow(g.p.value(), chi.depth + 1 - *H.r) == 0;
}

inline bool annihilates(const SolenoidGroup&, const SolenoidSubgroup& H, const SolenoidCharacter& chi) {
  if (H.kind == SolenoidSubgroup::Kind::Trivial) return true;
  return chi.ell == 0;
}

}  // namespace wid
