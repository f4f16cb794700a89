#pragma once

// Quadruplets (H, a, psi_b, eta) describing weakly infinitely divisible
// measures omega_H * delta_a * gamma_psi * pi_{eta,g}, finite atomic Levy
// measures, their lattice pushforwards, and closed-form Fourier transforms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wid/duality.hpp"
#include "wid/group.hpp"

namespace wid {

template <class G>
struct LevyAtom {
  typename G::Element point;
  double mass = 0.0;
};

/// Finite atomic Levy measure. Atoms sharing a point are merged on
/// construction; positivity and eta({e}) = 0 are checked by validate_quadruplet.
template <class G>
class LevyMeasure {
 public:
  using Atom = LevyAtom<G>;

  LevyMeasure() = default;

  explicit LevyMeasure(std::vector<Atom> atoms) {
    for (auto& a : atoms) {
      bool merged = false;
      for (auto& existing : atoms_) {
        if (existing.point == a.point) {
          existing.mass += a.mass;
          merged = true;
          break;
        }
      }
      if (!merged) atoms_.push_back(std::move(a));
    }
  }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty(); }

  double total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.mass;
    return m;
  }

  /// eta / n is scaled(1.0 / n).
  LevyMeasure scaled(double factor) const {
    LevyMeasure out = *this;
    for (auto& a : out.atoms_) a.mass *= factor;
    return out;
  }

 private:
  std::vector<Atom> atoms_;
};

template <class G>
struct Quadruplet {
  G group;
  subgroup_t<G> H;
  typename G::Element a;
  double b = 0.0;
  LevyMeasure<G> eta;

  /// The point mass at the identity.
  static Quadruplet dirac_identity(const G& g) {
    return Quadruplet{g, subgroup_t<G>::trivial(), g.identity(), 0.0, {}};
  }
};

using TorusQuadruplet = Quadruplet<TorusGroup>;
using PadicQuadruplet = Quadruplet<PadicGroup>;
using SolenoidQuadruplet = Quadruplet<SolenoidGroup>;

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline void validate_group(const TorusGroup&) {}

inline void validate_group(const PadicGroup& g) {
  if (g.depth < 0) throw Error("depth must be nonnegative");
  checked_pow(g.p.value(), g.depth + 1);
}

inline void validate_group(const SolenoidGroup& g) {
  if (g.depth < 0) throw Error("depth must be nonnegative");
  checked_pow(g.p.value(), g.depth);
}

inline void validate_subgroup(const TorusGroup&, const TorusSubgroup& H) {
  if (H.kind == TorusSubgroup::Kind::Cyclic && H.r < 1) throw Error("cyclic subgroup order must be >= 1");
}
inline void validate_subgroup(const PadicGroup&, const PadicSubgroup& H) {
  if (H.r && *H.r < 0) throw Error("Lambda_r index must be >= 0");
}
inline void validate_subgroup(const SolenoidGroup&, const SolenoidSubgroup&) {}

inline void validate_gauss(const TorusGroup&, double) {}
inline void validate_gauss(const SolenoidGroup&, double) {}
inline void validate_gauss(const PadicGroup&, double b) {
  if (b != 0.0) throw Error("there is no nontrivial Gauss measure on Delta_p: b must be 0");
}

}  // namespace detail

template <class G>
void validate_quadruplet(const Quadruplet<G>& q) {
  detail::validate_group(q.group);
  detail::validate_subgroup(q.group, q.H);
  if (!q.group.contains(q.a)) throw Error("shift a does not match the group's prime or depth");
  if (!std::isfinite(q.b) || q.b < 0.0) throw Error("Gauss parameter b must be finite and >= 0");
  detail::validate_gauss(q.group, q.b);
  for (const auto& atom : q.eta.atoms()) {
    if (!q.group.contains(atom.point)) throw Error("Levy atom does not match the group's prime or depth");
    if (!std::isfinite(atom.mass) || atom.mass <= 0.0) throw Error("Levy atom mass must be positive and finite");
    if (q.group.is_identity(atom.point)) {
      throw Error("Levy measure must satisfy η({e})=0: atom at the identity");
    }
  }
}

// ---------------------------------------------------------------------------
// Fourier transforms of the building blocks

template <class G>
Complex ft_haar(const G& g, const subgroup_t<G>& H, const character_t<G>& chi) {
  return annihilates(g, H, chi) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
}

template <class Element, class Character>
Complex ft_dirac(const Element& a, const Character& chi) {
  return eval_char(chi, a);
}

template <class G>
Complex ft_gauss(const G& g, double b, const character_t<G>& chi) {
  return {std::exp(-quad_form(g, b, chi) / 2.0), 0.0};
}

/// exp( sum_atoms mass * (chi(x) - 1) ).
template <class G>
Complex ft_compound_poisson(const LevyMeasure<G>& eta, const character_t<G>& chi) {
  Complex s{0.0, 0.0};
  for (const auto& atom : eta.atoms()) s += atom.mass * (eval_char(chi, atom.point) - 1.0);
  return std::exp(s);
}

/// exp( sum_atoms mass * (chi(x) - 1 - i g(x, chi)) ).
template <class G>
Complex ft_gen_poisson(const G& g, const LevyMeasure<G>& eta, const character_t<G>& chi) {
  const Complex i{0.0, 1.0};
  Complex s{0.0, 0.0};
  for (const auto& atom : eta.atoms()) {
    s += atom.mass * (eval_char(chi, atom.point) - 1.0 - i * local_inner_product(g, atom.point, chi));
  }
  return std::exp(s);
}

template <class G>
Complex ft_quadruplet(const Quadruplet<G>& q, const character_t<G>& chi) {
  return ft_haar(q.group, q.H, chi) * ft_dirac(q.a, chi) * ft_gauss(q.group, q.b, chi) *
         ft_gen_poisson(q.group, q.eta, chi);
}

// ---------------------------------------------------------------------------
// Local mean

/// Scalar s such that subtracting s from the real coordinate of a compound
/// Poisson sample turns e(eta) into pi_{eta,g}.
inline double local_mean_drift(const TorusGroup&, const LevyMeasure<TorusGroup>& eta) {
  double s = 0.0;
  for (const auto& atom : eta.atoms()) s += atom.mass * h(atom.point.angle);
  return s;
}

inline double local_mean_drift(const PadicGroup&, const LevyMeasure<PadicGroup>&) { return 0.0; }

inline double local_mean_drift(const SolenoidGroup&, const LevyMeasure<SolenoidGroup>& eta) {
  double s = 0.0;
  for (const auto& atom : eta.atoms()) s += atom.mass * h(atom.point.coordinate_angle(0));
  return s;
}

/// chi(m_g(eta)) = exp( i * sum_atoms mass * g(x, chi) ).
template <class G>
Complex local_mean_character(const G& g, const LevyMeasure<G>& eta, const character_t<G>& chi) {
  double s = 0.0;
  for (const auto& atom : eta.atoms()) s += atom.mass * local_inner_product(g, atom.point, chi);
  return std::polar(1.0, s);
}

// ---------------------------------------------------------------------------
// Lattice measures on R x Z^n (or Z^n when has_real is false)

struct LatticePoint {
  double real = 0.0;
  std::vector<std::int64_t> integers;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct LatticeAtom {
  LatticePoint point;
  double mass = 0.0;
};

struct LatticeMeasure {
  bool has_real = true;
  std::size_t integer_dims = 0;
  std::vector<LatticeAtom> atoms;

  double total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.mass;
    return m;
  }
};

namespace detail {

inline bool is_origin(const LatticePoint& x) {
  if (x.real != 0.0) return false;
  for (auto v : x.integers) {
    if (v != 0) return false;
  }
  return true;
}

/// Sum masses of equal points, drop the origin, emit in sorted order.
inline LatticeMeasure collect(bool has_real, std::size_t dims,
                              const std::vector<std::pair<LatticePoint, double>>& raw) {
  std::map<std::pair<double, std::vector<std::int64_t>>, double> merged;
  for (const auto& [pt, mass] : raw) {
    if (is_origin(pt)) continue;
    merged[{pt.real, pt.integers}] += mass;
  }
  LatticeMeasure out{has_real, dims, {}};
  out.atoms.reserve(merged.size());
  for (const auto& [key, mass] : merged) out.atoms.push_back({LatticePoint{key.first, key.second}, mass});
  return out;
}

}  // namespace detail

/// arg o eta on R.
inline LatticeMeasure pushforward_torus(const LevyMeasure<TorusGroup>& eta) {
  std::vector<std::pair<LatticePoint, double>> raw;
  for (const auto& atom : eta.atoms()) raw.push_back({LatticePoint{atom.point.angle, {}}, atom.mass});
  return detail::collect(true, 0, raw);
}

/// eta_{n+1} on Z^{n+1}: mass of each nonzero digit prefix (x_0, ..., x_n).
inline LatticeMeasure pushforward_padic(const LevyMeasure<PadicGroup>& eta, int n) {
  if (n < 0) throw Error("pushforward depth must be nonnegative");
  const auto len = static_cast<std::size_t>(n) + 1;
  std::vector<std::pair<LatticePoint, double>> raw;
  for (const auto& atom : eta.atoms()) {
    if (atom.point.digit_count() < len) throw Error("pushforward depth exceeds atom digit count");
    LatticePoint pt{0.0, {}};
    pt.integers.reserve(len);
    for (std::size_t j = 0; j < len; ++j) pt.integers.push_back(atom.point.digit(j));
    raw.push_back({std::move(pt), atom.mass});
  }
  return detail::collect(false, len, raw);
}

/// eta_{n+1} on R x Z^n: the law of (tau(x)_0; tau(x)_1, ..., tau(x)_n) under eta.
inline LatticeMeasure pushforward_solenoid(const LevyMeasure<SolenoidGroup>& eta, int n) {
  if (n < 0) throw Error("pushforward depth must be nonnegative");
  std::vector<std::pair<LatticePoint, double>> raw;
  for (const auto& atom : eta.atoms()) {
    if (atom.point.depth() < n) throw Error("pushforward depth exceeds atom depth");
    const RealIntSequence t = tau(atom.point);
    LatticePoint pt{t.y0, std::vector<std::int64_t>(t.y_int.begin(), t.y_int.begin() + n)};
    raw.push_back({std::move(pt), atom.mass});
  }
  return detail::collect(true, static_cast<std::size_t>(n), raw);
}

/// Transform of e(m) at the character (x, l) -> exp(i y x) * prod_k exp(i w_k l_k)
/// of R x Z^n, with `real_freq` = y and `angles` = (w_1, ..., w_n).
inline Complex lattice_compound_poisson_cf(const LatticeMeasure& m, double real_freq,
                                           const std::vector<double>& angles) {
  if (angles.size() != m.integer_dims) throw Error("frequency dimension mismatch");
  Complex s{0.0, 0.0};
  for (const auto& atom : m.atoms) {
    double phase = real_freq * atom.point.real;
    for (std::size_t k = 0; k < angles.size(); ++k) phase += angles[k] * static_cast<double>(atom.point.integers[k]);
    s += atom.mass * (std::polar(1.0, phase) - 1.0);
  }
  return std::exp(s);
}

}  // namespace wid
