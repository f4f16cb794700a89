#pragma once

// Exact samplers for omega_H * delta_a * gamma_psi_b * pi_{eta,g} on T,
// Delta_p and S_p. Each one draws independent real or integer variables
// (uniform, normal, compound Poisson on a lattice) and pushes their sum
// through the appropriate map onto the group:
//
//   T:      exp(i (U + arg a + X + Y))
//   Delta_p: phi(U_0 + a_0 + Y_0, U_1 + a_1 + Y_1, ...)
//   S_p:    phi(tau(a)_0 + X_0 + Y_0, tau(a)_1 + Y_1, ...)
//
// where Y is a compound Poisson draw from the lattice pushforward of eta with
// the local-mean drift removed from its real coordinate.

#include <cstdint>
#include <optional>
#include <vector>

#include "wid/duality.hpp"
#include "wid/group.hpp"
#include "wid/measure.hpp"
#include "wid/random.hpp"

namespace wid {

template <class G>
class WidSampler;

namespace detail {
template <class G>
const Quadruplet<G>& validated(const Quadruplet<G>& q) {
  validate_quadruplet(q);
  return q;
}
}  // namespace detail

template <>
class WidSampler<TorusGroup> {
 public:
  explicit WidSampler(const TorusQuadruplet& q)
      : H_(detail::validated(q).H), shift_(q.a.angle), b_(q.b), drift_(local_mean_drift(q.group, q.eta)),
        jumps_(pushforward_torus(q.eta)) {}

  TorusGroup group() const { return {}; }

  TorusPoint operator()(RngStream& rng) const {
    double u = 0.0;
    if (H_.kind == TorusSubgroup::Kind::Full) {
      u = sample_uniform_real(rng, 0.0, kTwoPi);
    } else if (H_.r > 1) {
      const auto j = sample_uniform_index(rng, static_cast<std::uint64_t>(H_.r));
      u = kTwoPi * static_cast<double>(j) / static_cast<double>(H_.r);
    }
    const double x = sample_normal(rng, b_);
    double y = -drift_;
    jumps_.accumulate(rng, y, {});
    return torus_from_angle(u + shift_ + x + y);
  }

 private:
  TorusSubgroup H_;
  double shift_;
  double b_;
  double drift_;
  CompoundPoissonSampler jumps_;
};

/// Produces elements with digits 0..depth. The quadruplet may be specified at
/// a greater depth; its shift and Levy measure are then read through the
/// first depth+1 digits.
template <>
class WidSampler<PadicGroup> {
 public:
  WidSampler(const PadicQuadruplet& q, int depth)
      : group_{q.group.p, depth}, shift_(detail::validated(q).a), jumps_(LatticeMeasure{}) {
    if (depth < 0 || depth > q.group.depth) throw Error("sampler depth must lie in 0..quadruplet depth");
    shift_ = q.a.truncated(group_.digit_count());
    first_uniform_ = q.H.r ? static_cast<std::size_t>(*q.H.r) : group_.digit_count();
    jumps_ = CompoundPoissonSampler(pushforward_padic(q.eta, depth));
  }

  explicit WidSampler(const PadicQuadruplet& q) : WidSampler(q, q.group.depth) {}

  const PadicGroup& group() const { return group_; }

  PadicInt operator()(RngStream& rng) const {
    const std::size_t n = group_.digit_count();
    IntSequence y{std::vector<std::int64_t>(n, 0)};
    for (std::size_t j = 0; j < n; ++j) y.entries[j] = shift_.digit(j);
    for (std::size_t j = first_uniform_; j < n; ++j) y.entries[j] += sample_uniform_digit(rng, group_.p);
    double unused = 0.0;
    jumps_.accumulate(rng, unused, y.entries);
    return phi_padic(y, group_.p);
  }

 private:
  PadicGroup group_;
  PadicInt shift_;
  std::size_t first_uniform_ = 0;
  CompoundPoissonSampler jumps_;
};

/// Produces elements at the requested depth; H = S_p is sampled by the Haar
/// construction alone since omega_{S_p} absorbs every other factor.
template <>
class WidSampler<SolenoidGroup> {
 public:
  WidSampler(const SolenoidQuadruplet& q, int depth)
      : group_{detail::validated(q).group.p, depth}, jumps_(LatticeMeasure{}) {
    if (depth < 0 || depth > q.group.depth) throw Error("sampler depth must lie in 0..quadruplet depth");
    haar_ = q.H.kind == SolenoidSubgroup::Kind::Full;
    shift_ = tau(q.a.truncated(depth));
    b_ = q.b;
    drift_ = local_mean_drift(q.group, q.eta);
    jumps_ = CompoundPoissonSampler(pushforward_solenoid(q.eta, depth));
  }

  explicit WidSampler(const SolenoidQuadruplet& q) : WidSampler(q, q.group.depth) {}

  const SolenoidGroup& group() const { return group_; }

  SolenoidPoint operator()(RngStream& rng) const {
    if (haar_) return haar(rng, group_);
    RealIntSequence y{shift_.y0 + sample_normal(rng, b_) - drift_, shift_.y_int};
    jumps_.accumulate(rng, y.y0, y.y_int);
    return phi_solenoid(y, group_.p, group_.depth);
  }

  /// phi(U_0, U_1, ...) with U_0 uniform on [0, 2 pi) and U_j uniform digits.
  static SolenoidPoint haar(RngStream& rng, const SolenoidGroup& g) {
    RealIntSequence u{sample_uniform_real(rng, 0.0, kTwoPi), std::vector<std::int64_t>(g.depth)};
    for (auto& v : u.y_int) v = sample_uniform_digit(rng, g.p);
    return phi_solenoid(u, g.p, g.depth);
  }

 private:
  SolenoidGroup group_;
  bool haar_ = false;
  RealIntSequence shift_;
  double b_ = 0.0;
  double drift_ = 0.0;
  CompoundPoissonSampler jumps_;
};

inline TorusPoint sample_torus_wid(RngStream& rng, const TorusQuadruplet& q) {
  return WidSampler<TorusGroup>(q)(rng);
}

inline PadicInt sample_padic_wid(RngStream& rng, const PadicQuadruplet& q, int depth) {
  return WidSampler<PadicGroup>(q, depth)(rng);
}

inline SolenoidPoint sample_solenoid_wid(RngStream& rng, const SolenoidQuadruplet& q, int depth) {
  return WidSampler<SolenoidGroup>(q, depth)(rng);
}

inline SolenoidPoint sample_solenoid_haar(RngStream& rng, Prime p, int depth) {
  return WidSampler<SolenoidGroup>::haar(rng, SolenoidGroup{p, depth});
}

/// Sampler at the quadruplet's own depth.
template <class G>
WidSampler<G> make_sampler(const Quadruplet<G>& q) {
  return WidSampler<G>(q);
}

}  // namespace wid
