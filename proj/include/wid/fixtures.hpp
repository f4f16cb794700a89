#pragma once

// Reference quadruplets shared by the selftest, the acceptance suite and the
// unit tests. Every Levy measure has two to four atoms chosen so that the
// cutoff h is exercised on more than one branch, and so that on Delta_p and
// S_p some atoms only become visible beyond the first few coordinates.

#include <cstdint>
#include <vector>

#include "wid/group.hpp"
#include "wid/measure.hpp"

namespace wid::fixtures {

/// Element of Delta_p with the given leading digits (reduced mod p), zero-padded.
inline PadicInt padic_digits(Prime p, int depth, std::vector<int> leading) {
  std::vector<int> digits(static_cast<std::size_t>(depth) + 1, 0);
  for (std::size_t j = 0; j < leading.size() && j < digits.size(); ++j) {
    digits[j] = static_cast<int>(floor_mod(leading[j], p.value()));
  }
  return PadicInt(p, std::move(digits));
}

/// phi(y0; ints...) at the given depth, ints zero-padded.
inline SolenoidPoint solenoid_point(Prime p, int depth, double y0, std::vector<std::int64_t> ints) {
  ints.resize(static_cast<std::size_t>(depth), 0);
  return phi_solenoid(RealIntSequence{y0, std::move(ints)}, p, depth);
}

inline LevyMeasure<TorusGroup> torus_eta() {
  return LevyMeasure<TorusGroup>({{torus_from_angle(0.4), 0.8},
                                  {torus_from_angle(-2.0), 0.5},
                                  {torus_from_angle(2.9), 0.3}});
}

inline TorusQuadruplet torus_poisson() {
  return {TorusGroup{}, TorusSubgroup::trivial(), TorusPoint{}, 0.0, torus_eta()};
}

inline TorusQuadruplet torus_gauss_poisson(double b) {
  return {TorusGroup{}, TorusSubgroup::trivial(), TorusPoint{}, b, torus_eta()};
}

/// H_3, a non-trivial shift, a Gauss part and jumps all at once.
inline TorusQuadruplet torus_composite() {
  return {TorusGroup{}, TorusSubgroup::cyclic(3), torus_from_angle(1.1), 0.3, torus_eta()};
}

/// Requires depth >= 3 so that every atom is distinct from the identity.
inline LevyMeasure<PadicGroup> padic_eta(Prime p, int depth) {
  if (depth < 3) throw Error("p-adic fixtures need depth >= 3");
  const int top = static_cast<int>(p.value()) - 1;
  return LevyMeasure<PadicGroup>({{padic_digits(p, depth, {1}), 0.6},
                                  {padic_digits(p, depth, {0, top, 1}), 0.5},
                                  {padic_digits(p, depth, {0, 0, 0, 1}), 0.4},
                                  {padic_digits(p, depth, {top, top}), 0.3}});
}

inline PadicQuadruplet padic_poisson(Prime p, int depth) {
  const PadicGroup g{p, depth};
  return {g, PadicSubgroup::trivial(), g.identity(), 0.0, padic_eta(p, depth)};
}

inline PadicQuadruplet padic_composite(Prime p, int depth) {
  const PadicGroup g{p, depth};
  return {g, PadicSubgroup::lambda(2), padic_digits(p, depth, {2, 1, 1}), 0.0, padic_eta(p, depth)};
}

inline PadicQuadruplet padic_haar(Prime p, int depth) {
  const PadicGroup g{p, depth};
  return {g, PadicSubgroup::lambda(0), g.identity(), 0.0, {}};
}

/// Requires depth >= 3.
inline LevyMeasure<SolenoidGroup> solenoid_eta(Prime p, int depth) {
  if (depth < 3) throw Error("solenoid fixtures need depth >= 3");
  return LevyMeasure<SolenoidGroup>({{solenoid_point(p, depth, 0.4, {}), 0.7},
                                     {solenoid_point(p, depth, -2.5, {1}), 0.4},
                                     {solenoid_point(p, depth, 0.0, {0, 0, 1}), 0.5},
                                     {solenoid_point(p, depth, 2.0, {1, 1}), 0.3}});
}

inline SolenoidQuadruplet solenoid_poisson(Prime p, int depth) {
  const SolenoidGroup g{p, depth};
  return {g, SolenoidSubgroup::trivial(), g.identity(), 0.0, solenoid_eta(p, depth)};
}

inline SolenoidQuadruplet solenoid_gauss_poisson(Prime p, int depth, double b) {
  const SolenoidGroup g{p, depth};
  return {g, SolenoidSubgroup::trivial(), g.identity(), b, solenoid_eta(p, depth)};
}

/// Non-trivial shift, Gauss part and jumps; H = S_p would absorb all of them.
inline SolenoidQuadruplet solenoid_composite(Prime p, int depth) {
  const SolenoidGroup g{p, depth};
  return {g, SolenoidSubgroup::trivial(), solenoid_point(p, depth, 1.3, {1, 0, 1}), 0.5, solenoid_eta(p, depth)};
}

inline SolenoidQuadruplet solenoid_haar(Prime p, int depth) {
  const SolenoidGroup g{p, depth};
  return {g, SolenoidSubgroup::full(), g.identity(), 0.0, {}};
}

}  // namespace wid::fixtures
