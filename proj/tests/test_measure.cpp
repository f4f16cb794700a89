#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "wid/fixtures.hpp"
#include "wid/measure.hpp"
#include "wid/verification.hpp"

using namespace wid;

namespace {

bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

// Series form e^{-m} sum_k (m phi)^k / k! of a single-atom compound Poisson transform.
Complex single_atom_series(double mass, Complex chi_value) {
  Complex term = 1.0, sum = 0.0;
  for (int k = 0; k < 80; ++k) {
    sum += term;
    term *= mass * chi_value / static_cast<double>(k + 1);
  }
  return std::exp(-mass) * sum;
}

template <class Q>
std::string validation_error(const Q& q) {
  try {
    validate_quadruplet(q);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Validation, AcceptsDegenerateQuadruplet) {
  EXPECT_NO_THROW(validate_quadruplet(TorusQuadruplet::dirac_identity(TorusGroup{})));
  EXPECT_NO_THROW(validate_quadruplet(PadicQuadruplet::dirac_identity(PadicGroup{Prime(3), 2})));
  EXPECT_NO_THROW(validate_quadruplet(SolenoidQuadruplet::dirac_identity(SolenoidGroup{Prime(2), 2})));
}

TEST(Validation, RejectsAtomAtIdentity) {
  auto q = TorusQuadruplet::dirac_identity(TorusGroup{});
  q.eta = LevyMeasure<TorusGroup>({{TorusPoint{0.0}, 1.0}});
  EXPECT_NE(validation_error(q).find("η({e})=0"), std::string::npos);

  auto s = SolenoidQuadruplet::dirac_identity(SolenoidGroup{Prime(2), 2});
  s.eta = LevyMeasure<SolenoidGroup>({{SolenoidPoint::identity(Prime(2), 2), 1.0}});
  EXPECT_NE(validation_error(s).find("η({e})=0"), std::string::npos);
}

TEST(Validation, RejectsGaussOnPadic) {
  auto q = PadicQuadruplet::dirac_identity(PadicGroup{Prime(3), 2});
  q.b = 0.5;
  EXPECT_NE(validation_error(q).find("no nontrivial Gauss"), std::string::npos);
}

TEST(Validation, RejectsBadParameters) {
  auto t = fixtures::torus_poisson();
  t.b = -1.0;
  EXPECT_FALSE(validation_error(t).empty());
  t.b = NAN;
  EXPECT_FALSE(validation_error(t).empty());
  t = fixtures::torus_poisson();
  t.H = TorusSubgroup{TorusSubgroup::Kind::Cyclic, 0};
  EXPECT_FALSE(validation_error(t).empty());

  auto pq = fixtures::padic_poisson(Prime(3), 3);
  pq.a = PadicInt::zero(Prime(3), 2);
  EXPECT_FALSE(validation_error(pq).empty());
  pq = fixtures::padic_poisson(Prime(3), 3);
  pq.eta = LevyMeasure<PadicGroup>({{PadicInt(Prime(5), {1, 0, 0, 0}), 1.0}});
  EXPECT_FALSE(validation_error(pq).empty());
  pq = fixtures::padic_poisson(Prime(3), 3);
  pq.H = PadicSubgroup{-1};
  EXPECT_FALSE(validation_error(pq).empty());

  auto sq = fixtures::solenoid_poisson(Prime(2), 3);
  sq.eta = LevyMeasure<SolenoidGroup>({{SolenoidPoint(Prime(2), 3, 0.5), -1.0}});
  EXPECT_FALSE(validation_error(sq).empty());
  sq.eta = LevyMeasure<SolenoidGroup>({{SolenoidPoint(Prime(2), 3, 0.5), 0.0}});
  EXPECT_FALSE(validation_error(sq).empty());
  sq = fixtures::solenoid_poisson(Prime(2), 3);
  sq.group.depth = 70;
  EXPECT_FALSE(validation_error(sq).empty());
}

TEST(LevyMeasure, MergesDuplicateAtoms) {
  const LevyMeasure<TorusGroup> eta({{TorusPoint{0.5}, 1.0}, {TorusPoint{0.5}, 2.0}, {TorusPoint{1.0}, 0.5}});
  EXPECT_EQ(eta.atoms().size(), 2u);
  EXPECT_DOUBLE_EQ(eta.total_mass(), 3.5);
  EXPECT_DOUBLE_EQ(eta.scaled(0.5).total_mass(), 1.75);
}

TEST(Transforms, Haar) {
  EXPECT_EQ(ft_haar(TorusGroup{}, TorusSubgroup::cyclic(2), TorusCharacter{4}), Complex(1.0));
  EXPECT_EQ(ft_haar(TorusGroup{}, TorusSubgroup::full(), TorusCharacter{1}), Complex(0.0));
  EXPECT_EQ(ft_haar(PadicGroup{Prime(2), 2}, PadicSubgroup::lambda(1), PadicCharacter{0, 1}), Complex(1.0));
  EXPECT_EQ(ft_haar(PadicGroup{Prime(2), 2}, PadicSubgroup::lambda(0), PadicCharacter{0, 1}), Complex(0.0));
}

TEST(Transforms, Dirac) {
  EXPECT_TRUE(near(ft_dirac(TorusPoint{}, TorusCharacter{5}), 1.0));
  EXPECT_TRUE(near(ft_dirac(TorusPoint{kPi / 2}, TorusCharacter{1}), Complex(0, 1)));
  EXPECT_TRUE(near(ft_dirac(SolenoidPoint::identity(Prime(3), 2), SolenoidCharacter{2, 7}), 1.0));
}

TEST(Transforms, Gauss) {
  EXPECT_TRUE(near(ft_gauss(TorusGroup{}, 0.0, TorusCharacter{5}), 1.0));
  EXPECT_TRUE(near(ft_gauss(TorusGroup{}, 2.0, TorusCharacter{3}), std::exp(-9.0)));
  EXPECT_TRUE(near(ft_gauss(SolenoidGroup{Prime(2), 3}, 1.0, SolenoidCharacter{2, 3}), std::exp(-9.0 / 32.0)));
}

TEST(Transforms, CompoundPoisson) {
  EXPECT_TRUE(near(ft_compound_poisson(LevyMeasure<TorusGroup>{}, TorusCharacter{3}), 1.0));
  const double theta = 0.7, lambda = 1.3;
  const LevyMeasure<TorusGroup> one({{TorusPoint{theta}, lambda}});
  for (std::int64_t l = -5; l <= 5; ++l) {
    const Complex expected = single_atom_series(lambda, std::polar(1.0, l * theta));
    EXPECT_TRUE(near(ft_compound_poisson(one, TorusCharacter{l}), expected)) << l;
  }
  const LevyMeasure<TorusGroup> two({{TorusPoint{theta}, lambda}, {TorusPoint{-2.0}, 0.4}});
  const LevyMeasure<TorusGroup> other({{TorusPoint{-2.0}, 0.4}});
  for (std::int64_t l = -5; l <= 5; ++l) {
    EXPECT_TRUE(near(ft_compound_poisson(two, TorusCharacter{l}),
                     ft_compound_poisson(one, TorusCharacter{l}) * ft_compound_poisson(other, TorusCharacter{l})));
  }
}

TEST(Transforms, GeneralizedPoisson) {
  EXPECT_TRUE(near(ft_gen_poisson(TorusGroup{}, LevyMeasure<TorusGroup>{}, TorusCharacter{2}), 1.0));
  const LevyMeasure<TorusGroup> eta({{TorusPoint{kPi / 4}, 1.0}});
  const Complex expected = std::exp(std::polar(1.0, kPi / 4) - 1.0 - Complex(0, kPi / 4));
  EXPECT_TRUE(near(ft_gen_poisson(TorusGroup{}, eta, TorusCharacter{1}), expected));
  // g = 0 on Delta_p, so the two Poisson forms coincide.
  const auto pe = fixtures::padic_eta(Prime(3), 3);
  EXPECT_TRUE(near(ft_gen_poisson(PadicGroup{Prime(3), 3}, pe, PadicCharacter{2, 11}),
                   ft_compound_poisson(pe, PadicCharacter{2, 11})));
}

TEST(Transforms, Quadruplet) {
  const auto t = TorusQuadruplet::dirac_identity(TorusGroup{});
  for (std::int64_t l = -4; l <= 4; ++l) EXPECT_TRUE(near(ft_quadruplet(t, TorusCharacter{l}), 1.0));
  auto full = fixtures::torus_composite();
  full.H = TorusSubgroup::full();
  EXPECT_EQ(ft_quadruplet(full, TorusCharacter{2}), Complex(0.0));

  const auto q = fixtures::torus_composite();
  for (std::int64_t l = -8; l <= 8; ++l) {
    const TorusCharacter chi{l};
    const Complex product = ft_haar(q.group, q.H, chi) * ft_dirac(q.a, chi) * ft_gauss(q.group, q.b, chi) *
                            ft_gen_poisson(q.group, q.eta, chi);
    EXPECT_TRUE(near(ft_quadruplet(q, chi), product));
  }
}

TEST(LocalMean, Drift) {
  EXPECT_EQ(local_mean_drift(TorusGroup{}, LevyMeasure<TorusGroup>{}), 0.0);
  EXPECT_DOUBLE_EQ(local_mean_drift(TorusGroup{}, LevyMeasure<TorusGroup>({{TorusPoint{0.3}, 1.0}})), 0.3);
  EXPECT_EQ(local_mean_drift(PadicGroup{Prime(2), 3}, fixtures::padic_eta(Prime(2), 3)), 0.0);
  // Torus fixture: 0.8 h(0.4) + 0.5 h(-2.0) + 0.3 h(2.9).
  const double expected = 0.8 * 0.4 + 0.5 * (2.0 - kPi) + 0.3 * (kPi - 2.9);
  EXPECT_NEAR(local_mean_drift(TorusGroup{}, fixtures::torus_eta()), expected, 1e-15);
}

TEST(LocalMeanProperty, GeneralizedTimesDriftPhaseIsCompound) {
  const auto check = [](const auto& g, const auto& eta, const auto& chars) {
    for (const auto& chi : chars) {
      const Complex lhs = ft_gen_poisson(g, eta, chi) * local_mean_character(g, eta, chi);
      ASSERT_LE(std::abs(lhs - ft_compound_poisson(eta, chi)), 1e-12) << to_string(chi);
    }
  };
  check(TorusGroup{}, fixtures::torus_eta(), default_characters(TorusGroup{}));
  for (std::int64_t pv : {2, 3}) {
    const PadicGroup pg{Prime(pv), 3};
    check(pg, fixtures::padic_eta(pg.p, 3), default_characters(pg));
    const SolenoidGroup sg{Prime(pv), 3};
    check(sg, fixtures::solenoid_eta(sg.p, 3), default_characters(sg));
  }
}

TEST(TransformProperty, DivisibilityAndHaarIdempotence) {
  const auto q = fixtures::torus_gauss_poisson(1.5);
  for (const auto& chi : default_characters(TorusGroup{})) {
    for (int n : {2, 3, 4, 7}) {
      const Complex part = ft_gauss(q.group, q.b / n, chi) * ft_gen_poisson(q.group, q.eta.scaled(1.0 / n), chi);
      EXPECT_LE(std::abs(std::pow(part, n) - ft_quadruplet(q, chi)), 1e-12);
    }
    for (std::int64_t r : {1, 2, 5}) {
      const Complex w = ft_haar(q.group, TorusSubgroup::cyclic(r), chi);
      EXPECT_EQ(w * w, w);
    }
  }
  const auto s = fixtures::solenoid_gauss_poisson(Prime(3), 3, 0.8);
  for (const auto& chi : default_characters(s.group)) {
    const Complex part = ft_gauss(s.group, s.b / 4, chi) * ft_gen_poisson(s.group, s.eta.scaled(0.25), chi);
    EXPECT_LE(std::abs(std::pow(part, 4) - ft_quadruplet(s, chi)), 1e-12);
  }
}

TEST(Pushforward, Torus) {
  EXPECT_TRUE(pushforward_torus(LevyMeasure<TorusGroup>{}).atoms.empty());
  const auto m = pushforward_torus(LevyMeasure<TorusGroup>({{TorusPoint{0.5}, 2.0}, {TorusPoint{-1.0}, 1.0}}));
  ASSERT_EQ(m.atoms.size(), 2u);
  EXPECT_TRUE(m.has_real);
  EXPECT_EQ(m.atoms[0].point.real, -1.0);
  EXPECT_EQ(m.atoms[0].mass, 1.0);
  EXPECT_EQ(m.atoms[1].point.real, 0.5);
  EXPECT_EQ(m.atoms[1].mass, 2.0);
}

TEST(Pushforward, Padic) {
  const Prime p(2);
  EXPECT_TRUE(pushforward_padic(LevyMeasure<PadicGroup>{}, 1).atoms.empty());
  EXPECT_TRUE(pushforward_padic(LevyMeasure<PadicGroup>({{PadicInt(p, {0, 1, 0}), 1.0}}), 0).atoms.empty());
  const auto m =
      pushforward_padic(LevyMeasure<PadicGroup>({{PadicInt(p, {1, 0, 0}), 2.0}, {PadicInt(p, {1, 1, 0}), 3.0}}), 0);
  ASSERT_EQ(m.atoms.size(), 1u);
  EXPECT_EQ(m.atoms[0].point.integers, (std::vector<std::int64_t>{1}));
  EXPECT_DOUBLE_EQ(m.atoms[0].mass, 5.0);
  EXPECT_FALSE(m.has_real);
  EXPECT_THROW(pushforward_padic(LevyMeasure<PadicGroup>({{PadicInt(p, {1, 0}), 1.0}}), 2), Error);
}

TEST(Pushforward, Solenoid) {
  const Prime p(3);
  EXPECT_TRUE(pushforward_solenoid(LevyMeasure<SolenoidGroup>{}, 1).atoms.empty());
  // At p = 3 the angle (0.2 + 2 pi) / 3 is already canonical, so tau recovers the 1.
  const auto x = fixtures::solenoid_point(p, 2, 0.2, {1, 0});
  const auto m = pushforward_solenoid(LevyMeasure<SolenoidGroup>({{x, 1.0}}), 1);
  ASSERT_EQ(m.atoms.size(), 1u);
  EXPECT_NEAR(m.atoms[0].point.real, 0.2, 1e-12);
  EXPECT_EQ(m.atoms[0].point.integers, (std::vector<std::int64_t>{1}));
  // tau(x) = (0; 0, 1): invisible until the second integer coordinate.
  const auto y = fixtures::solenoid_point(p, 2, 0.0, {0, 1});
  const auto shallow = pushforward_solenoid(LevyMeasure<SolenoidGroup>({{y, 1.0}}), 1);
  for (const auto& atom : shallow.atoms) {
    EXPECT_NEAR(atom.point.real, 0.0, 1e-12);
    EXPECT_EQ(atom.point.integers, (std::vector<std::int64_t>{0}));
  }
  EXPECT_EQ(pushforward_solenoid(LevyMeasure<SolenoidGroup>({{y, 1.0}}), 2).atoms.size(), 1u);
}

// The compound Poisson transform on the lattice, read at the frequencies that
// pull chi back through phi, reproduces the group transform at every depth.
TEST(PushforwardProperty, LatticeTransformsAreCompatible) {
  for (std::int64_t pv : {2, 3}) {
    const Prime p(pv);
    const auto eta = fixtures::padic_eta(p, 4);
    for (int n = 0; n <= 4; ++n) {
      const auto m = pushforward_padic(eta, n);
      for (int d = 0; d <= n; ++d) {
        const std::int64_t mod = checked_pow(pv, d + 1);
        for (std::int64_t l = 0; l < mod; ++l) {
          std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
          for (int j = 0; j <= d; ++j) w[static_cast<std::size_t>(j)] = kTwoPi * l * checked_pow(pv, j) / mod;
          ASSERT_LE(std::abs(lattice_compound_poisson_cf(m, 0.0, w) - ft_compound_poisson(eta, PadicCharacter{d, l})),
                    1e-12);
        }
      }
    }
    const auto seta = fixtures::solenoid_eta(p, 4);
    for (int n = 0; n <= 4; ++n) {
      const auto m = pushforward_solenoid(seta, n);
      for (int d = 0; d <= n; ++d) {
        const double pd = std::pow(static_cast<double>(pv), d);
        for (std::int64_t l = -8; l <= 8; ++l) {
          std::vector<double> w(static_cast<std::size_t>(n), 0.0);
          for (int j = 1; j <= d; ++j) w[static_cast<std::size_t>(j - 1)] = kTwoPi * l * std::pow(pv, j - 1) / pd;
          ASSERT_LE(std::abs(lattice_compound_poisson_cf(m, l / pd, w) -
                             ft_compound_poisson(seta, SolenoidCharacter{d, l})),
                    1e-10)
              << "n=" << n << " d=" << d << " l=" << l;
        }
      }
    }
  }
}
