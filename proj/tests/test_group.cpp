#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "wid/group.hpp"
#include "wid/random.hpp"

using namespace wid;

namespace {

// Integer value of the digits, and its base-p expansion mod p^n.
unsigned __int128 value_of(const PadicInt& x) {
  unsigned __int128 v = 0, w = 1;
  for (int d : x.digits()) {
    v += w * static_cast<unsigned>(d);
    w *= static_cast<unsigned>(x.prime().value());
  }
  return v;
}

PadicInt expand(unsigned __int128 v, Prime p, std::size_t n) {
  std::vector<int> d;
  for (std::size_t j = 0; j < n; ++j) {
    d.push_back(static_cast<int>(v % static_cast<unsigned>(p.value())));
    v /= static_cast<unsigned>(p.value());
  }
  return PadicInt(p, d);
}

unsigned __int128 power(std::int64_t p, std::size_t n) {
  unsigned __int128 r = 1;
  for (std::size_t j = 0; j < n; ++j) r *= static_cast<unsigned>(p);
  return r;
}

PadicInt random_padic(RngStream& rng, Prime p, std::size_t n) {
  std::vector<int> d(n);
  for (auto& x : d) x = sample_uniform_digit(rng, p);
  return PadicInt(p, d);
}

SolenoidPoint random_solenoid(RngStream& rng, Prime p, int depth) {
  return SolenoidPoint(p, depth, sample_uniform_real(rng, -kPi, kPi));
}

}  // namespace

TEST(Prime, RejectsComposites) {
  EXPECT_NO_THROW(Prime(2));
  EXPECT_NO_THROW(Prime(97));
  EXPECT_THROW(Prime(1), Error);
  EXPECT_THROW(Prime(9), Error);
  EXPECT_THROW(Prime(91), Error);
}

TEST(Torus, FromAngle) {
  EXPECT_EQ(torus_from_angle(0.0).angle, 0.0);
  EXPECT_DOUBLE_EQ(torus_from_angle(3 * kPi).angle, -kPi);
  EXPECT_NEAR(torus_from_angle(5.5).angle, -0.7831853071795865, 1e-15);
  EXPECT_DOUBLE_EQ(torus_from_angle(kPi).angle, -kPi);
  EXPECT_THROW(torus_from_angle(INFINITY), Error);
  EXPECT_THROW(torus_from_angle(NAN), Error);
}

TEST(Torus, Multiplication) {
  EXPECT_DOUBLE_EQ(torus_mul(TorusPoint{0.0}, TorusPoint{1.25}).angle, 1.25);
  EXPECT_DOUBLE_EQ(torus_mul(TorusPoint{kPi / 2}, TorusPoint{kPi / 2}).angle, -kPi);
  EXPECT_NEAR(torus_mul(TorusPoint{2.0}, TorusPoint{2.5}).angle, -1.7831853071795862, 1e-15);
}

TEST(Torus, AbelianGroupLaws) {
  RngStream rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto a = torus_from_angle(sample_uniform_real(rng, -10, 10));
    const auto b = torus_from_angle(sample_uniform_real(rng, -10, 10));
    const auto c = torus_from_angle(sample_uniform_real(rng, -10, 10));
    EXPECT_LE(circular_distance(torus_mul(a, b).angle, torus_mul(b, a).angle), 1e-15);
    EXPECT_LE(circular_distance(torus_mul(torus_mul(a, b), c).angle, torus_mul(a, torus_mul(b, c)).angle), 1e-14);
    EXPECT_LE(circular_distance(torus_mul(a, torus_inverse(a)).angle, 0.0), 1e-15);
    const double r = torus_mul(a, b).angle;
    EXPECT_GE(r, -kPi);
    EXPECT_LT(r, kPi);
  }
}

TEST(Padic, AddExamples) {
  const Prime p2(2), p5(5), p3(3);
  EXPECT_EQ(padic_add(PadicInt(p2, {1, 0, 0}), PadicInt(p2, {1, 0, 0})), PadicInt(p2, {0, 1, 0}));
  EXPECT_EQ(padic_add(PadicInt(p5, {4, 4, 4}), PadicInt(p5, {1, 0, 0})), PadicInt(p5, {0, 0, 0}));
  const PadicInt x(p3, {2, 0, 1});
  EXPECT_EQ(padic_add(x, PadicInt::zero(p3, 3)), x);
}

TEST(Padic, AddRejectsMismatch) {
  EXPECT_THROW(padic_add(PadicInt(Prime(2), {1}), PadicInt(Prime(3), {1})), Error);
  EXPECT_THROW(padic_add(PadicInt(Prime(2), {1}), PadicInt(Prime(2), {1, 0})), Error);
  EXPECT_THROW(PadicInt(Prime(3), {3}), Error);
  EXPECT_THROW(PadicInt(Prime(3), {-1}), Error);
}

TEST(Padic, NegExamples) {
  EXPECT_EQ(padic_neg(PadicInt::zero(Prime(7), 4)), PadicInt::zero(Prime(7), 4));
  EXPECT_EQ(padic_neg(PadicInt(Prime(2), {1, 0, 0})), PadicInt(Prime(2), {1, 1, 1}));
  EXPECT_EQ(padic_neg(PadicInt(Prime(5), {2, 0, 0})), PadicInt(Prime(5), {3, 4, 4}));
}

TEST(Padic, MulNatExamples) {
  EXPECT_EQ(padic_mul_nat(0, PadicInt(Prime(3), {1, 2, 1})), PadicInt::zero(Prime(3), 3));
  EXPECT_EQ(padic_mul_nat(3, PadicInt(Prime(3), {1, 0, 0})), PadicInt(Prime(3), {0, 1, 0}));
  EXPECT_EQ(padic_mul_nat(3, PadicInt(Prime(2), {1, 1, 0})), PadicInt(Prime(2), {1, 0, 0}));
}

TEST(Padic, PhiExamples) {
  EXPECT_EQ(phi_padic(IntSequence{{0, 0, 0}}, Prime(5)), PadicInt::zero(Prime(5), 3));
  EXPECT_EQ(phi_padic(IntSequence{{-1, 0, 0}}, Prime(3)), PadicInt(Prime(3), {2, 2, 2}));
  EXPECT_EQ(phi_padic(IntSequence{{3, 0, 0}}, Prime(2)), PadicInt(Prime(2), {1, 1, 0}));
}

TEST(Padic, LambdaMembership) {
  const Prime p(3);
  EXPECT_TRUE(padic_in_lambda(PadicInt(p, {2, 1, 0}), 0));
  EXPECT_TRUE(padic_in_lambda(PadicInt(p, {0, 1, 0}), 1));
  EXPECT_FALSE(padic_in_lambda(PadicInt(p, {1, 0, 0}), 1));
  EXPECT_THROW(padic_in_lambda(PadicInt(p, {1, 0, 0}), 4), Error);
}

TEST(PadicProperty, AdditionMatchesIntegerArithmetic) {
  RngStream rng(2024);
  for (std::int64_t pv : {2, 3, 5, 7}) {
    const Prime p(pv);
    const std::size_t n = 12;
    const auto mod = power(pv, n);
    for (int i = 0; i < 10000; ++i) {
      const auto x = random_padic(rng, p, n), y = random_padic(rng, p, n), z = random_padic(rng, p, n);
      const auto xy = padic_add(x, y);
      ASSERT_EQ(xy, padic_add(y, x));
      ASSERT_EQ(padic_add(xy, z), padic_add(x, padic_add(y, z)));
      ASSERT_EQ(xy, expand((value_of(x) + value_of(y)) % mod, p, n));
    }
  }
}

TEST(PadicProperty, InverseAndNonDivisibilityWitness) {
  RngStream rng(7);
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_padic(rng, p, 10);
      EXPECT_TRUE(padic_add(x, padic_neg(x)).is_zero());
      EXPECT_EQ(padic_mul_nat(static_cast<std::uint64_t>(pv), x).digit(0), 0);
      const std::uint64_t k = rng() % 50;
      PadicInt sum = PadicInt::zero(p, 10);
      for (std::uint64_t j = 0; j < k; ++j) sum = padic_add(sum, x);
      EXPECT_EQ(padic_mul_nat(k, x), sum);
    }
  }
}

TEST(PadicProperty, PhiIsAHomomorphismAndSolvesTheCongruences) {
  RngStream rng(99);
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    const std::size_t n = 8;
    for (int i = 0; i < 10000; ++i) {
      IntSequence y{std::vector<std::int64_t>(n)}, z{std::vector<std::int64_t>(n)}, yz{std::vector<std::int64_t>(n)};
      for (std::size_t j = 0; j < n; ++j) {
        y.entries[j] = static_cast<std::int64_t>(sample_uniform_index(rng, 2000001)) - 1000000;
        z.entries[j] = static_cast<std::int64_t>(sample_uniform_index(rng, 2000001)) - 1000000;
        yz.entries[j] = y.entries[j] + z.entries[j];
      }
      const auto py = phi_padic(y, p);
      ASSERT_EQ(phi_padic(yz, p), padic_add(py, phi_padic(z, p)));
      // sum_{j<=d} y_j p^j == sum_{j<=d} phi(y)_j p^j mod p^{d+1}
      __int128 lhs = 0, rhs = 0, w = 1;
      for (std::size_t d = 0; d < n; ++d) {
        lhs += y.entries[d] * w;
        rhs += py.digit(d) * w;
        w *= pv;
        ASSERT_EQ(((lhs - rhs) % w + w) % w, 0);
      }
    }
  }
}

TEST(Solenoid, ProjectExamples) {
  const SolenoidPoint x(Prime(2), 2, kPi / 4);
  EXPECT_DOUBLE_EQ(solenoid_project(x, 2).angle, kPi / 4);
  EXPECT_DOUBLE_EQ(solenoid_project(x, 0).angle, -kPi);
  EXPECT_DOUBLE_EQ(solenoid_project(SolenoidPoint(Prime(3), 1, 1.0), 0).angle, 3.0);
  EXPECT_THROW(solenoid_project(x, 3), Error);
  EXPECT_THROW(solenoid_project(x, -1), Error);
}

TEST(Solenoid, MultiplicationExamples) {
  const Prime p(3);
  const SolenoidPoint x(p, 2, 0.3);
  EXPECT_EQ(solenoid_mul(x, SolenoidPoint::identity(p, 2)), x);
  EXPECT_NEAR(solenoid_mul(SolenoidPoint(p, 2, 0.3), SolenoidPoint(p, 2, 0.4)).deep_angle(), 0.7, 1e-15);
  EXPECT_NEAR(solenoid_mul(SolenoidPoint(p, 2, 3.0), SolenoidPoint(p, 2, 1.0)).deep_angle(), -2.2831853071795862,
              1e-15);
  EXPECT_THROW(solenoid_mul(SolenoidPoint(p, 2, 0.1), SolenoidPoint(p, 3, 0.1)), Error);
  EXPECT_THROW(solenoid_mul(SolenoidPoint(p, 2, 0.1), SolenoidPoint(Prime(2), 2, 0.1)), Error);
}

TEST(Solenoid, PhiExamples) {
  const Prime p(2);
  const auto e = phi_solenoid(RealIntSequence{0.0, {0, 0, 0}}, Prime(5), 3);
  EXPECT_TRUE(e.is_identity());

  const auto a = phi_solenoid(RealIntSequence{kPi, {0}}, p, 1);
  EXPECT_DOUBLE_EQ(a.coordinate_angle(0), -kPi);
  EXPECT_DOUBLE_EQ(a.coordinate_angle(1), kPi / 2);

  const auto b = phi_solenoid(RealIntSequence{0.0, {1}}, p, 1);
  EXPECT_DOUBLE_EQ(b.coordinate_angle(0), 0.0);
  EXPECT_DOUBLE_EQ(b.coordinate_angle(1), -kPi);
  EXPECT_THROW(phi_solenoid(RealIntSequence{0.0, {1}}, p, 2), Error);
}

TEST(Solenoid, PhiMatchesCoordinateFormula) {
  // coordinate j = (y0 + 2 pi (y_1 + y_2 p + ... + y_j p^{j-1})) / p^j mod 2 pi
  RngStream rng(5);
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    const int depth = 4;
    for (int i = 0; i < 1000; ++i) {
      RealIntSequence y{sample_uniform_real(rng, -20, 20), std::vector<std::int64_t>(depth)};
      for (auto& v : y.y_int) v = static_cast<std::int64_t>(sample_uniform_index(rng, 21)) - 10;
      const auto x = phi_solenoid(y, p, depth);
      double pj = 1.0, acc = y.y0;
      for (int j = 0; j <= depth; ++j) {
        if (j > 0) {
          acc += kTwoPi * static_cast<double>(y.y_int[j - 1]) * pj;
          pj *= static_cast<double>(pv);
        }
        EXPECT_LE(circular_distance(x.coordinate_angle(j), acc / pj), 1e-11);
      }
    }
  }
}

TEST(Solenoid, TauExamples) {
  const auto t0 = tau(SolenoidPoint::identity(Prime(3), 3));
  EXPECT_EQ(t0.y0, 0.0);
  EXPECT_EQ(t0.y_int, (std::vector<std::int64_t>{0, 0, 0}));

  const auto t = tau(SolenoidPoint(Prime(2), 1, kPi / 2));
  EXPECT_DOUBLE_EQ(t.y0, -kPi);
  EXPECT_EQ(t.y_int, (std::vector<std::int64_t>{1}));
}

TEST(SolenoidProperty, PhiInvertsTau) {
  RngStream rng(31);
  for (std::int64_t pv : {2, 3, 5}) {
    for (int depth : {0, 1, 3, 6}) {
      const Prime p(pv);
      // Only the deep angle is stored, so coordinate j carries p^(depth-j) ulps of error.
      const double tol = 1e-14 * std::pow(static_cast<double>(pv), depth);
      for (int i = 0; i < 1000; ++i) {
        const auto x = random_solenoid(rng, p, depth);
        const auto back = phi_solenoid(tau(x), p, depth);
        for (int j = 0; j <= depth; ++j) {
          ASSERT_LE(circular_distance(back.coordinate_angle(j), x.coordinate_angle(j)), tol);
        }
      }
    }
  }
}

TEST(SolenoidProperty, CoordinatesArePthPowersOfTheNext) {
  RngStream rng(32);
  for (std::int64_t pv : {2, 3, 7}) {
    const Prime p(pv);
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_solenoid(rng, p, 5);
      for (int j = 1; j <= 5; ++j) {
        const double powered = static_cast<double>(pv) * solenoid_project(x, j).angle;
        ASSERT_LE(circular_distance(powered, solenoid_project(x, j - 1).angle), 1e-12);
      }
    }
  }
}

TEST(SolenoidProperty, PhiIsAHomomorphism) {
  RngStream rng(33);
  const Prime p(3);
  for (int i = 0; i < 1000; ++i) {
    RealIntSequence y{sample_uniform_real(rng, -10, 10), {}}, z{sample_uniform_real(rng, -10, 10), {}};
    RealIntSequence yz{y.y0 + z.y0, {}};
    for (int j = 0; j < 3; ++j) {
      y.y_int.push_back(static_cast<std::int64_t>(rng() % 7) - 3);
      z.y_int.push_back(static_cast<std::int64_t>(rng() % 7) - 3);
      yz.y_int.push_back(y.y_int.back() + z.y_int.back());
    }
    const auto lhs = phi_solenoid(yz, p, 3);
    const auto rhs = solenoid_mul(phi_solenoid(y, p, 3), phi_solenoid(z, p, 3));
    ASSERT_LE(circular_distance(lhs.deep_angle(), rhs.deep_angle()), 1e-12);
  }
}

TEST(Solenoid, TruncationKeepsShallowCoordinates) {
  const SolenoidPoint x(Prime(2), 4, 0.123);
  const auto t = x.truncated(2);
  EXPECT_EQ(t.depth(), 2);
  for (int j = 0; j <= 2; ++j) EXPECT_EQ(t.coordinate_angle(j), x.coordinate_angle(j));
}
