#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sh2/elliptic.hpp"

namespace el = sh2::elliptic;
using std::numbers::pi;

TEST(CompleteK, DegenerateModulus) { EXPECT_DOUBLE_EQ(el::complete_K(0.0), pi / 2); }

TEST(CompleteK, MatchesQuadrature) {
  // 1.99530277766472940382 (30-digit reference); quadrature is the independent route.
  EXPECT_NEAR(el::complete_K(0.8), 1.9953027776647294, 1e-14);
  for (double k : {0.1, 0.5, 0.9, 0.99}) {
    EXPECT_NEAR(el::complete_K(k), sh2::oracle::quad_K(k), 1e-11) << "k=" << k;
  }
}

TEST(CompleteK, StrictlyIncreasing) {
  double prev = el::complete_K(0.0);
  for (int i = 1; i <= 100; ++i) {
    const double k = std::min(0.01 * i, el::kMaxModulus);
    const double cur = el::complete_K(k);
    EXPECT_GT(cur, prev);
    prev = cur;
  }
}

TEST(CompleteK, CapIsFiniteAboveCapThrows) {
  EXPECT_TRUE(std::isfinite(el::complete_K(el::kMaxModulus)));
  EXPECT_THROW(el::complete_K(1.0 - 1e-10), sh2::DomainError);
  EXPECT_THROW(el::complete_K(-0.1), sh2::DomainError);
  EXPECT_THROW(el::complete_K(std::nan("")), sh2::DomainError);
}

TEST(CompleteE, ValuesAndPositivity) {
  EXPECT_DOUBLE_EQ(el::complete_E(0.0), pi / 2);
  EXPECT_NEAR(el::complete_E(0.5), 1.4674622093394272, 1e-14);
  EXPECT_NEAR(el::complete_E(0.5), sh2::oracle::quad_E(pi / 2, 0.5), 1e-11);
  for (int i = 1; i <= 9; ++i) {
    const double k = 0.1 * i;
    EXPECT_GT(el::complete_E(k) - (1 - k * k) * el::complete_K(k), 0.0) << "k=" << k;
  }
  EXPECT_NEAR(el::complete_E(el::kMaxModulus), 1.0, 1e-7);
}

TEST(Jacobi, OriginAndQuarterPeriod) {
  for (double k : {0.0, 0.3, 0.9}) {
    const auto t = el::jacobi(0.0, k);
    EXPECT_EQ(t.sn, 0.0);
    EXPECT_EQ(t.cn, 1.0);
    EXPECT_EQ(t.dn, 1.0);
  }
  const double K = el::complete_K(0.5);
  const auto q = el::jacobi(K, 0.5);
  EXPECT_NEAR(q.sn, 1.0, 1e-15);
  EXPECT_NEAR(q.cn, 0.0, 1e-15);
  EXPECT_NEAR(q.dn, std::sqrt(0.75), 1e-15);
}

TEST(Jacobi, MatchesQuadratureInversion) {
  // Oracle: amplitude from bisection on the quadrature F(phi) = u.
  const double phi = sh2::oracle::quad_am(1.3, 0.7);
  const auto t = el::jacobi(1.3, 0.7);
  EXPECT_NEAR(t.sn, std::sin(phi), 1e-11);
  EXPECT_NEAR(t.cn, std::cos(phi), 1e-11);
  EXPECT_NEAR(t.dn, std::sqrt(1 - 0.49 * std::sin(phi) * std::sin(phi)), 1e-11);
  // 30-digit reference values for the same point.
  EXPECT_NEAR(t.sn, 0.92146722251141985, 1e-14);
  EXPECT_NEAR(t.cn, 0.38845612086449283, 1e-14);
  EXPECT_NEAR(t.dn, 0.76415973287014662, 1e-14);
}

TEST(Jacobi, PythagoreanIdentitiesOnGrid) {
  double worst = 0.0;
  for (double k : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) {
    for (int i = 0; i <= 400; ++i) {
      const double u = -20.0 + 0.1 * i;
      const auto t = el::jacobi(u, k);
      worst = std::max({worst, std::abs(t.sn * t.sn + t.cn * t.cn - 1),
                        std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1)});
      EXPECT_GE(t.dn, 1 - k - 1e-15);
      EXPECT_LE(t.dn, 1.0 + 1e-15);
    }
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Jacobi, Periodicity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-10, 10), Kd(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double u = U(rng), k = Kd(rng);
    const double K = el::complete_K(k);
    const auto a = el::jacobi(u, k), b = el::jacobi(u + 4 * K, k), c = el::jacobi(u + 2 * K, k);
    EXPECT_NEAR(a.sn, b.sn, 1e-10);
    EXPECT_NEAR(a.cn, b.cn, 1e-10);
    EXPECT_NEAR(a.dn, c.dn, 1e-10);
  }
}

TEST(Jacobi, ZeroModulusIsTrigonometric) {
  for (int i = -50; i <= 50; ++i) {
    const double u = 0.37 * i;
    const auto t = el::jacobi(u, 0.0);
    EXPECT_NEAR(t.sn, std::sin(u), 1e-12);
    EXPECT_NEAR(t.cn, std::cos(u), 1e-12);
    EXPECT_EQ(t.dn, 1.0);
    EXPECT_NEAR(el::incomplete_E(u, 0.0), u, 1e-12);
    EXPECT_NEAR(el::incomplete_F(u, 0.0), u, 1e-12);
  }
}

TEST(Jacobi, RejectsNonFiniteArgument) {
  EXPECT_THROW(el::jacobi(INFINITY, 0.5), sh2::DomainError);
  EXPECT_THROW(el::jacobi(1.0, 1.5), sh2::DomainError);
}

TEST(IncompleteF, ValuesAgainstQuadrature) {
  EXPECT_EQ(el::incomplete_F(0.0, 0.4), 0.0);
  EXPECT_NEAR(el::incomplete_F(pi / 2, 0.8), el::complete_K(0.8), 1e-14);
  EXPECT_NEAR(el::incomplete_F(1.0, 0.6), sh2::oracle::quad_F(1.0, 0.6), 1e-11);
  EXPECT_NEAR(el::incomplete_F(1.0, 0.6), 1.0562731098220990, 1e-14);
  for (double phi : {-4.0, -1.0, 0.3, 2.0, 5.5}) {
    EXPECT_NEAR(el::incomplete_F(phi, 0.75), sh2::oracle::quad_F(phi, 0.75), 1e-11) << phi;
    EXPECT_NEAR(el::incomplete_F(-phi, 0.75), -el::incomplete_F(phi, 0.75), 1e-15);
  }
}

TEST(LegendreE, ValuesAgainstQuadrature) {
  EXPECT_NEAR(el::legendre_E(1.0, 0.6), 0.94868994060357467, 1e-14);
  for (double phi : {-4.0, 0.3, 2.0, 7.0}) {
    EXPECT_NEAR(el::legendre_E(phi, 0.9), sh2::oracle::quad_E(phi, 0.9), 1e-11) << phi;
  }
}

TEST(Amplitude, InverseOfF) {
  EXPECT_EQ(el::am(0.0, 0.3), 0.0);
  EXPECT_NEAR(el::am(el::complete_K(0.6), 0.6), pi / 2, 1e-14);
  EXPECT_NEAR(el::am(el::incomplete_F(0.7, 0.4), 0.4), 0.7, 1e-11);
  double worst = 0.0;
  for (double k : {0.0, 0.2, 0.5, 0.8, 0.95, 0.999}) {
    for (int i = -60; i <= 60; ++i) {
      const double x = 0.25 * i;
      worst = std::max(worst, std::abs(el::am(el::incomplete_F(x, k), k) - x));
    }
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(IncompleteE, BasicProperties) {
  EXPECT_EQ(el::incomplete_E(0.0, 0.5), 0.0);
  const double K = el::complete_K(0.5);
  EXPECT_NEAR(el::incomplete_E(2 * K, 0.5), 2 * el::complete_E(0.5), 1e-13);
  // quadrature of dn^2 over [0, 2K], dn from the quadrature amplitude
  const double quad = sh2::oracle::quad_E(pi, 0.5);
  EXPECT_NEAR(el::incomplete_E(2 * K, 0.5), quad, 1e-11);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-15, 15), Kd(0.0, 0.98);
  for (int i = 0; i < 200; ++i) {
    const double u = U(rng), k = Kd(rng);
    const double Kk = el::complete_K(k), Ek = el::complete_E(k);
    EXPECT_NEAR(el::incomplete_E(-u, k), -el::incomplete_E(u, k), 1e-12);
    EXPECT_NEAR(el::incomplete_E(u + 4 * Kk, k), el::incomplete_E(u, k) + 4 * Ek, 1e-11);
  }
}

TEST(IncompleteE, DerivativeIsDnSquared) {
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (double k : {0.1, 0.5, 0.9, 0.99}) {
    for (int i = 0; i <= 200; ++i) {
      const double u = -10.0 + 0.1 * i;
      const double fd = (el::incomplete_E(u + h, k) - el::incomplete_E(u - h, k)) / (2 * h);
      const double dn = el::jacobi(u, k).dn;
      worst = std::max(worst, std::abs(fd - dn * dn));
    }
  }
  EXPECT_LE(worst, 1e-7);
}

TEST(Amplitude, RoundTripAtTheCap) {
  // near u = K both k and sn are close to 1
  for (double k : {1 - 1e-8, el::kMaxModulus}) {
    const double K = el::complete_K(k);
    for (double u : {0.99 * K, K - 0.04, K, 3 * K - 0.01}) {
      EXPECT_NEAR(el::incomplete_F(el::am(u, k), k), u, 1e-11) << "k=" << k << " u=" << u;
    }
  }
}
