#ifndef SH2_VERIFY_HPP
#define SH2_VERIFY_HPP

/**
 * @file verify.hpp
 * @brief Self-check suites behind `sh2 verify`.
 *
 * Each suite samples the library on a fixed-seed grid and compares it with an
 * independent computation: RK4 on the Hamiltonian system, central finite
 * differences of Exp, sign changes of f1 and f4, or the kernel's own
 * identities.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sh2/conjugate.hpp"
#include "sh2/elliptic.hpp"
#include "sh2/error.hpp"
#include "sh2/expmap.hpp"
#include "sh2/phase.hpp"
#include "sh2/strata.hpp"

namespace sh2::verify {

struct Check {
  std::string name;
  double max_residual = 0.0;
  double tol = 0.0;
  std::size_t samples = 0;
  bool pass() const { return max_residual <= tol; }
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
  }
};

inline constexpr std::array<std::string_view, 5> kSuites = {"elliptic", "ode", "jacobian", "strata",
                                                           "interleaving"};

/// Geodesic endpoint by classical RK4 on (gamma, c, x, y, z).
inline GroupElement integrate_geodesic(const PhasePoint& l, double t, double h = 1e-4) {
  using S = std::array<double, 5>;
  auto rhs = [](const S& s) {
    const double ch = std::cos(0.5 * s[0]);
    return S{s[1], -std::sin(s[0]), ch * std::cosh(s[4]), ch * std::sinh(s[4]), std::sin(0.5 * s[0])};
  };
  S s{l.gamma(), l.c(), 0.0, 0.0, 0.0};
  const int n = std::max(1, static_cast<int>(std::ceil(t / h)));
  const double dt = t / n;
  auto step = [](const S& a, double f, const S& b) {
    S r;
    for (int i = 0; i < 5; ++i) r[i] = a[i] + f * b[i];
    return r;
  };
  for (int i = 0; i < n; ++i) {
    const S k1 = rhs(s), k2 = rhs(step(s, dt / 2, k1)), k3 = rhs(step(s, dt / 2, k2)), k4 = rhs(step(s, dt, k3));
    for (int j = 0; j < 5; ++j) s[j] += dt / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return {s[2], s[3], s[4]};
}

/// Finite-difference determinant of Exp over (phi, k, t) for C1, (psi, k, t) for C2.
/// Central differences at h and h/2 with one Richardson step; the k step is
/// scaled by k in C2, where Exp varies in k on a scale ~ k^2 / t.
inline double fd_jacobian(const CaseClass& cc, double t, double h = 1e-4) {
  const double a0[3] = {cc.phi, cc.k, t};
  const double step[3] = {h, cc.id == CaseId::C2 ? h * cc.k : h, h};
  double m[3][3];
  for (int col = 0; col < 3; ++col) {
    auto diff = [&](double s, double out[3]) {
      double ap[3] = {a0[0], a0[1], a0[2]}, am[3] = {a0[0], a0[1], a0[2]};
      ap[col] += s;
      am[col] -= s;
      const auto qp = sh2::exp(CaseClass{cc.id, ap[1], ap[0], cc.s1, cc.s2}, ap[2]);
      const auto qm = sh2::exp(CaseClass{cc.id, am[1], am[0], cc.s1, cc.s2}, am[2]);
      out[0] = (qp.x - qm.x) / (2 * s);
      out[1] = (qp.y - qm.y) / (2 * s);
      out[2] = (qp.z - qm.z) / (2 * s);
    };
    double coarse[3], fine[3];
    diff(step[col], coarse);
    diff(0.5 * step[col], fine);
    for (int row = 0; row < 3; ++row) m[row][col] = (4 * fine[row] - coarse[row]) / 3;
  }
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

namespace detail {

inline CaseClass random_case(CaseId id, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> K(0.05, 0.95), U(0.0, 1.0), P(-2.5, 2.5);
  auto sign = [&] { return U(rng) < 0.5 ? -1 : 1; };
  switch (id) {
    case CaseId::C1: {
      const double k = K(rng);
      return {id, k, U(rng) * 4 * elliptic::complete_K(k), sign(), 1};
    }
    case CaseId::C2: {
      const double k = K(rng);
      return {id, k, U(rng) * 4 * elliptic::complete_K(k), 1, sign()};
    }
    case CaseId::C3: return {id, 1.0, P(rng), sign(), sign()};
    case CaseId::C4: return {id, 0.0, 0.0, sign(), 1};
    case CaseId::C5: return {id, 1.0, 0.0, sign(), 1};
  }
  return {};
}

}  // namespace detail

inline SuiteResult suite_elliptic() {
  Check ident{"jacobi_identities", 0.0, 1e-12, 0};
  Check trip{"round_trips", 0.0, 1e-11, 0};
  for (int i = 0; i < 100; ++i) {
    const double k = 0.999 * i / 99.0;
    for (int j = 0; j < 100; ++j) {
      const double u = -20.0 + 40.0 * j / 99.0;
      const auto t = elliptic::jacobi(u, k);
      ident.max_residual = std::max({ident.max_residual, std::abs(t.sn * t.sn + t.cn * t.cn - 1),
                                     std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1)});
      ++ident.samples;
      const double phi = elliptic::am(u, k);
      trip.max_residual = std::max(trip.max_residual, std::abs(elliptic::incomplete_F(phi, k) - u));
      trip.max_residual = std::max(trip.max_residual,
                                   std::abs(elliptic::legendre_E(phi, k) - elliptic::incomplete_E(u, k)));
      ++trip.samples;
    }
  }
  return {"elliptic", {ident, trip}};
}

inline SuiteResult suite_ode() {
  std::mt19937_64 rng(101);
  SuiteResult out{"ode", {}};
  for (auto id : {CaseId::C1, CaseId::C2, CaseId::C3, CaseId::C4, CaseId::C5}) {
    Check c{"exp_vs_rk4_" + std::string(to_string(id)), 0.0, 1e-7, 0};
    for (int i = 0; i < 6; ++i) {
      const auto cc = detail::random_case(id, rng);
      const auto l = to_phase_point(cc);
      for (double t : {0.5, 1.0, 3.0}) {
        const auto a = sh2::exp(cc, t);
        const auto b = integrate_geodesic(l, t);
        c.max_residual = std::max({c.max_residual, std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
        ++c.samples;
      }
    }
    out.checks.push_back(c);
  }
  return out;
}

inline SuiteResult suite_jacobian() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> T(0.3, 12.0);
  SuiteResult out{"jacobian", {}};
  for (auto id : {CaseId::C1, CaseId::C2}) {
    Check c{"analytic_vs_fd_" + std::string(to_string(id)), 0.0, 1e-4, 0};
    while (c.samples < 50) {
      const auto cc = detail::random_case(id, rng);
      const double t = T(rng);
      const double j = conjugate::jacobian(cc, t).j;
      if (std::abs(j) < 1e-3) continue;  // relative error is meaningless at a zero
      c.max_residual = std::max(c.max_residual, std::abs(fd_jacobian(cc, t) - j) / std::abs(j));
      ++c.samples;
    }
    out.checks.push_back(c);
  }
  return out;
}

inline SuiteResult suite_strata() {
  Check res{"root_residual_relative", 0.0, 1e-12, 0};
  Check inside{"roots_inside_bracket", 0.0, 0.0, 0};
  for (int i = 1; i <= 19; ++i) {
    const double k = 0.05 * i;
    for (int n = 1; n <= 6; ++n) {
      const auto b = strata::root_bracket(n, k);
      const double p1 = strata::root_p1(n, k), p2 = strata::root_p2(n, k);
      res.max_residual = std::max({res.max_residual, std::abs(strata::f1(p1, k)) / (1 + p1),
                                   std::abs(strata::f4(p2, k)) / (1 + p2)});
      const bool ok = b.lo < p2 && p2 < p1 && p1 < b.hi;
      inside.max_residual = std::max(inside.max_residual, ok ? 0.0 : 1.0);
      res.samples += 2;
      inside.samples += 2;
    }
  }
  return {"strata", {res, inside}};
}

inline SuiteResult suite_interleaving() {
  std::mt19937_64 rng(303);
  Check c{"maxwell_conjugate_interleaving", 0.0, 0.0, 0};
  for (int i = 0; i < 25; ++i) {
    for (auto id : {CaseId::C1, CaseId::C2}) {
      const auto cc = detail::random_case(id, rng);
      const auto times = conjugate::conjugate_times(cc, 5);
      for (int n = 1; n <= 5; ++n) {
        const double lo = strata::nth_maxwell_time(cc, n), hi = strata::nth_maxwell_time(cc, n + 1);
        const double t = times[n - 1];
        // violation measured relative to the time scale
        const double v = std::max({0.0, (lo - t) / t, (t - hi) / t});
        c.max_residual = std::max(c.max_residual, v > 1e-14 ? v : 0.0);
        ++c.samples;
      }
    }
  }
  return {"interleaving", {c}};
}

inline SuiteResult run_suite(std::string_view name) {
  if (name == "elliptic") return suite_elliptic();
  if (name == "ode") return suite_ode();
  if (name == "jacobian") return suite_jacobian();
  if (name == "strata") return suite_strata();
  if (name == "interleaving") return suite_interleaving();
  throw DomainError("suite", "unknown suite '" + std::string(name) + "'");
}

}  // namespace sh2::verify

#endif  // SH2_VERIFY_HPP
