#ifndef SH2_EXPMAP_HPP
#define SH2_EXPMAP_HPP

/**
 * @file expmap.hpp
 * @brief Closed-form exponential map of the sub-Riemannian problem on SH(2).
 *
 * Geodesics satisfy x' = cos(g/2) cosh z, y' = cos(g/2) sinh z, z' = sin(g/2)
 * with (g, c) following the pendulum. Exp(lambda, t) is evaluated in closed
 * form for each stratum; C4 and C5 are straight lines along x and z.
 */

#include <cmath>

#include "sh2/elliptic.hpp"
#include "sh2/error.hpp"
#include "sh2/phase.hpp"
#include "sh2/root_functions.hpp"

namespace sh2 {

/// A point (x, y, z) of SH(2).
struct GroupElement {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Rectifying coordinates (R1, R2, z) of a group element.
struct Rectifying {
  double r1;
  double r2;
  double z;
};

/// R1 = y cosh(z/2) - x sinh(z/2), R2 = x cosh(z/2) - y sinh(z/2).
inline Rectifying rectifying(const GroupElement& q) {
  const double ch = std::cosh(0.5 * q.z), sh = std::sinh(0.5 * q.z);
  return {q.y * ch - q.x * sh, q.x * ch - q.y * sh, q.z};
}

/// Time reparametrization used by the strata and Jacobian formulas:
/// C1/C3: p = t/2, tau = phi + t/2;  C2: p = t/(2k), tau = psi + t/(2k).
struct ExtremalClock {
  double p;
  double tau;
  double k;
  CaseId id;
};

namespace detail {

inline void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("t", "time must be finite and >= 0");
}

// dn - k cn without cancellation when cn > 0: (dn - k cn)(dn + k cn) = 1 - k^2.
inline double dn_minus_kcn(const elliptic::JacobiTriple& j, double k) {
  if (j.cn > 0) return (1 - k) * (1 + k) / (j.dn + k * j.cn);
  return j.dn - k * j.cn;
}

inline double dn_plus_kcn(const elliptic::JacobiTriple& j, double k) {
  if (j.cn < 0) return (1 - k) * (1 + k) / (j.dn - k * j.cn);
  return j.dn + k * j.cn;
}

/// log(cosh(x)) without overflow.
inline double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

inline GroupElement exp_oscillating(const CaseClass& cc, double t) {
  const double k = cc.k;
  const auto j0 = elliptic::jacobi(cc.phi, k);
  const auto jt = elliptic::jacobi(cc.phi + t, k);
  const double w = 1.0 / dn_minus_kcn(j0, k);
  const double v = 1.0 / dn_plus_kcn(j0, k);  // = 1 / (w (1-k^2))
  const double dE = elliptic::incomplete_E(cc.phi + t, k) - elliptic::incomplete_E(cc.phi, k);
  const double dsn = jt.sn - j0.sn;
  const double s1 = cc.s1;
  return {0.5 * s1 * ((w + v) * dE + k * (v - w) * dsn),
          0.5 * ((w - v) * dE - k * (v + w) * dsn),
          s1 * std::log(dn_minus_kcn(jt, k) * w)};
}

inline GroupElement exp_rotating(const CaseClass& cc, double t) {
  const double k = cc.k;
  const double psi_t = cc.phi + t / k;
  const auto j0 = elliptic::jacobi(cc.phi, k);
  const auto jt = elliptic::jacobi(psi_t, k);
  const double w = 1.0 / dn_minus_kcn(j0, k);
  const double v = 1.0 / dn_plus_kcn(j0, k);
  const double dE = elliptic::incomplete_E(psi_t, k) - elliptic::incomplete_E(cc.phi, k) -
                    (1 - k) * (1 + k) * (t / k);
  const double dsn = jt.sn - j0.sn;
  const double s2 = cc.s2;
  return {0.5 * (v - w) * dE + 0.5 * k * (w + v) * dsn,
          -0.5 * s2 * (v + w) * dE + 0.5 * s2 * k * (w - v) * dsn,
          s2 * std::log(dn_minus_kcn(jt, k) * w)};
}

inline GroupElement exp_separatrix(const CaseClass& cc, double t) {
  const double phi_t = cc.phi + t;
  const double a = t / std::cosh(cc.phi);
  // cosh(phi) (tanh(phi_t) - tanh(phi)) = sinh(t) / cosh(phi_t)
  const double b = std::sinh(t) / std::cosh(phi_t);
  return {0.5 * cc.s1 * (a + b), 0.5 * cc.s2 * (a - b),
          cc.s1 * cc.s2 * (log_cosh(phi_t) - log_cosh(cc.phi))};
}

}  // namespace detail

/// Exp(lambda, t): endpoint at time t of the normal geodesic from the identity.
inline GroupElement exp(const CaseClass& cc, double t) {
  detail::check_time(t);
  if (t == 0.0) return {};
  switch (cc.id) {
    case CaseId::C1: return detail::exp_oscillating(cc, t);
    case CaseId::C2: return detail::exp_rotating(cc, t);
    case CaseId::C3: return detail::exp_separatrix(cc, t);
    case CaseId::C4: return {cc.s1 * t, 0.0, 0.0};
    case CaseId::C5: return {0.0, 0.0, cc.s1 * t};
  }
  return {};
}

inline GroupElement exp(const PhasePoint& lambda, double t) { return exp(classify(lambda), t); }

inline ExtremalClock clock(const CaseClass& cc, double t) {
  detail::check_time(t);
  switch (cc.id) {
    case CaseId::C1:
    case CaseId::C3: return {0.5 * t, cc.phi + 0.5 * t, cc.k, cc.id};
    case CaseId::C2: {
      const double p = 0.5 * t / cc.k;
      return {p, cc.phi + p, cc.k, cc.id};
    }
    default: break;
  }
  throw DomainError("lambda", "clock is defined only for C1, C2, C3");
}

/// Closed forms of sinh z, sinh(z/2), cosh(z/2), R1, R2 along a geodesic,
/// written in the (p, tau) clock.
struct TrajectoryIdentities {
  double sinh_z;
  double sinh_half_z;
  double cosh_half_z;
  double r1;
  double r2;
};

inline TrajectoryIdentities trajectory_identities(const ExtremalClock& ck, int s1, int s2) {
  const double p = ck.p, tau = ck.tau, k = ck.k;
  if (ck.id == CaseId::C3) {
    const double delta = std::cosh(tau) * std::cosh(tau) + std::sinh(p) * std::sinh(p);
    const double root = std::sqrt(delta);
    const double ss = static_cast<double>(s1 * s2);
    return {2.0 * ss * std::sinh(tau) * std::sinh(p) * std::cosh(tau) * std::cosh(p) / delta,
            ss * std::sinh(tau) * std::sinh(p) / root, std::cosh(tau) * std::cosh(p) / root,
            s2 * (2.0 * p - std::sinh(2.0 * p)) / (2.0 * root),
            s1 * (2.0 * p + std::sinh(2.0 * p)) / (2.0 * root)};
  }
  if (ck.id != CaseId::C1 && ck.id != CaseId::C2) {
    throw DomainError("clock", "identities are defined only for C1, C2, C3");
  }
  const auto jp = elliptic::jacobi(p, k);
  const auto jt = elliptic::jacobi(tau, k);
  const double delta = 1.0 - k * k * jp.sn * jp.sn * jt.sn * jt.sn;
  const double root = std::sqrt(delta);
  const double kp2 = (1 - k) * (1 + k);
  const double s = ck.id == CaseId::C1 ? s1 : s2;
  TrajectoryIdentities out{};
  out.sinh_z = s * 2.0 * k * jp.sn * jt.sn / delta;
  out.sinh_half_z = s * k * jp.sn * jt.sn / root;
  out.cosh_half_z = 1.0 / root;
  if (ck.id == CaseId::C1) {
    out.r1 = 2.0 * k / kp2 * jt.cn * strata::f1(p, k) / root;
    out.r2 = 2.0 * s1 / kp2 * jt.dn * strata::f2(p, k) / root;
  } else {
    out.r1 = 2.0 * s2 / kp2 * jt.dn * strata::f3(p, k) / root;
    out.r2 = 2.0 * k / kp2 * jt.cn * strata::f4(p, k) / root;
  }
  return out;
}

}  // namespace sh2

#endif  // SH2_EXPMAP_HPP
