#ifndef SH2_CONJUGATE_HPP
#define SH2_CONJUGATE_HPP

/**
 * @file conjugate.hpp
 * @brief Jacobian of the exponential map and conjugate times.
 *
 * The m-th conjugate time lies in a bracket bounded by consecutive Maxwell-type
 * instants 4nK and 2p1^n (scaled by k in C2). Roots of J are located
 * sequentially: the m-th is searched in its bracket strictly after the
 * (m-1)-th, so a zero shared by two adjacent brackets is counted once.
 */

#include <cmath>
#include <vector>

#include "sh2/elliptic.hpp"
#include "sh2/error.hpp"
#include "sh2/expmap.hpp"
#include "sh2/phase.hpp"
#include "sh2/strata.hpp"

namespace sh2::conjugate {

using strata::BracketKind;
using strata::TimeBracket;

struct JacobianValue {
  double j1;  ///< numerator J1(p, tau, k)
  double j;   ///< full Jacobian for the case
};

/// J1(p, tau, k) = -4k (a1 + a2 + a3).
inline double j1(double p, double tau, double k) {
  const auto jp = elliptic::jacobi(p, k);
  const auto jt = elliptic::jacobi(tau, k);
  const double E = elliptic::incomplete_E(p, k);
  const double kp2p = (1 - k) * (1 + k) * p;
  const double sp2 = jp.sn * jp.sn;
  const double a1 = jp.sn * jp.cn * jp.dn * (2.0 * E - kp2p);
  const double a2 = -jp.dn * jp.dn * sp2 - k * k * sp2 * jt.cn * jt.cn;
  const double a3 = E * (sp2 - jt.sn * jt.sn) * (E - kp2p);
  return -4.0 * k * (a1 + a2 + a3);
}

/// Determinant of d Exp / d(phi, k, t) in C1 and d(psi, k, t) in C2.
inline JacobianValue jacobian(const CaseClass& cc, double t) {
  if (cc.id != CaseId::C1 && cc.id != CaseId::C2) {
    throw DomainError("lambda", "Jacobian is defined only for C1 and C2");
  }
  if (!(t > 0)) throw DomainError("t", "must be positive");
  const auto ck = clock(cc, t);
  const double k = cc.k;
  const auto jp = elliptic::jacobi(ck.p, k);
  const auto jt = elliptic::jacobi(ck.tau, k);
  const double kp2 = (1 - k) * (1 + k);
  const double delta = 1.0 - k * k * jp.sn * jp.sn * jt.sn * jt.sn;
  const double num = j1(ck.p, ck.tau, k);
  const double j = num / (kp2 * kp2 * delta);
  return {num, cc.id == CaseId::C1 ? j : -k * j};
}

/// Limit of J1 / k as k -> 0, used for C4: 4 sin p (sin p - p cos p), p = t/2.
inline double degenerate_j1_over_k(double p) {
  return 4.0 * std::sin(p) * (std::sin(p) - p * std::cos(p));
}

/// Bracket of the m-th conjugate time (1-based).
/// C1: m = 2n-1 -> [4nK, 2p1^n], m = 2n -> [2p1^n, 4(n+1)K]; C2 scaled by k;
/// C4 uses the k = 0 values 2n pi and 2 p1^n(0).
inline TimeBracket nth_conjugate_bracket(const CaseClass& cc, int m) {
  if (m < 1) throw DomainError("m", "index must be >= 1");
  double k = 0.0, scale = 1.0;
  switch (cc.id) {
    case CaseId::C1: k = cc.k; break;
    case CaseId::C2: k = cc.k; scale = cc.k; break;
    case CaseId::C4: break;
    default: throw DomainError("lambda", "no conjugate points in C3 and C5");
  }
  const double K = elliptic::complete_K(k);
  const int n = (m + 1) / 2;
  const double root = 2.0 * strata::root_p1(n, k);
  if (m % 2 == 1) return {scale * 4.0 * n * K, scale * root, m, BracketKind::conjugate_odd};
  return {scale * root, scale * 4.0 * (n + 1) * K, m, BracketKind::conjugate_even};
}

inline TimeBracket first_conjugate_bracket(const CaseClass& cc) {
  if (cc.id != CaseId::C1 && cc.id != CaseId::C2) {
    throw DomainError("lambda", "first conjugate bracket is defined for C1 and C2");
  }
  return nth_conjugate_bracket(cc, 1);
}

inline constexpr int kProbes = 32;
inline constexpr int kDenseProbes = 4096;
inline constexpr double kEndpointTol = 1e-12;

namespace detail {

inline double bisect_root(const CaseClass& cc, double lo, double hi, double flo) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = jacobian(cc, mid).j;
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// First root of J in [b.lo, b.hi] after `prev` (prev <= b.lo). When
/// prev == b.lo that endpoint zero was already counted and is skipped.
inline double root_in_bracket(const CaseClass& cc, const TimeBracket& b, double prev) {
  const bool claimed = prev >= b.lo;
  const double width = b.hi - b.lo;
  auto at = [&](int i, int count) { return i == count ? b.hi : b.lo + width * i / count; };

  std::vector<double> probe(kProbes + 1);
  double scale = 0.0;
  for (int i = 0; i <= kProbes; ++i) {
    probe[i] = jacobian(cc, at(i, kProbes)).j;
    scale = std::max(scale, std::abs(probe[i]));
  }
  if (scale == 0.0) scale = 1.0;
  const double zero = kEndpointTol * scale;
  if (!claimed && std::abs(probe[0]) <= zero) return b.lo;

  auto scan = [&](int count, const std::vector<double>& values, double& out) {
    double tprev = claimed ? b.lo + 1e-9 * width : b.lo;
    double ref = claimed ? jacobian(cc, tprev).j : values[0];
    for (int i = 1; i <= count; ++i) {
      const double ti = at(i, count);
      const double fi = values[i];
      if (i == count && std::abs(fi) <= zero) {
        out = b.hi;
        return true;
      }
      if (fi == 0.0) {
        out = ti;
        return true;
      }
      if ((fi < 0) != (ref < 0)) {
        out = bisect_root(cc, tprev, ti, ref);
        return true;
      }
      tprev = ti;
      ref = fi;
    }
    return false;
  };

  double out;
  if (scan(kProbes, probe, out)) return out;
  std::vector<double> dense(kDenseProbes + 1);
  for (int i = 0; i <= kDenseProbes; ++i) dense[i] = jacobian(cc, at(i, kDenseProbes)).j;
  if (scan(kDenseProbes, dense, out)) return out;
  throw InvariantViolation("no sign change of the Jacobian in the conjugate bracket");
}

}  // namespace detail

/// The first `count` conjugate times, in increasing order.
inline std::vector<double> conjugate_times(const CaseClass& cc, int count) {
  if (count < 1) throw DomainError("m", "index must be >= 1");
  std::vector<double> out;
  out.reserve(count);
  if (cc.id == CaseId::C4) {
    // J / k -> 4 sin p (sin p - p cos p): zeros exactly at the bracket lows
    for (int m = 1; m <= count; ++m) out.push_back(nth_conjugate_bracket(cc, m).lo);
    return out;
  }
  check_case_class(cc);
  double prev = -1.0;
  for (int m = 1; m <= count; ++m) {
    prev = detail::root_in_bracket(cc, nth_conjugate_bracket(cc, m), prev);
    out.push_back(prev);
  }
  return out;
}

/// m-th conjugate time (1-based). C4 returns 2n pi and 2 p1^n(0) directly.
inline double refine_conjugate_time(const CaseClass& cc, int m) {
  return conjugate_times(cc, m).back();
}

}  // namespace sh2::conjugate

#endif  // SH2_CONJUGATE_HPP
