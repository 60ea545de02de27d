#ifndef SH2_ELLIPTIC_HPP
#define SH2_ELLIPTIC_HPP

/**
 * @file elliptic.hpp
 * @brief Jacobi elliptic functions and elliptic integrals for real modulus.
 *
 * The modulus is k (not the parameter m = k^2) throughout and is restricted
 * to 0 <= k <= kMaxModulus. Complete integrals use the arithmetic-geometric
 * mean, sn/cn/dn use the AGM backward recurrence for the amplitude, and the
 * incomplete integrals in Legendre form use Carlson's symmetric integrals
 * R_F and R_D.
 *
 * Two argument conventions are used and are not interchangeable:
 *  - incomplete_F and legendre_E take an amplitude angle,
 *  - jacobi, am and incomplete_E take the Jacobi argument u, with
 *    incomplete_E(u) = int_0^u dn^2(s) ds.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sh2/error.hpp"

namespace sh2::elliptic {

/// Largest accepted modulus. K(k) diverges logarithmically as k -> 1.
inline constexpr double kMaxModulus = 1.0 - 1e-9;

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// Throws DomainError unless 0 <= k <= kMaxModulus.
inline void check_modulus(double k, const char* name = "k") {
  if (!(k >= 0.0 && k <= kMaxModulus)) {
    throw DomainError(name, "modulus " + std::to_string(k) + " outside [0, 1-1e-9]");
  }
}

inline void check_finite(double u, const char* name = "u") {
  if (!std::isfinite(u)) throw DomainError(name, "argument must be finite");
}

namespace detail {

/// k' = sqrt(1 - k^2), computed without cancellation near k = 1.
inline double complementary(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

/// Carlson's R_F(x, y, z), at most one argument zero.
inline double carlson_rf(double x, double y, double z) {
  constexpr double kTol = 1e-16;
  double a = (x + y + z) / 3.0;
  const double q = std::pow(3.0 * kTol, -1.0 / 6.0) *
                   std::max({std::abs(a - x), std::abs(a - y), std::abs(a - z)});
  double scale = 1.0;
  for (int i = 0; i < 64 && scale * q >= std::abs(a); ++i) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    a = 0.25 * (a + lam);
    scale *= 0.25;
  }
  const double dx = (a - x) / a, dy = (a - y) / a, dz = -dx - dy;
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

/// Carlson's R_D(x, y, z), z > 0 and at most one of x, y zero.
inline double carlson_rd(double x, double y, double z) {
  constexpr double kTol = 1e-16;
  double a = (x + y + 3.0 * z) / 5.0;
  const double q = std::pow(0.25 * kTol, -1.0 / 6.0) *
                   std::max({std::abs(a - x), std::abs(a - y), std::abs(a - z)});
  double scale = 1.0;
  double sum = 0.0;
  for (int i = 0; i < 64 && scale * q >= std::abs(a); ++i) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sy * sz + sz * sx;
    sum += scale / (sz * (z + lam));
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    a = 0.25 * (a + lam);
    scale *= 0.25;
  }
  const double dx = (a - x) / a, dy = (a - y) / a, dz = -(dx + dy) / 3.0;
  const double xy = dx * dy, zz = dz * dz;
  const double e2 = xy - 6.0 * zz;
  const double e3 = (3.0 * xy - 8.0 * zz) * dz;
  const double e4 = 3.0 * (xy - zz) * zz;
  const double e5 = xy * zz * dz;
  const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 -
                        3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return scale * series / (a * std::sqrt(a)) + 3.0 * sum;
}

/// Amplitude for |u| <= K via the AGM backward recurrence.
inline double amplitude_reduced(double u, double k) {
  constexpr int kMaxLevels = 16;
  double a[kMaxLevels + 1];
  double c[kMaxLevels + 1];
  a[0] = 1.0;
  double b = complementary(k);
  c[0] = k;
  int n = 0;
  while (n < kMaxLevels && std::abs(c[n]) > 1e-16 * a[n]) {
    const double an = a[n];
    a[n + 1] = 0.5 * (an + b);
    c[n + 1] = 0.5 * (an - b);
    b = std::sqrt(an * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) {
    phi = 0.5 * (phi + std::asin(std::clamp(c[i] * std::sin(phi) / a[i], -1.0, 1.0)));
  }
  return phi;
}

/// Splits u = 2*K*j + r with |r| <= K.
struct Reduced {
  double j;
  double r;
};

inline Reduced reduce_half_period(double u, double half_period) {
  const double j = std::nearbyint(u / half_period);
  return {j, u - j * half_period};
}

/// Legendre-form integrals for |phi| <= pi/2.
// 1 - k^2 s^2 written as c^2 + k'^2 s^2: no cancellation when k and s are near 1.
inline double delta_squared(double s, double c, double k) { return c * c + (1.0 - k) * (1.0 + k) * s * s; }

inline double legendre_F_reduced(double phi, double k) {
  const double s = std::sin(phi), c = std::cos(phi);
  return s * carlson_rf(c * c, delta_squared(s, c, k), 1.0);
}

inline double legendre_E_reduced(double phi, double k) {
  const double s = std::sin(phi), c = std::cos(phi);
  const double x = c * c, y = delta_squared(s, c, k);
  return s * carlson_rf(x, y, 1.0) - (k * k / 3.0) * s * s * s * carlson_rd(x, y, 1.0);
}

}  // namespace detail

/// Complete elliptic integral of the first kind K(k).
inline double complete_K(double k) {
  check_modulus(k);
  double a = 1.0;
  double b = detail::complementary(k);
  for (int i = 0; i < 64 && std::abs(a - b) >= 1e-15 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

/// Complete elliptic integral of the second kind E(k).
inline double complete_E(double k) {
  check_modulus(k);
  // E = K (1 - sum 2^(n-1) c_n^2), c_0 = k.
  double a = 1.0;
  double b = detail::complementary(k);
  double weight = 0.5;
  double sum = weight * k * k;
  for (int i = 0; i < 64 && std::abs(a - b) >= 1e-15 * a; ++i) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    weight *= 2.0;
    sum += weight * c * c;
  }
  const double K = std::numbers::pi / (a + b);
  return K * (1.0 - sum);
}

/// Jacobi amplitude am(u, k), the inverse of incomplete_F in its first argument.
inline double am(double u, double k) {
  check_modulus(k);
  check_finite(u);
  if (k == 0.0) return u;
  const auto [j, r] = detail::reduce_half_period(u, 2.0 * complete_K(k));
  return j * std::numbers::pi + detail::amplitude_reduced(r, k);
}

/// sn, cn, dn at (u, k). Periods: 4K for sn and cn, 2K for dn.
inline JacobiTriple jacobi(double u, double k) {
  check_modulus(k);
  check_finite(u);
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};
  const auto [j, r] = detail::reduce_half_period(u, 2.0 * complete_K(k));
  const double phi = detail::amplitude_reduced(r, k);
  // Shifting u by 2K shifts the amplitude by pi.
  const double parity = std::fmod(std::abs(j), 2.0) == 0.0 ? 1.0 : -1.0;
  const double sn = parity * std::sin(phi);
  const double cn = parity * std::cos(phi);
  const double dn = std::sqrt((1.0 - k * sn) * (1.0 + k * sn));
  return {sn, cn, dn};
}

/// Incomplete integral of the first kind F(phi, k) with phi an amplitude angle.
inline double incomplete_F(double phi, double k) {
  check_modulus(k);
  check_finite(phi, "phi");
  if (k == 0.0) return phi;
  const auto [j, r] = detail::reduce_half_period(phi, std::numbers::pi);
  const double base = j == 0.0 ? 0.0 : 2.0 * j * complete_K(k);
  return base + detail::legendre_F_reduced(r, k);
}

/// Incomplete integral of the second kind in Legendre form, amplitude argument:
/// int_0^phi sqrt(1 - k^2 sin^2 s) ds.
inline double legendre_E(double phi, double k) {
  check_modulus(k);
  check_finite(phi, "phi");
  if (k == 0.0) return phi;
  const auto [j, r] = detail::reduce_half_period(phi, std::numbers::pi);
  const double base = j == 0.0 ? 0.0 : 2.0 * j * complete_E(k);
  return base + detail::legendre_E_reduced(r, k);
}

/// Jacobi epsilon function E(u, k) = int_0^u dn^2(s, k) ds = legendre_E(am(u), k).
inline double incomplete_E(double u, double k) {
  check_modulus(k);
  check_finite(u);
  if (k == 0.0) return u;
  const double K = complete_K(k);
  const auto [j, r] = detail::reduce_half_period(u, 2.0 * K);
  const double base = j == 0.0 ? 0.0 : 2.0 * j * complete_E(k);
  return base + detail::legendre_E_reduced(detail::amplitude_reduced(r, k), k);
}

}  // namespace sh2::elliptic

#endif  // SH2_ELLIPTIC_HPP
