#ifndef SH2_PHASE_HPP
#define SH2_PHASE_HPP

/**
 * @file phase.hpp
 * @brief Pendulum phase cylinder: stratification C1..C5 and elliptic coordinates.
 *
 * The vertical subsystem is the pendulum gamma' = c, c' = -sin(gamma) on the
 * doubled circle gamma in R/4piZ, with energy E = c^2/2 - cos(gamma).
 *
 * Coordinate conventions (phi advances with unit speed along the flow, psi
 * with speed 1/k):
 *  - C1, E in (-1,1):  k = sqrt((E+1)/2),
 *        sin(gamma/2) = s1 k sn(phi), cos(gamma/2) = s1 dn(phi), c = 2k cn(phi)
 *  - C2, E > 1:        k = sqrt(2/(E+1)),
 *        sin(gamma/2) = s2 sn(psi), cos(gamma/2) = cn(psi), c = 2 s2 dn(psi)/k
 *  - C3, E = 1, c != 0:
 *        sin(gamma/2) = s1 s2 tanh(phi), cos(gamma/2) = s1 sech(phi), c = 2 s2 sech(phi)
 *  - C4, C5: pendulum at rest; s1 carries cos(gamma/2) resp. sin(gamma/2).
 */

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "sh2/elliptic.hpp"
#include "sh2/error.hpp"

namespace sh2 {

enum class CaseId { C1 = 1, C2, C3, C4, C5 };

inline std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::C1: return "C1";
    case CaseId::C2: return "C2";
    case CaseId::C3: return "C3";
    case CaseId::C4: return "C4";
    case CaseId::C5: return "C5";
  }
  return "?";
}

inline std::optional<CaseId> parse_case(std::string_view s) {
  if (s == "C1" || s == "c1" || s == "1") return CaseId::C1;
  if (s == "C2" || s == "c2" || s == "2") return CaseId::C2;
  if (s == "C3" || s == "c3" || s == "3") return CaseId::C3;
  if (s == "C4" || s == "c4" || s == "4") return CaseId::C4;
  if (s == "C5" || s == "c5" || s == "5") return CaseId::C5;
  return std::nullopt;
}

/// Initial covector (gamma, c); gamma is kept in [0, 4pi).
class PhasePoint {
public:
  PhasePoint(double gamma, double c) : gamma_(reduce(gamma)), c_(c) {
    if (!std::isfinite(gamma)) throw DomainError("gamma", "must be finite");
    if (!std::isfinite(c)) throw DomainError("c", "must be finite");
  }

  double gamma() const noexcept { return gamma_; }
  double c() const noexcept { return c_; }

private:
  static double reduce(double g) {
    constexpr double period = 4.0 * std::numbers::pi;
    double r = std::fmod(g, period);
    if (r < 0) r += period;
    return r >= period ? 0.0 : r;
  }

  double gamma_;
  double c_;
};

/// Stratum of the phase cylinder with elliptic coordinates.
///
/// `phi` is phi for C1/C3 and psi = phi/k for C2. k is 0 for C4 and the
/// sentinel 1 for C3/C5. Unused signs are +1.
struct CaseClass {
  CaseId id = CaseId::C4;
  double k = 0.0;
  double phi = 0.0;
  int s1 = 1;
  int s2 = 1;
};

inline constexpr double kClassifyTol = 1e-10;

inline double energy(const PhasePoint& lambda) {
  return 0.5 * lambda.c() * lambda.c() - std::cos(lambda.gamma());
}

namespace detail {

inline int sign_of(double v) { return v < 0 ? -1 : 1; }

/// Reduces an amplitude angle to [0, 2pi) and maps it to [0, 4K).
inline double fundamental_coordinate(double sn_like, double cn_like, double k) {
  double theta = std::atan2(sn_like, cn_like);
  if (theta < 0) theta += 2.0 * std::numbers::pi;
  double u = elliptic::incomplete_F(theta, k);
  if (u >= 4.0 * elliptic::complete_K(k)) u = 0.0;
  return u;
}

// k^2 for C1 is (E+1)/2 = c^2/4 + sin^2(gamma/2); written without the
// cancellation in E + 1 near the stable equilibrium.
inline double oscillation_radius(const PhasePoint& l) {
  return std::hypot(0.5 * l.c(), std::sin(0.5 * l.gamma()));
}

}  // namespace detail

/// Elliptic coordinates of a point in C1, C2 or C3 (case chosen by energy).
inline CaseClass elliptic_coordinates(const PhasePoint& lambda, double tol = kClassifyTol) {
  const double E = energy(lambda);
  const double half = 0.5 * lambda.gamma();
  const double sh = std::sin(half), ch = std::cos(half);
  const double c = lambda.c();
  const double rho = detail::oscillation_radius(lambda);

  const bool at_rest = std::abs(c) <= tol;
  if ((std::abs(E + 1) <= tol && at_rest) || (std::abs(E - 1) <= tol && at_rest)) {
    throw DomainError("lambda", "equilibrium point (C4/C5) has no elliptic coordinates");
  }

  // Points whose modulus would exceed the cap are treated as separatrix points.
  const bool separatrix = std::abs(E - 1) <= tol || (E < 1 && rho > elliptic::kMaxModulus) ||
                          (E > 1 && 1.0 / rho > elliptic::kMaxModulus);
  CaseClass out;
  if (separatrix) {
    out.id = CaseId::C3;
    out.k = 1.0;
    out.s1 = detail::sign_of(ch);
    out.s2 = detail::sign_of(c);
    // sinh(phi) = tanh/sech with sech(phi) = |c|/2 on the separatrix.
    out.phi = std::asinh(out.s1 * out.s2 * sh / (0.5 * std::abs(c)));
    return out;
  }
  if (E < 1) {
    out.id = CaseId::C1;
    out.k = rho;
    out.s1 = detail::sign_of(ch);
    out.phi = detail::fundamental_coordinate(out.s1 * sh / rho, 0.5 * c / rho, rho);
    return out;
  }
  out.id = CaseId::C2;
  out.k = 1.0 / rho;
  out.s2 = detail::sign_of(c);
  out.phi = detail::fundamental_coordinate(out.s2 * sh, ch, out.k);
  return out;
}

/// Stratum of lambda with its coordinates. Total on the cylinder.
inline CaseClass classify(const PhasePoint& lambda, double tol = kClassifyTol) {
  const double E = energy(lambda);
  const bool at_rest = std::abs(lambda.c()) <= tol;
  const double half = 0.5 * lambda.gamma();
  if (std::abs(E - 1) <= tol && at_rest) {
    return {CaseId::C5, 1.0, 0.0, detail::sign_of(std::sin(half)), 1};
  }
  if (std::abs(E + 1) <= tol && at_rest) {
    return {CaseId::C4, 0.0, 0.0, detail::sign_of(std::cos(half)), 1};
  }
  return elliptic_coordinates(lambda, tol);
}

/// Inverse of classify: the covector with the given coordinates.
inline PhasePoint to_phase_point(const CaseClass& cc) {
  switch (cc.id) {
    case CaseId::C1: {
      const auto j = elliptic::jacobi(cc.phi, cc.k);
      return {2.0 * std::atan2(cc.s1 * cc.k * j.sn, cc.s1 * j.dn), 2.0 * cc.k * j.cn};
    }
    case CaseId::C2: {
      const auto j = elliptic::jacobi(cc.phi, cc.k);
      return {2.0 * std::atan2(cc.s2 * j.sn, j.cn), 2.0 * cc.s2 * j.dn / cc.k};
    }
    case CaseId::C3: {
      const double sech = 1.0 / std::cosh(cc.phi);
      return {2.0 * std::atan2(cc.s1 * cc.s2 * std::tanh(cc.phi), cc.s1 * sech),
              2.0 * cc.s2 * sech};
    }
    case CaseId::C4: return {cc.s1 > 0 ? 0.0 : 2.0 * std::numbers::pi, 0.0};
    case CaseId::C5: return {cc.s1 > 0 ? std::numbers::pi : 3.0 * std::numbers::pi, 0.0};
  }
  throw DomainError("case", "unknown case");
}

/// Coordinates of the pendulum state after time t (phi -> phi + t, psi -> psi + t/k).
/// The returned phi is not reduced.
inline CaseClass advance(CaseClass cc, double t) {
  switch (cc.id) {
    case CaseId::C1:
    case CaseId::C3: cc.phi += t; break;
    case CaseId::C2: cc.phi += t / cc.k; break;
    default: break;
  }
  return cc;
}

/// (sin(gamma_t/2), cos(gamma_t/2)) along the pendulum flow.
struct HalfAngle {
  double sin;
  double cos;
};

inline HalfAngle half_angle_at(const CaseClass& cc, double t) {
  const CaseClass at = advance(cc, t);
  switch (cc.id) {
    case CaseId::C1: {
      const auto j = elliptic::jacobi(at.phi, cc.k);
      return {cc.s1 * cc.k * j.sn, cc.s1 * j.dn};
    }
    case CaseId::C2: {
      const auto j = elliptic::jacobi(at.phi, cc.k);
      return {cc.s2 * j.sn, j.cn};
    }
    case CaseId::C3:
      return {cc.s1 * cc.s2 * std::tanh(at.phi), cc.s1 / std::cosh(at.phi)};
    case CaseId::C4: return {0.0, static_cast<double>(cc.s1)};
    case CaseId::C5: return {static_cast<double>(cc.s1), 0.0};
  }
  return {0.0, 1.0};
}

/// Validates a CaseClass built by hand (CLI input, grids).
inline void check_case_class(const CaseClass& cc) {
  if (cc.s1 != 1 && cc.s1 != -1) throw DomainError("s1", "must be +1 or -1");
  if (cc.s2 != 1 && cc.s2 != -1) throw DomainError("s2", "must be +1 or -1");
  if (!std::isfinite(cc.phi)) throw DomainError("phi", "must be finite");
  if (cc.id == CaseId::C1 || cc.id == CaseId::C2) {
    elliptic::check_modulus(cc.k);
    if (cc.k <= 0.0) throw DomainError("k", "must be positive in C1/C2");
  }
}

}  // namespace sh2

#endif  // SH2_PHASE_HPP
