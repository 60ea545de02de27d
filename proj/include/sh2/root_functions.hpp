#ifndef SH2_ROOT_FUNCTIONS_HPP
#define SH2_ROOT_FUNCTIONS_HPP

// The functions f1..f4 whose roots locate the Maxwell strata. E(p) is the
// Jacobi epsilon function int_0^p dn^2.

#include "sh2/elliptic.hpp"

namespace sh2::strata {

struct RootTerms {
  elliptic::JacobiTriple j;
  double E;
};

inline RootTerms root_terms(double p, double k) {
  return {elliptic::jacobi(p, k), elliptic::incomplete_E(p, k)};
}

/// f1(p) = cn p E(p) - sn p dn p
inline double f1(double p, double k) {
  const auto [j, E] = root_terms(p, k);
  return j.cn * E - j.sn * j.dn;
}

/// f2(p) = dn p E(p) - k^2 sn p cn p; positive for p > 0.
inline double f2(double p, double k) {
  const auto [j, E] = root_terms(p, k);
  return j.dn * E - k * k * j.sn * j.cn;
}

/// f3(p) = -dn p E(p) + p dn p (1-k^2) + k^2 sn p cn p; negative for p > 0.
inline double f3(double p, double k) {
  const auto [j, E] = root_terms(p, k);
  return -j.dn * E + p * j.dn * (1 - k * k) + k * k * j.sn * j.cn;
}

/// f4(p) = -cn p E(p) + p cn p (1-k^2) + sn p dn p
inline double f4(double p, double k) {
  const auto [j, E] = root_terms(p, k);
  return -j.cn * E + p * j.cn * (1 - k * k) + j.sn * j.dn;
}

/// d f1 / dp = -sn dn E + k^2 sn^2 cn
inline double f1_derivative(double p, double k) {
  const auto [j, E] = root_terms(p, k);
  return -j.sn * j.dn * E + k * k * j.sn * j.sn * j.cn;
}

/// d f4 / dp = sn dn E + (1-k^2)(cn - p sn dn) - k^2 sn^2 cn
inline double f4_derivative(double p, double k) {
  const auto [j, E] = root_terms(p, k);
  return j.sn * j.dn * E + (1 - k * k) * (j.cn - p * j.sn * j.dn) - k * k * j.sn * j.sn * j.cn;
}

}  // namespace sh2::strata

#endif  // SH2_ROOT_FUNCTIONS_HPP
