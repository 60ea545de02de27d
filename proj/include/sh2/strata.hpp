#ifndef SH2_STRATA_HPP
#define SH2_STRATA_HPP

/**
 * @file strata.hpp
 * @brief Maxwell strata, Maxwell times and the cut-time upper bound.
 *
 * The n-th positive roots p1^n of f1 and p2^n of f4 lie in (2nK, (2n+1)K),
 * where f/cn is monotone with infinite limits at the ends of
 * ((2n-1)K, (2n+1)K). They are found by bisection on that bracket followed by
 * one Newton step.
 */

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string_view>
#include <unordered_map>

#include "sh2/elliptic.hpp"
#include "sh2/error.hpp"
#include "sh2/expmap.hpp"
#include "sh2/phase.hpp"
#include "sh2/root_functions.hpp"

namespace sh2::strata {

inline constexpr double kMembershipTol = 1e-8;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RootFamily { f1, f4 };

struct RootIndex {
  int n;
  RootFamily which;
};

enum class BracketKind { maxwell, conjugate_odd, conjugate_even };

/// Certified interval [lo, hi] holding the n-th time of some kind.
struct TimeBracket {
  double lo;
  double hi;
  int n;
  BracketKind kind;
};

enum class MaxwellStratum { MAX1, MAX2, MAX6 };

inline std::string_view to_string(MaxwellStratum s) {
  switch (s) {
    case MaxwellStratum::MAX1: return "MAX1";
    case MaxwellStratum::MAX2: return "MAX2";
    case MaxwellStratum::MAX6: return "MAX6";
  }
  return "?";
}

/// g1 = f1 / cn, decreasing between consecutive odd multiples of K.
inline double g1(double p, double k) { return f1(p, k) / elliptic::jacobi(p, k).cn; }

/// g4 = f4 / cn, increasing between consecutive odd multiples of K.
inline double g4(double p, double k) { return f4(p, k) / elliptic::jacobi(p, k).cn; }

namespace detail {

struct CacheKey {
  std::uint64_t k_bits;
  int n;
  RootFamily which;
  bool operator==(const CacheKey&) const = default;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& key) const noexcept {
    std::uint64_t h = key.k_bits * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(key.n) + 0x7F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (key.which == RootFamily::f1 ? 0u : 0x5bd1e995u));
  }
};

/// Per-process memo of refined roots. Lookups take a shared lock.
class RootCache {
public:
  bool find(const CacheKey& key, double& out) const {
    std::shared_lock lock(mutex_);
    const auto it = map_.find(key);
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }
  void insert(const CacheKey& key, double value) {
    std::unique_lock lock(mutex_);
    map_.emplace(key, value);
  }
  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<CacheKey, double, CacheKeyHash> map_;
};

inline RootCache& root_cache() {
  static RootCache cache;
  return cache;
}

inline double evaluate(RootFamily which, double p, double k) {
  return which == RootFamily::f1 ? f1(p, k) : f4(p, k);
}

inline double derivative(RootFamily which, double p, double k) {
  return which == RootFamily::f1 ? f1_derivative(p, k) : f4_derivative(p, k);
}

inline double refine_root(RootFamily which, int n, double k) {
  const double K = elliptic::complete_K(k);
  double lo = 2.0 * n * K;
  double hi = (2.0 * n + 1.0) * K;
  double flo = evaluate(which, lo, k);
  const double fhi = evaluate(which, hi, k);
  if (!(flo * fhi < 0)) {
    throw InvariantViolation("root bracket (2nK, (2n+1)K) without sign change");
  }
  const double width = 1e-12 * K;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    const double fm = evaluate(which, mid, k);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = evaluate(which, mid, k);
  const double d = derivative(which, mid, k);
  if (d != 0.0) {
    const double polished = mid - fm / d;
    if (polished >= lo && polished <= hi &&
        std::abs(evaluate(which, polished, k)) <= std::abs(fm)) {
      return polished;
    }
  }
  return mid;
}

inline double cached_root(RootFamily which, int n, double k) {
  const CacheKey key{std::bit_cast<std::uint64_t>(k), n, which};
  double value;
  if (root_cache().find(key, value)) return value;
  value = refine_root(which, n, k);
  root_cache().insert(key, value);
  return value;
}

}  // namespace detail

/// The interval (2nK, (2n+1)K) containing both p1^n and p2^n.
inline TimeBracket root_bracket(int n, double k) {
  const double K = elliptic::complete_K(k);
  return {2.0 * n * K, (2.0 * n + 1.0) * K, n, BracketKind::maxwell};
}

/// n-th positive root of f1. k = 0 is allowed (roots of tan p = p).
inline double root_p1(int n, double k) {
  if (n < 1) throw DomainError("n", "root index must be >= 1");
  elliptic::check_modulus(k);
  return detail::cached_root(RootFamily::f1, n, k);
}

/// n-th positive root of f4; requires 0 < k.
inline double root_p2(int n, double k) {
  if (n < 1) throw DomainError("n", "root index must be >= 1");
  elliptic::check_modulus(k);
  if (k <= 0.0) throw DomainError("k", "f4 roots need k in (0, 1)");
  return detail::cached_root(RootFamily::f4, n, k);
}

inline double root(RootIndex index, double k) {
  return index.which == RootFamily::f1 ? root_p1(index.n, k) : root_p2(index.n, k);
}

namespace detail {

/// Is p within tol of some root p^n, n >= 1, of the given family?
inline bool near_root(RootFamily which, double p, double k, double tol) {
  const double K = elliptic::complete_K(k);
  const int n0 = static_cast<int>(std::floor(p / (2.0 * K)));
  for (int n = std::max(1, n0 - 1); n <= n0 + 1; ++n) {
    if (std::abs(p - root(RootIndex{n, which}, k)) <= tol) return true;
  }
  return false;
}

inline bool near_even_quarter_period(double p, double k, double tol) {
  const double K2 = 2.0 * elliptic::complete_K(k);
  const double n = std::nearbyint(p / K2);
  return n >= 1 && std::abs(p - n * K2) <= tol;
}

}  // namespace detail

/// Maxwell strata containing (lambda, t). Empty for C3, C4, C5.
inline std::set<MaxwellStratum> maxwell_membership(const CaseClass& cc, double t,
                                                   double tol = kMembershipTol) {
  if (!(t > 0)) throw DomainError("t", "must be positive");
  std::set<MaxwellStratum> out;
  if (cc.id != CaseId::C1 && cc.id != CaseId::C2) return out;
  const auto ck = clock(cc, t);
  const auto jt = elliptic::jacobi(ck.tau, cc.k);
  if (cc.id == CaseId::C1 && std::abs(jt.cn) > tol && detail::near_root(RootFamily::f1, ck.p, cc.k, tol)) {
    out.insert(MaxwellStratum::MAX1);
  }
  if (std::abs(jt.sn) > tol && detail::near_even_quarter_period(ck.p, cc.k, tol)) {
    out.insert(MaxwellStratum::MAX2);
  }
  if (cc.id == CaseId::C2 && std::abs(jt.cn) > tol && detail::near_root(RootFamily::f4, ck.p, cc.k, tol)) {
    out.insert(MaxwellStratum::MAX6);
  }
  return out;
}

/// Boundary points of the Maxwell strata that are conjugate points.
inline bool limit_conjugate_flags(const CaseClass& cc, double t, double tol = kMembershipTol) {
  if (!(t > 0)) throw DomainError("t", "must be positive");
  if (cc.id != CaseId::C1 && cc.id != CaseId::C2) return false;
  const auto ck = clock(cc, t);
  const auto jt = elliptic::jacobi(ck.tau, cc.k);
  if (std::abs(jt.sn) <= tol && detail::near_even_quarter_period(ck.p, cc.k, tol)) return true;
  if (std::abs(jt.cn) <= tol) {
    const auto family = cc.id == CaseId::C1 ? RootFamily::f1 : RootFamily::f4;
    return detail::near_root(family, ck.p, cc.k, tol);
  }
  return false;
}

/// First Maxwell time: 4K (C1), 4kK (C2), +inf otherwise.
inline double first_maxwell_time(const CaseClass& cc) {
  switch (cc.id) {
    case CaseId::C1: return 4.0 * elliptic::complete_K(cc.k);
    case CaseId::C2: return 4.0 * cc.k * elliptic::complete_K(cc.k);
    default: return kInfinity;
  }
}

/// Maxwell time with 1-based index: odd 2n-1 -> 4nK, even 2n -> 2 p1^n (C1);
/// 4nkK and 2k p2^n in C2.
inline double nth_maxwell_time(const CaseClass& cc, int index) {
  if (cc.id != CaseId::C1 && cc.id != CaseId::C2) {
    throw DomainError("lambda", "Maxwell times exist only in C1 and C2");
  }
  if (index < 1) throw DomainError("n", "index must be >= 1");
  const double scale = cc.id == CaseId::C1 ? 1.0 : cc.k;
  if (index % 2 == 1) {
    const int n = (index + 1) / 2;
    return scale * 4.0 * n * elliptic::complete_K(cc.k);
  }
  const int n = index / 2;
  return scale * 2.0 * (cc.id == CaseId::C1 ? root_p1(n, cc.k) : root_p2(n, cc.k));
}

/// Upper bound on the cut time: the first Maxwell time.
inline double cut_time_upper_bound(const CaseClass& cc) { return first_maxwell_time(cc); }

}  // namespace sh2::strata

#endif  // SH2_STRATA_HPP
