// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sh2/cloud.hpp"
#include "sh2/conjugate.hpp"
#include "sh2/elliptic.hpp"
#include "sh2/expmap.hpp"
#include "sh2/strata.hpp"

using namespace sh2;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

CaseClass random_lambda(CaseId id, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> K(0.02, 0.98), U(0, 1), P(-3, 3);
  auto sgn = [&] { return U(rng) < 0.5 ? -1 : 1; };
  switch (id) {
    case CaseId::C1: {
      const double k = K(rng);
      return {id, k, U(rng) * 4 * elliptic::complete_K(k), sgn(), 1};
    }
    case CaseId::C2: {
      const double k = K(rng);
      return {id, k, U(rng) * 4 * elliptic::complete_K(k), 1, sgn()};
    }
    case CaseId::C3: return {id, 1.0, P(rng), sgn(), sgn()};
    case CaseId::C4: return {id, 0.0, 0.0, sgn(), 1};
    case CaseId::C5: return {id, 1.0, 0.0, sgn(), 1};
  }
  return {};
}

constexpr CaseId kAll[] = {CaseId::C1, CaseId::C2, CaseId::C3, CaseId::C4, CaseId::C5};

Verdict elliptic_kernel() {
  const auto t0 = std::chrono::steady_clock::now();
  double ident = 0, trip = 0;
  for (int i = 0; i < 100; ++i) {
    const double k = i / 99.0 * elliptic::kMaxModulus;
    for (int j = 0; j < 100; ++j) {
      const double u = -25.0 + 50.0 * j / 99.0;
      const auto t = elliptic::jacobi(u, k);
      ident = std::max({ident, std::abs(t.sn * t.sn + t.cn * t.cn - 1), std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1)});
      const double phi = elliptic::am(u, k);
      trip = std::max({trip, std::abs(elliptic::incomplete_F(phi, k) - u),
                       std::abs(elliptic::am(elliptic::incomplete_F(phi, k), k) - phi),
                       std::abs(elliptic::legendre_E(phi, k) - elliptic::incomplete_E(u, k))});
    }
  }
  const double s = seconds_since(t0);
  return {ident <= 1e-12 && trip <= 1e-11 && s < 5,
          fmt("identities %.2e, round trips %.2e, %.2f s", ident, trip, s)};
}

Verdict closed_form_vs_rk4() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2);
  const double targets[] = {0.5, 1.0, 3.0, 7.0};
  double worst = 0;
  for (auto id : kAll) {
    for (int i = 0; i < 100; ++i) {
      const auto cc = random_lambda(id, rng);
      const auto l = to_phase_point(cc);
      int next = 0;
      oracle::rk4(l.gamma(), l.c(), 7.0, 1e-4, [&](double t, const oracle::State& s) {
        if (next < 4 && std::abs(t - targets[next]) < 5e-5) {
          const auto q = sh2::exp(cc, targets[next]);
          worst = std::max({worst, std::abs(q.x - s[2]), std::abs(q.y - s[3]), std::abs(q.z - s[4])});
          ++next;
        }
      });
      if (next != 4) return {false, "rk4 grid missed a target time"};
    }
  }
  const double s = seconds_since(t0);
  return {worst <= 1e-7 && s < 60, fmt("max |Exp - RK4| %.2e over 500 covectors x 4 times, %.1f s", worst, s)};
}

Verdict trajectory_identities_hold() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> T(0.01, 12.0);
  double worst = 0;
  for (auto id : {CaseId::C1, CaseId::C2, CaseId::C3}) {
    for (int i = 0; i < 1000; ++i) {
      const auto cc = random_lambda(id, rng);
      const double t = id == CaseId::C3 ? T(rng) / 3 : T(rng);
      const auto q = sh2::exp(cc, t);
      const auto r = rectifying(q);
      const auto f = trajectory_identities(clock(cc, t), cc.s1, cc.s2);
      // relative to the size of the quantities once they exceed 1
      const double scale = std::max({1.0, std::abs(q.x), std::abs(q.y)});
      worst = std::max({worst, std::abs(f.r1 - r.r1) / scale, std::abs(f.r2 - r.r2) / scale,
                        std::abs(f.sinh_z - std::sinh(q.z)) / std::max(1.0, std::abs(std::sinh(q.z)))});
    }
  }
  return {worst <= 1e-9, fmt("max residual %.2e over 3 x 1000 samples", worst)};
}

Verdict root_brackets() {
  double worst = 0;
  bool inside = true;
  for (int i = 1; i <= 19; ++i) {
    const double k = 0.05 * i;
    const double K = oracle::quad_K(k);
    for (int n = 1; n <= 6; ++n) {
      const double p1 = strata::root_p1(n, k), p2 = strata::root_p2(n, k);
      for (double p : {p1, p2}) inside = inside && 2 * n * K < p && p < (2 * n + 1) * K;
      worst = std::max({worst, std::abs(strata::f1(p1, k)) / (1 + p1), std::abs(strata::f4(p2, k)) / (1 + p2)});
    }
  }
  return {inside && worst <= 1e-12, std::string(inside ? "228 roots inside" : "root OUTSIDE") +
                                        " (2nK, (2n+1)K); " + fmt("max relative |f| %.2e", worst)};
}

double exp_coords_det(const CaseClass& cc, double t) {
  const auto map = [&](std::array<double, 3> a) {
    const auto q = sh2::exp(CaseClass{cc.id, a[1], a[0], cc.s1, cc.s2}, a[2]);
    return std::array<double, 3>{q.x, q.y, q.z};
  };
  // in C2, Exp varies in k on a scale ~ k^2 / t
  const double hk = cc.id == CaseId::C2 ? 1e-4 * cc.k : 1e-4;
  return oracle::fd_determinant_richardson(map, {cc.phi, cc.k, t}, {1e-4, hk, 1e-4});
}

Verdict jacobian_identities() {
  // (a) value at even quarter periods
  double a = 0;
  for (double k : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double K = elliptic::complete_K(k), E = elliptic::complete_E(k);
    for (int n = 1; n <= 5; ++n) {
      for (double tau : {0.0, 0.4, 1.3, 2.9, 5.0}) {
        const double sn = elliptic::jacobi(tau, k).sn;
        const double expected = 16.0 * n * n * k * E * (E - (1 - k * k) * K) * sn * sn;
        a = std::max(a, std::abs(conjugate::j1(2 * n * K, tau, k) - expected));
      }
    }
  }
  // (b) small-k limit
  double b = 0;
  for (int i = 1; i < 290; ++i) {
    const double p = 0.1 + 0.01 * i;
    for (double tau : {0.0, 0.7, 2.2}) {
      const double lim = conjugate::degenerate_j1_over_k(p);
      b = std::max(b, std::abs(conjugate::j1(p, tau, 1e-4) / 1e-4 - lim) / std::max(1.0, std::abs(lim)));
    }
  }
  // (c) C2 = -k C1 and both against finite differences
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> T(0.3, 12.0);
  double sym = 0, fd = 0;
  for (auto id : {CaseId::C1, CaseId::C2}) {
    int n = 0;
    while (n < 200) {
      const auto cc = random_lambda(id, rng);
      if (cc.k + 1e-4 >= elliptic::kMaxModulus) continue;
      const double t = T(rng);
      const double j = conjugate::jacobian(cc, t).j;
      if (id == CaseId::C2) {
        const CaseClass c1{CaseId::C1, cc.k, cc.phi, 1, 1};
        const double j_c1 = conjugate::jacobian(c1, t / cc.k).j;
        sym = std::max(sym, std::abs(j + cc.k * j_c1) / std::max(1e-300, std::abs(j)));
      }
      if (std::abs(j) < 1e-3) continue;
      fd = std::max(fd, std::abs(exp_coords_det(cc, t) - j) / std::abs(j));
      ++n;
    }
  }
  return {a <= 1e-9 && b <= 1e-3 && sym <= 4 * std::numeric_limits<double>::epsilon() && fd <= 1e-4,
          fmt("(a) %.2e  (b) %.2e  (c) symmetry %.2e, FD rel %.2e on 2 x 200", a, b, sym, fd)};
}

Verdict conjugate_limits() {
  // phi = 0 puts sn tau = 0 at t = 4K
  const CaseClass c1{CaseId::C1, 1e-3, 0.0, 1, 1};
  const double t1 = conjugate::conjugate_times(c1, 1).front();
  const double t4 = conjugate::conjugate_times({CaseId::C4, 0.0, 0.0, 1, 1}, 1).front();
  const double t4b = conjugate::conjugate_times({CaseId::C4, 0.0, 0.0, -1, 1}, 1).front();
  const double two_pi = 2 * std::numbers::pi;
  return {std::abs(t1 - two_pi) <= 1e-3 && t4 == two_pi && t4b == two_pi,
          fmt("C1 k=1e-3: |t1 - 2pi| = %.2e; C4: t1 - 2pi = %g", std::abs(t1 - two_pi), t4 - two_pi)};
}

Verdict interleaving() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  int bad = 0, degenerate = 0;
  for (int i = 0; i < 50; ++i) {
    const auto cc = random_lambda(U(rng) < 0.5 ? CaseId::C1 : CaseId::C2, rng);
    const auto times = conjugate::conjugate_times(cc, 5);
    for (int n = 1; n <= 5; ++n) {
      const double t = times[n - 1];
      const double lo = strata::nth_maxwell_time(cc, n), hi = strata::nth_maxwell_time(cc, n + 1);
      if (!(lo <= t && t <= hi)) {
        ++bad;
      } else if (!(lo < t && t < hi)) {
        // equality only at sn tau = 0 / cn tau = 0
        if (strata::limit_conjugate_flags(cc, t)) ++degenerate;
        else ++bad;
      }
    }
  }
  const double s = seconds_since(t0);
  return {bad == 0 && s < 120,
          fmt("%g violations in 250 (lambda, n); %g degenerate equalities; %.2f s", bad, degenerate, s)};
}

Verdict clouds() {
  std::string detail;
  bool ok = true;
  for (double R : {1.0, 2.0, 3.0}) {
    const auto w = cloud::wavefront(R);
    const auto s = cloud::sphere(R);
    bool subset = s.size() <= w.size();
    std::size_t j = 0;
    for (const auto& p : s) {
      while (j < w.size() && (w[j].row != p.row || w[j].col != p.col)) ++j;
      subset = subset && j < w.size() && w[j].r1 == p.r1 && w[j].r2 == p.r2 && w[j].z == p.z;
    }
    const auto d = cloud::self_intersections(w);
    ok = ok && subset && d.concentrated() && d.pairs > 0;
    detail += fmt("R=%g: %g pts, %g pairs, ", R, static_cast<double>(w.size()), static_cast<double>(d.pairs)) +
              std::to_string(d.off_plane_clusters.size()) + " off-plane clusters, sphere " +
              (subset ? "subset" : "NOT subset") + "; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"elliptic kernel identities and round trips", elliptic_kernel},
      {"closed-form Exp vs RK4", closed_form_vs_rk4},
      {"trajectory identities for R1, R2, sinh z", trajectory_identities_hold},
      {"root brackets and residuals", root_brackets},
      {"Jacobian identities", jacobian_identities},
      {"conjugate-time limits", conjugate_limits},
      {"Maxwell/conjugate interleaving", interleaving},
      {"wavefront and sphere clouds", clouds},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
