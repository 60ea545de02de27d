#ifndef SH2_CLI_HPP
#define SH2_CLI_HPP

/**
 * @file cli.hpp
 * @brief Commands behind the `sh2` executable.
 *
 * Each command returns a Report (printed as JSON on stdout), a one-paragraph
 * human summary (stderr) and the process exit code. Flag parsing lives in
 * tools/sh2.cpp.
 */

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sh2/cloud.hpp"
#include "sh2/conjugate.hpp"
#include "sh2/error.hpp"
#include "sh2/expmap.hpp"
#include "sh2/phase.hpp"
#include "sh2/strata.hpp"
#include "sh2/verify.hpp"

#ifndef SH2_VERSION
#define SH2_VERSION "1.0.0"
#endif

namespace sh2::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIo = 3;

struct Report {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  std::optional<json> residuals;
  std::string version = SH2_VERSION;

  json to_json() const {
    json j{{"command", command}, {"inputs", inputs}, {"outputs", outputs}, {"version", version}};
    if (residuals) j["residuals"] = *residuals;
    return j;
  }
};

struct Outcome {
  Report report;
  int exit_code = kExitOk;
  std::string summary;
};

/// JSON has no infinity literal.
inline json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

/// Covector given either as (gamma, c) or as stratum coordinates.
struct LambdaArgs {
  std::optional<double> gamma;
  std::optional<double> c;
  std::optional<std::string> case_name;
  std::optional<double> k;
  std::optional<double> phi;
  int s1 = 1;
  int s2 = 1;
  std::optional<double> tol;  ///< classification tolerance for (gamma, c)
};

inline json to_json(const CaseClass& cc) {
  return {{"id", to_string(cc.id)}, {"k", cc.k}, {"phi", cc.phi}, {"s1", cc.s1}, {"s2", cc.s2}};
}

inline json to_json(const LambdaArgs& a) {
  json j = json::object();
  if (a.gamma) j["gamma"] = *a.gamma;
  if (a.c) j["c"] = *a.c;
  if (a.case_name) {
    j["case"] = *a.case_name;
    if (a.k) j["k"] = *a.k;
    if (a.phi) j["phi"] = *a.phi;
    j["s1"] = a.s1;
    j["s2"] = a.s2;
  }
  if (a.tol) j["tol"] = *a.tol;
  return j;
}

inline CaseClass resolve(const LambdaArgs& a) {
  const bool by_point = a.gamma || a.c;
  if (by_point == a.case_name.has_value()) {
    throw DomainError("lambda", "give exactly one of --gamma/--c or --case");
  }
  if (by_point) {
    if (!a.gamma) throw DomainError("gamma", "required together with --c");
    if (!a.c) throw DomainError("c", "required together with --gamma");
    return classify(PhasePoint(*a.gamma, *a.c), a.tol.value_or(kClassifyTol));
  }
  const auto id = parse_case(*a.case_name);
  if (!id) throw DomainError("case", "unknown case '" + *a.case_name + "' (expected C1..C5)");
  CaseClass cc{*id, 0.0, a.phi.value_or(0.0), a.s1, a.s2};
  switch (*id) {
    case CaseId::C1:
    case CaseId::C2:
      if (!a.k) throw DomainError("k", "required for " + std::string(to_string(*id)));
      cc.k = *a.k;
      break;
    case CaseId::C3: cc.k = 1.0; break;
    case CaseId::C4: cc.phi = 0.0; break;
    case CaseId::C5: cc.k = 1.0; cc.phi = 0.0; break;
  }
  check_case_class(cc);
  return cc;
}

namespace detail {

inline Outcome failure(Report r, int code, const std::string& msg) {
  r.outputs = {{"error", msg}};
  return {std::move(r), code, "error: " + msg};
}

/// Maps library exceptions to exit codes.
inline Outcome guarded(Report r, const std::function<Outcome(Report&)>& body) {
  try {
    return body(r);
  } catch (const DomainError& e) {
    return failure(std::move(r), kExitInput, e.what());
  } catch (const IoError& e) {
    return failure(std::move(r), kExitIo, e.what());
  } catch (const InvariantViolation& e) {
    return failure(std::move(r), kExitVerifyFailed, e.what());
  }
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline void check_count(int n) {
  if (n < 1) throw DomainError("n", "must be >= 1");
}

}  // namespace detail

inline Outcome cmd_exp(const LambdaArgs& lambda, double t) {
  Report r{"exp"};
  r.inputs = to_json(lambda);
  r.inputs["t"] = t;
  return detail::guarded(std::move(r), [&](Report& rep) {
    const CaseClass cc = resolve(lambda);
    const GroupElement q = sh2::exp(cc, t);
    const Rectifying rr = rectifying(q);
    rep.outputs["q"] = {{"x", q.x}, {"y", q.y}, {"z", q.z}};
    rep.outputs["rectifying"] = {{"r1", rr.r1}, {"r2", rr.r2}, {"z", rr.z}};
    rep.outputs["case"] = to_json(cc);
    if (cc.id == CaseId::C4 || cc.id == CaseId::C5) {
      rep.outputs["clock"] = nullptr;
    } else {
      const auto ck = clock(cc, t);
      rep.outputs["clock"] = {{"p", ck.p}, {"tau", ck.tau}};
    }
    std::string s = std::string(to_string(cc.id)) + ": q = (" + detail::fmt(q.x) + ", " + detail::fmt(q.y) +
                    ", " + detail::fmt(q.z) + ")";
    return Outcome{rep, kExitOk, s};
  });
}

inline Outcome cmd_maxwell(const LambdaArgs& lambda, int n, std::optional<double> tol = std::nullopt) {
  Report r{"maxwell"};
  r.inputs = to_json(lambda);
  r.inputs["n"] = n;
  if (tol) r.inputs["membership_tol"] = *tol;
  return detail::guarded(std::move(r), [&](Report& rep) {
    detail::check_count(n);
    const CaseClass cc = resolve(lambda);
    const double first = strata::first_maxwell_time(cc);
    rep.outputs["case"] = to_json(cc);
    rep.outputs["first_maxwell_time"] = number(first);
    json times = json::array();
    std::string s = std::string(to_string(cc.id)) + ": first Maxwell time " + detail::fmt(first);
    if (cc.id == CaseId::C1 || cc.id == CaseId::C2) {
      const double mtol = tol.value_or(strata::kMembershipTol);
      for (int i = 1; i <= n; ++i) {
        const double t = strata::nth_maxwell_time(cc, i);
        json labels = json::array();
        for (auto m : strata::maxwell_membership(cc, t, mtol)) labels.push_back(strata::to_string(m));
        times.push_back({{"index", i},
                         {"t", t},
                         {"strata", labels},
                         {"limit_conjugate", strata::limit_conjugate_flags(cc, t, mtol)}});
      }
    }
    rep.outputs["times"] = times;
    return Outcome{rep, kExitOk, s};
  });
}

inline Outcome cmd_conjugate(const LambdaArgs& lambda, int n) {
  Report r{"conjugate"};
  r.inputs = to_json(lambda);
  r.inputs["n"] = n;
  return detail::guarded(std::move(r), [&](Report& rep) {
    detail::check_count(n);
    const CaseClass cc = resolve(lambda);
    if (cc.id == CaseId::C3 || cc.id == CaseId::C5) {
      throw DomainError("lambda", std::string(to_string(cc.id)) + ": no conjugate points");
    }
    const auto times = conjugate::conjugate_times(cc, n);
    json list = json::array();
    bool all = true;
    for (int m = 1; m <= n; ++m) {
      const auto b = conjugate::nth_conjugate_bracket(cc, m);
      const double t = times[m - 1];
      json e{{"m", m},
             {"bracket", {{"lo", b.lo}, {"hi", b.hi}}},
             {"parity", b.kind == strata::BracketKind::conjugate_odd ? "odd" : "even"},
             {"t", t}};
      if (cc.id != CaseId::C4) {
        const double lo = strata::nth_maxwell_time(cc, m), hi = strata::nth_maxwell_time(cc, m + 1);
        const bool holds = lo <= t && t <= hi;
        all = all && holds;
        e["interleaving"] = {{"maxwell_below", lo},
                             {"maxwell_above", hi},
                             {"holds", holds},
                             {"strict", lo < t && t < hi}};
      }
      list.push_back(e);
    }
    rep.outputs["case"] = to_json(cc);
    rep.outputs["conjugate"] = list;
    std::string s = std::string(to_string(cc.id)) + ": first conjugate time " + detail::fmt(times.front());
    if (cc.id != CaseId::C4) s += all ? ", interleaving holds" : ", interleaving VIOLATED";
    return Outcome{rep, all ? kExitOk : kExitVerifyFailed, s};
  });
}

struct FrontArgs {
  double radius = 1.0;
  std::string grid = "200x400";  ///< moduli x phases
  std::string out;
  std::string format = "csv";
  bool sphere = false;
  bool diagnose = false;
  unsigned threads = 0;
};

/// Parses "GxH" into the grid sizes.
inline cloud::GridSpec parse_grid(const std::string& s) {
  const auto x = s.find('x');
  auto whole = [&](const std::string& part) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || part.size() > 7) {
      throw DomainError("grid", "expected GxH with positive integers, got '" + s + "'");
    }
    return std::stoi(part);
  };
  if (x == std::string::npos) throw DomainError("grid", "expected GxH, got '" + s + "'");
  cloud::GridSpec g;
  g.k_count = whole(s.substr(0, x));
  g.phi_count = whole(s.substr(x + 1));
  return g;
}

inline Outcome cmd_front(const FrontArgs& a) {
  Report r{"front"};
  r.inputs = {{"radius", a.radius}, {"grid", a.grid},     {"out", a.out},
              {"format", a.format}, {"sphere", a.sphere}, {"diagnose", a.diagnose}};
  return detail::guarded(std::move(r), [&](Report& rep) {
    const auto fmt = cloud::parse_format(a.format);
    if (!fmt) throw DomainError("format", "expected csv, ply or json, got '" + a.format + "'");
    if (a.out.empty()) throw DomainError("out", "output path required");
    cloud::GridSpec g = parse_grid(a.grid);
    g.threads = a.threads;

    const auto t0 = std::chrono::steady_clock::now();
    const auto pts = a.sphere ? cloud::sphere(a.radius, g) : cloud::wavefront(a.radius, g);
    const auto t1 = std::chrono::steady_clock::now();
    std::ostringstream body;
    cloud::write(body, pts, *fmt);
    const std::string data = body.str();
    {
      std::ofstream os(a.out, std::ios::binary);
      if (!os) throw IoError("cannot open " + a.out + " for writing");
      os.write(data.data(), static_cast<std::streamsize>(data.size()));
      if (!os.flush()) throw IoError("write failed: " + a.out);
    }
    const auto t2 = std::chrono::steady_clock::now();

    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(detail::fnv1a(data)));
    rep.outputs["kind"] = a.sphere ? "sphere" : "wavefront";
    rep.outputs["points"] = pts.size();
    rep.outputs["bytes"] = data.size();
    rep.outputs["content_hash"] = std::string("fnv1a64:") + hash;
    rep.outputs["timing_s"] = {{"sample", std::chrono::duration<double>(t1 - t0).count()},
                               {"export", std::chrono::duration<double>(t2 - t1).count()}};
    std::string s = std::to_string(pts.size()) + " points written to " + a.out;
    if (a.diagnose) {
      const auto d = cloud::self_intersections(pts);
      json clusters = json::array();
      for (const auto& c : d.off_plane_clusters) clusters.push_back({{"center", c.center}, {"count", c.count}});
      rep.outputs["diagnostic"] = {{"pairs", d.pairs},
                                   {"near_planes", d.near_planes},
                                   {"near_r1", d.near_r1},
                                   {"near_r2", d.near_r2},
                                   {"near_z", d.near_z},
                                   {"at_origin", d.at_origin},
                                   {"folds", d.folds},
                                   {"plane_peak", d.plane_peak},
                                   {"threshold", d.threshold},
                                   {"off_plane_clusters", clusters},
                                   {"concentrated", d.concentrated()}};
      s += "; " + std::to_string(d.pairs) + " near pairs, " +
           (d.concentrated() ? "concentrated on the planes" : std::to_string(clusters.size()) + " off-plane clusters");
    }
    return Outcome{rep, kExitOk, s};
  });
}

/// `suite` is one of verify::kSuites or "all".
inline Outcome cmd_verify(const std::string& suite) {
  Report r{"verify"};
  r.inputs = {{"suite", suite}};
  return detail::guarded(std::move(r), [&](Report& rep) {
    std::vector<std::string_view> names;
    if (suite == "all") {
      names.assign(verify::kSuites.begin(), verify::kSuites.end());
    } else {
      names.push_back(suite);
    }
    json res = json::object();
    bool ok = true;
    std::string s;
    for (auto name : names) {
      const auto sr = verify::run_suite(name);
      ok = ok && sr.pass();
      for (const auto& c : sr.checks) {
        res[sr.suite][c.name] = {{"max", c.max_residual}, {"tol", c.tol}, {"samples", c.samples}, {"pass", c.pass()}};
        s += std::string(c.pass() ? "PASS " : "FAIL ") + sr.suite + "/" + c.name + " max=" +
             detail::fmt(c.max_residual) + " tol=" + detail::fmt(c.tol) + "\n";
      }
    }
    rep.residuals = res;
    rep.outputs["pass"] = ok;
    if (!s.empty()) s.pop_back();
    return Outcome{rep, ok ? kExitOk : kExitVerifyFailed, s};
  });
}

}  // namespace sh2::cli

#endif  // SH2_CLI_HPP
