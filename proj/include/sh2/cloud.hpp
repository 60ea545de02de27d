#ifndef SH2_CLOUD_HPP
#define SH2_CLOUD_HPP

/**
 * @file cloud.hpp
 * @brief Wavefront and sphere point clouds in rectifying coordinates.
 *
 * The wavefront W_R is sampled as Exp(lambda, R) over a stratified grid of
 * covectors. The sphere sample keeps the points whose cut-time upper bound is
 * at least R, so it is an outer approximation of the true sphere.
 */

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "sh2/elliptic.hpp"
#include "sh2/error.hpp"
#include "sh2/expmap.hpp"
#include "sh2/phase.hpp"
#include "sh2/strata.hpp"

namespace sh2::cloud {

struct GridSpec {
  int k_count = 200;     ///< moduli per elliptic stratum
  int phi_count = 400;   ///< phases per modulus, and C3 phases per sign pair
  double c3_margin = 3;  ///< C3 phases cover [-R - margin, margin]
  unsigned threads = 0;  ///< 0: hardware concurrency
};

struct FrontPoint {
  double r1;
  double r2;
  double z;
  CaseClass lambda;
  double t;
  GroupElement q;
  int row;  ///< stratum-major row index
  int col;  ///< index along the row
};

/// Moduli in (0, 1), denser near both ends: k_i = (1 - cos(pi (i + 1/2) / n)) / 2.
inline std::vector<double> modulus_grid(int n) {
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * (i + 0.5) / n));
  return k;
}

namespace detail {

struct Row {
  CaseId id;
  double k;
  int s1;
  int s2;
};

/// Rows in output order: C1 (s1 = +1, -1) x k, C2 (s2 = +1, -1) x k,
/// C3 (s1, s2) pairs, then one row each for C4 and C5.
inline std::vector<Row> rows(const GridSpec& g) {
  const auto ks = modulus_grid(g.k_count);
  std::vector<Row> out;
  for (int s : {1, -1}) for (double k : ks) out.push_back({CaseId::C1, k, s, 1});
  for (int s : {1, -1}) for (double k : ks) out.push_back({CaseId::C2, k, 1, s});
  for (int s1 : {1, -1}) for (int s2 : {1, -1}) out.push_back({CaseId::C3, 1.0, s1, s2});
  out.push_back({CaseId::C4, 0.0, 1, 1});
  out.push_back({CaseId::C5, 1.0, 1, 1});
  return out;
}

inline FrontPoint make_point(const CaseClass& cc, double R, int row, int col) {
  const auto q = sh2::exp(cc, R);
  const auto r = rectifying(q);
  return {r.r1, r.r2, r.z, cc, R, q, row, col};
}

inline std::vector<FrontPoint> sample_row(const Row& row, int index, double R, const GridSpec& g) {
  std::vector<FrontPoint> out;
  switch (row.id) {
    case CaseId::C1:
    case CaseId::C2: {
      const double period = 4.0 * elliptic::complete_K(row.k);
      out.reserve(g.phi_count);
      for (int j = 0; j < g.phi_count; ++j) {
        const CaseClass cc{row.id, row.k, period * j / g.phi_count, row.s1, row.s2};
        out.push_back(make_point(cc, R, index, j));
      }
      break;
    }
    case CaseId::C3: {
      const double lo = -R - g.c3_margin, hi = g.c3_margin;
      for (int j = 0; j < g.phi_count; ++j) {
        const CaseClass cc{CaseId::C3, 1.0, lo + (hi - lo) * j / (g.phi_count - 1), row.s1, row.s2};
        out.push_back(make_point(cc, R, index, j));
      }
      break;
    }
    case CaseId::C4:
    case CaseId::C5:
      for (int s : {1, -1}) {
        const CaseClass cc{row.id, row.k, 0.0, s, 1};
        out.push_back(make_point(cc, R, index, s == 1 ? 0 : 1));
      }
      break;
  }
  return out;
}

}  // namespace detail

/// End points Exp(lambda, R) over the grid, in stratum-major, row-major order.
inline std::vector<FrontPoint> wavefront(double R, const GridSpec& grid = {}) {
  if (!(R > 0) || !std::isfinite(R)) throw DomainError("R", "radius must be finite and > 0");
  if (grid.k_count < 2 || grid.phi_count < 2) throw DomainError("grid", "need at least 2 samples per axis");
  const auto rows = detail::rows(grid);
  std::vector<std::vector<FrontPoint>> parts(rows.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      parts[i] = detail::sample_row(rows[i], static_cast<int>(i), R, grid);
    }
  };
  unsigned n = grid.threads ? grid.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(rows.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<FrontPoint> out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// Wavefront points whose cut-time upper bound is at least R.
inline std::vector<FrontPoint> sphere(double R, const GridSpec& grid = {}) {
  auto front = wavefront(R, grid);
  std::erase_if(front, [R](const FrontPoint& p) { return strata::cut_time_upper_bound(p.lambda) < R; });
  return front;
}

// ---------------------------------------------------------------------------
// Self-intersection diagnostic

struct DiagnosticOptions {
  double epsilon = 1e-3;        ///< image distance for a candidate pair
  double lambda_gap = 0.1;      ///< minimal phase-cylinder distance of the two covectors
  double plane_band = 1e-2;     ///< "near a plane" distance
  double cluster_cell = 0.1;    ///< bin size for clustering pair midpoints
  double cluster_fraction = 0.25;  ///< off-plane bin must reach this share of the plane peak
  double fold_radius = 1e-2;    ///< segment images within this radius mark a fold pair
  std::size_t min_cluster = 5;
};

struct Cluster {
  std::array<double, 3> center;
  std::size_t count;
};

struct DiagnosticReport {
  std::size_t pairs = 0;
  std::size_t near_planes = 0;
  std::size_t near_r1 = 0;
  std::size_t near_r2 = 0;
  std::size_t near_z = 0;
  std::size_t at_origin = 0;   ///< pairs in the origin bin, where fast rotations collapse
  std::size_t folds = 0;       ///< off-plane pairs on a fold of the front, not counted in clusters
  std::size_t plane_peak = 0;  ///< densest plane bin away from the origin
  std::size_t threshold = 0;
  std::vector<Cluster> off_plane_clusters;  ///< off-plane bins above threshold
  bool concentrated() const { return off_plane_clusters.empty(); }
};

namespace detail {

struct CellKey {
  std::int64_t a, b, c;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.a) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(k.b) * 0xC2B2AE3D27D4EB4Full + (h << 6);
    h ^= static_cast<std::uint64_t>(k.c) * 0x165667B19E3779F9ull + (h >> 3);
    return static_cast<std::size_t>(h);
  }
};

inline CellKey cell_of(double x, double y, double z, double size) {
  return {static_cast<std::int64_t>(std::floor(x / size)), static_cast<std::int64_t>(std::floor(y / size)),
          static_cast<std::int64_t>(std::floor(z / size))};
}

}  // namespace detail

/// Calls visit(i, j), i < j, for points within epsilon in (r1, r2, z) whose
/// covectors are more than lambda_gap apart on the phase cylinder.
template <class Visit>
void for_each_near_pair(const std::vector<FrontPoint>& pts, const DiagnosticOptions& opt, Visit&& visit) {
  std::unordered_map<detail::CellKey, std::vector<std::size_t>, detail::CellHash> cells;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    cells[detail::cell_of(pts[i].r1, pts[i].r2, pts[i].z, opt.epsilon)].push_back(i);
  }
  std::vector<std::pair<double, double>> phase(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto p = to_phase_point(pts[i].lambda);
    phase[i] = {p.gamma(), p.c()};
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto c = detail::cell_of(pts[i].r1, pts[i].r2, pts[i].z, opt.epsilon);
    for (int da = -1; da <= 1; ++da) {
      for (int db = -1; db <= 1; ++db) {
        for (int dc = -1; dc <= 1; ++dc) {
          const auto it = cells.find({c.a + da, c.b + db, c.c + dc});
          if (it == cells.end()) continue;
          for (std::size_t j : it->second) {
            if (j <= i) continue;
            const double d = std::hypot(pts[i].r1 - pts[j].r1, pts[i].r2 - pts[j].r2, pts[i].z - pts[j].z);
            if (d > opt.epsilon) continue;
            const double dg = std::remainder(phase[i].first - phase[j].first, 4.0 * std::numbers::pi);
            if (std::hypot(dg, phase[i].second - phase[j].second) <= opt.lambda_gap) continue;
            visit(i, j);
          }
        }
      }
    }
  }
}

/// The pairs of for_each_near_pair, sorted.
inline std::vector<std::pair<std::size_t, std::size_t>> near_pairs(const std::vector<FrontPoint>& pts,
                                                                   const DiagnosticOptions& opt = {}) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for_each_near_pair(pts, opt, [&](std::size_t i, std::size_t j) { out.emplace_back(i, j); });
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

/// Does the segment between the covectors of a and b map within `radius` of
/// the pair midpoint? Phases of C1 and C2 are interpolated as fractions of
/// the period, the shorter way round.
inline bool is_fold_pair(const FrontPoint& a, const FrontPoint& b, double radius) {
  const auto& la = a.lambda;
  const auto& lb = b.lambda;
  if (la.id != lb.id || la.s1 != lb.s1 || la.s2 != lb.s2) return false;
  if (la.id != CaseId::C1 && la.id != CaseId::C2 && la.id != CaseId::C3) return false;
  const double m[3] = {0.5 * (a.r1 + b.r1), 0.5 * (a.r2 + b.r2), 0.5 * (a.z + b.z)};
  const bool elliptic_case = la.id != CaseId::C3;
  const double ua = elliptic_case ? la.phi / (4.0 * elliptic::complete_K(la.k)) : la.phi;
  const double ub = elliptic_case ? lb.phi / (4.0 * elliptic::complete_K(lb.k)) : lb.phi;
  const double du = elliptic_case ? std::remainder(ub - ua, 1.0) : ub - ua;
  for (double s : {0.25, 0.5, 0.75}) {
    CaseClass cc = la;
    cc.k = la.k + s * (lb.k - la.k);
    const double u = ua + s * du;
    cc.phi = elliptic_case ? u * 4.0 * elliptic::complete_K(cc.k) : u;
    const auto r = rectifying(sh2::exp(cc, a.t));
    if (std::hypot(r.r1 - m[0], r.r2 - m[1], r.z - m[2]) > radius) return false;
  }
  return true;
}

}  // namespace detail

/// Bins near pairs by midpoint. A pair is near the planes when its midpoint is
/// within plane_band of r1 = 0, r2 = 0 or z = 0. Off-plane bins holding at
/// least cluster_fraction of the densest plane bin (origin excluded) are
/// reported as clusters. Off-plane pairs lying on a fold of the front (near a
/// caustic) are counted separately and left out of the clusters, as is the
/// bin around the origin, where all three planes meet and the fast rotations
/// (k -> 0 in C2) accumulate.
inline DiagnosticReport self_intersections(const std::vector<FrontPoint>& pts, const DiagnosticOptions& opt = {}) {
  DiagnosticReport rep;
  struct Bin {
    std::size_t plane = 0;
    std::size_t off = 0;
    std::array<double, 3> sum{};
  };
  std::unordered_map<detail::CellKey, Bin, detail::CellHash> bins;
  for_each_near_pair(pts, opt, [&](std::size_t i, std::size_t j) {
    ++rep.pairs;
    const double m[3] = {0.5 * (pts[i].r1 + pts[j].r1), 0.5 * (pts[i].r2 + pts[j].r2),
                         0.5 * (pts[i].z + pts[j].z)};
    const bool a = std::abs(m[0]) <= opt.plane_band;
    const bool b = std::abs(m[1]) <= opt.plane_band;
    const bool c = std::abs(m[2]) <= opt.plane_band;
    rep.near_r1 += a;
    rep.near_r2 += b;
    rep.near_z += c;
    auto& bin = bins[detail::cell_of(m[0] + 0.5 * opt.cluster_cell, m[1] + 0.5 * opt.cluster_cell,
                                     m[2] + 0.5 * opt.cluster_cell, opt.cluster_cell)];
    if (a || b || c) {
      ++rep.near_planes;
      ++bin.plane;
    } else if (detail::is_fold_pair(pts[i], pts[j], opt.fold_radius)) {
      ++rep.folds;
    } else {
      ++bin.off;
      for (int d = 0; d < 3; ++d) bin.sum[d] += m[d];
    }
  });
  // bins are centred on multiples of cluster_cell, so the origin bin is {0,0,0}
  const detail::CellKey origin{0, 0, 0};
  for (const auto& [key, bin] : bins) {
    if (key == origin) {
      rep.at_origin = bin.plane + bin.off;
      continue;
    }
    rep.plane_peak = std::max(rep.plane_peak, bin.plane);
  }
  rep.threshold = std::max(opt.min_cluster, static_cast<std::size_t>(
                                                std::ceil(opt.cluster_fraction * static_cast<double>(rep.plane_peak))));
  for (const auto& [key, bin] : bins) {
    if (key == origin || bin.off < rep.threshold) continue;
    const double n = static_cast<double>(bin.off);
    rep.off_plane_clusters.push_back({{bin.sum[0] / n, bin.sum[1] / n, bin.sum[2] / n}, bin.off});
  }
  std::sort(rep.off_plane_clusters.begin(), rep.off_plane_clusters.end(), [](const Cluster& x, const Cluster& y) {
    return x.count != y.count ? x.count > y.count : x.center < y.center;
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Export

enum class Format { csv, ply, json };

inline std::optional<Format> parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "ply") return Format::ply;
  if (s == "json") return Format::json;
  return std::nullopt;
}

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<FrontPoint>& pts) {
  os << "r1,r2,z,case,k,phi,s1,s2,t\n";
  for (const auto& p : pts) {
    os << detail::num(p.r1) << ',' << detail::num(p.r2) << ',' << detail::num(p.z) << ','
       << to_string(p.lambda.id) << ',' << detail::num(p.lambda.k) << ',' << detail::num(p.lambda.phi)
       << ',' << p.lambda.s1 << ',' << p.lambda.s2 << ',' << detail::num(p.t) << '\n';
  }
}

inline void write_ply(std::ostream& os, const std::vector<FrontPoint>& pts) {
  os << "ply\nformat ascii 1.0\nelement vertex " << pts.size()
     << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
  for (const auto& p : pts) os << detail::num(p.r1) << ' ' << detail::num(p.r2) << ' ' << detail::num(p.z) << '\n';
}

inline nlohmann::json to_json(const FrontPoint& p) {
  return {{"r1", p.r1}, {"r2", p.r2}, {"z", p.z},   {"case", std::string(to_string(p.lambda.id))},
          {"k", p.lambda.k}, {"phi", p.lambda.phi}, {"s1", p.lambda.s1}, {"s2", p.lambda.s2}, {"t", p.t}};
}

inline void write_json(std::ostream& os, const std::vector<FrontPoint>& pts) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  os << arr.dump() << '\n';
}

inline void write(std::ostream& os, const std::vector<FrontPoint>& pts, Format f) {
  switch (f) {
    case Format::csv: write_csv(os, pts); break;
    case Format::ply: write_ply(os, pts); break;
    case Format::json: write_json(os, pts); break;
  }
}

inline void export_points(const std::vector<FrontPoint>& pts, Format f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write(os, pts, f);
  os.flush();
  if (!os) throw IoError("write failed: " + path);
}

/// Parses CSV written by write_csv. Group elements are recomputed from lambda and t.
inline std::vector<FrontPoint> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "r1,r2,z,case,k,phi,s1,s2,t") {
    throw IoError("missing or unexpected CSV header");
  }
  std::vector<FrontPoint> out;
  int row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f[9];
    for (auto& field : f) {
      if (!std::getline(ss, field, ',')) throw IoError("short CSV row: " + line);
    }
    const auto id = parse_case(f[3]);
    if (!id) throw IoError("unknown case in CSV row: " + line);
    FrontPoint p{};
    p.r1 = std::stod(f[0]);
    p.r2 = std::stod(f[1]);
    p.z = std::stod(f[2]);
    p.lambda = {*id, std::stod(f[4]), std::stod(f[5]), std::stoi(f[6]), std::stoi(f[7])};
    p.t = std::stod(f[8]);
    p.q = sh2::exp(p.lambda, p.t);
    p.row = row++;
    p.col = 0;
    out.push_back(p);
  }
  return out;
}

inline std::vector<FrontPoint> read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  return read_csv(is);
}

}  // namespace sh2::cloud

#endif  // SH2_CLOUD_HPP
