#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "divquad/variety.hpp"

namespace divquad {

/// 17 significant digits: enough to round-trip a double exactly, and the
/// formatting is deterministic, so reparse-and-rewrite is byte-identical.
inline std::string format_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("refusing to serialize a non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// One point per line: n, m, s, field flag, then the raw coordinates in
/// pack_point order (Z re/im pairs for complex specs, then all V, then all W).
inline std::string format_point_line(const VarietySpec& spec, const QuadricPoint& p) {
  std::ostringstream os;
  os << spec.n << ' ' << spec.m << ' ' << spec.s << ' ' << field_name(spec.field);
  const Eigen::VectorXd x = pack_point(spec, p);
  for (Eigen::Index i = 0; i < x.size(); ++i) os << ' ' << format_double(x[i]);
  return os.str();
}

inline void write_point_cloud(std::ostream& out, const VarietySpec& spec,
                              const std::vector<QuadricPoint>& points) {
  for (const auto& p : points) out << format_point_line(spec, p) << '\n';
}

/// Header fields carried by every record; the frame itself is not part of
/// the line format.
struct CloudHeader {
  int n = 0;
  int m = 0;
  int s = 0;
  Field field = Field::Complex;

  int coord_count() const { return (field == Field::Complex ? 2 * m : m) + 2 * n * s; }
};

struct PointCloud {
  CloudHeader header;
  std::vector<std::vector<double>> coords;  // raw packed coordinates per point
};

inline PointCloud read_point_cloud(std::istream& in) {
  PointCloud cloud;
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    CloudHeader h;
    std::string field;
    if (!(ls >> h.n >> h.m >> h.s >> field)) {
      throw std::runtime_error("point cloud line " + std::to_string(lineno) + ": bad header");
    }
    if (field == "real") {
      h.field = Field::Real;
    } else if (field == "complex") {
      h.field = Field::Complex;
    } else {
      throw std::runtime_error("point cloud line " + std::to_string(lineno) +
                               ": unknown field flag '" + field + "'");
    }
    if (cloud.coords.empty()) {
      cloud.header = h;
    } else if (h.n != cloud.header.n || h.m != cloud.header.m || h.s != cloud.header.s ||
               h.field != cloud.header.field) {
      throw std::runtime_error("point cloud line " + std::to_string(lineno) +
                               ": header fields differ from the first record");
    }
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(h.coord_count()));
    double v;
    while (ls >> v) xs.push_back(v);
    if (static_cast<int>(xs.size()) != h.coord_count()) {
      throw std::runtime_error("point cloud line " + std::to_string(lineno) +
                               ": expected " + std::to_string(h.coord_count()) +
                               " coordinates, got " + std::to_string(xs.size()));
    }
    cloud.coords.push_back(std::move(xs));
  }
  return cloud;
}

inline std::string cloud_line_from_coords(const CloudHeader& h, const std::vector<double>& xs) {
  std::ostringstream os;
  os << h.n << ' ' << h.m << ' ' << h.s << ' ' << field_name(h.field);
  for (double v : xs) os << ' ' << format_double(v);
  return os.str();
}

/// Frame file: one vector per line, n whitespace-separated reals.
inline std::vector<AlgebraElement> load_frame_file(const std::string& path, int n) {
  require_algebra_dim(n);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open frame file: " + path);
  std::vector<AlgebraElement> frame;
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<double> xs;
    double v;
    while (ls >> v) xs.push_back(v);
    if (xs.empty()) continue;
    if (static_cast<int>(xs.size()) != n) {
      throw std::runtime_error("frame file line " + std::to_string(lineno) + ": expected " +
                               std::to_string(n) + " entries, got " +
                               std::to_string(xs.size()));
    }
    AlgebraElement e(n);
    for (int i = 0; i < n; ++i) e[i] = xs[static_cast<std::size_t>(i)];
    frame.push_back(e);
  }
  return frame;
}

}  // namespace divquad
