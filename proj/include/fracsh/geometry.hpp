#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracsh/analysis.hpp"
#include "fracsh/error.hpp"
#include "fracsh/harmonics.hpp"

namespace fracsh {

struct MeshVertex {
  double x, y, z;
  double theta, phi;
  double value;  // signed; the radius is |value|
  int sign() const { return value < 0 ? -1 : 1; }
};

// Regular (theta, phi) grid surface r = |Y| with quads between adjacent
// grid lines. Both ends of the phi range are included, so a full-period
// mesh repeats the phi = 0 column at phi = period and closes the seam.
struct SurfaceMesh {
  std::vector<MeshVertex> vertices;
  std::vector<std::array<std::uint32_t, 4>> quads;
  std::string spec_label;
  double phi_begin = 0;
  double phi_end = 0;
  int n_theta = 0;
  int n_phi = 0;

  // Quads are positive when the corner values sum to >= 0.
  bool quad_positive(const std::array<std::uint32_t, 4>& q) const {
    double s = 0;
    for (auto k : q) s += vertices[k].value;
    return s >= 0;
  }
};

struct CurveSample {
  double phi;
  double r;
  int sign;
};

// Equatorial (theta = pi/2) trace of a harmonic, as seen from above.
struct PlanarCurve {
  std::vector<CurveSample> samples;
  std::string spec_label;
};

namespace detail {

inline double signed_value(const Harmonic& h, double theta, double phi, double& radius) {
  const auto y = h(theta, phi);
  radius = is_real_form(h.spec().form()) ? std::abs(y.real()) : std::abs(y);
  return y.real() < 0 ? -radius : radius;
}

inline void check_phi_range(const Harmonic& h, double phi_begin, double phi_end) {
  const double slack = 1e-12 * h.period();
  if (!(phi_begin >= -slack && phi_end <= h.period() + slack && phi_begin < phi_end))
    throw DomainError("phi range must be a non-empty sub-interval of [0, period]");
}

}  // namespace detail

// Vertex (i, j) sits at r = |Y(theta_i, phi_j)| in the direction
// (theta_i, phi_j mod 2*pi); the extended period only changes how often the
// surface wraps around z. Complex forms use |Y| and the sign of Re Y.
inline SurfaceMesh build_surface(const Harmonic& h, int n_theta, int n_phi, double phi_begin, double phi_end) {
  if (n_theta < 8 || n_phi < 8) throw DomainError("build_surface: need at least 8 points per axis");
  detail::check_phi_range(h, phi_begin, phi_end);
  phi_begin = std::max(phi_begin, 0.0);
  phi_end = std::min(phi_end, h.period());

  SurfaceMesh mesh;
  mesh.spec_label = h.spec().label();
  mesh.phi_begin = phi_begin;
  mesh.phi_end = phi_end;
  mesh.n_theta = n_theta;
  mesh.n_phi = n_phi;
  mesh.vertices.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double theta = i == n_theta - 1 ? std::numbers::pi : std::numbers::pi * i / (n_theta - 1);
    const double st = detail::sin_polar(theta);
    const double ct = std::cos(theta);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j == n_phi - 1 ? phi_end : phi_begin + (phi_end - phi_begin) * j / (n_phi - 1);
      double r = 0;
      const double value = detail::signed_value(h, theta, phi, r);
      const double phi_s = detail::wrap_2pi(phi);
      mesh.vertices.push_back({r * st * std::cos(phi_s), r * st * std::sin(phi_s), r * ct, theta, phi, value});
    }
  }
  for (int i = 0; i + 1 < n_theta; ++i) {
    for (int j = 0; j + 1 < n_phi; ++j) {
      const auto a = static_cast<std::uint32_t>(i * n_phi + j);
      const auto b = static_cast<std::uint32_t>((i + 1) * n_phi + j);
      mesh.quads.push_back({a, b, b + 1, a + 1});
    }
  }
  return mesh;
}

inline SurfaceMesh build_surface(const Harmonic& h, int n_theta, int n_phi) {
  return build_surface(h, n_theta, n_phi, 0.0, h.period());
}

// Samples the equator over the whole period, both ends included.
inline PlanarCurve xy_view(const Harmonic& h, int n_phi) {
  if (n_phi < 64) throw DomainError("xy_view: need at least 64 samples");
  PlanarCurve curve;
  curve.spec_label = h.spec().label();
  const double period = h.period();
  for (int j = 0; j < n_phi; ++j) {
    const double phi = j == n_phi - 1 ? period : period * j / (n_phi - 1);
    double r = 0;
    const double value = detail::signed_value(h, std::numbers::pi / 2, phi, r);
    curve.samples.push_back({phi, r, value < 0 ? -1 : (value > 0 ? 1 : 0)});
  }
  return curve;
}

namespace detail {

inline std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void check_stream(std::ostream& out, const char* what) {
  if (!out) throw Error(std::string("write failed: ") + what);
}

template <class T>
void put_le(std::ostream& out, T v) {
  static_assert(std::is_arithmetic_v<T>);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(bytes, sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  char bytes[sizeof(T)];
  if (!in.read(bytes, sizeof(T))) throw ParseError("PLY: truncated binary body");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

}  // namespace detail

// ASCII OBJ, 1-based indices. Faces are split into `g positive` and
// `g negative` groups.
inline void export_obj(const SurfaceMesh& mesh, std::ostream& out) {
  if (mesh.vertices.empty()) throw DomainError("export_obj: empty mesh");
  out << "# fracsh surface " << mesh.spec_label << "\n";
  out << "# vertices " << mesh.vertices.size() << " faces " << mesh.quads.size() << "\n";
  for (const auto& v : mesh.vertices)
    out << "v " << detail::fmt12(v.x) << ' ' << detail::fmt12(v.y) << ' ' << detail::fmt12(v.z) << '\n';
  for (const bool positive : {true, false}) {
    out << (positive ? "g positive\n" : "g negative\n");
    for (const auto& q : mesh.quads) {
      if (mesh.quad_positive(q) != positive) continue;
      out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
    }
  }
  detail::check_stream(out, "OBJ");
}

// Binary little-endian PLY: float32 x, y, z and float32 quality holding the
// signed value; quads as uchar-counted int lists.
inline void export_ply(const SurfaceMesh& mesh, std::ostream& out) {
  if (mesh.vertices.empty()) throw DomainError("export_ply: empty mesh");
  out << "ply\n"
      << "format binary_little_endian 1.0\n"
      << "comment fracsh surface " << mesh.spec_label << "\n"
      << "element vertex " << mesh.vertices.size() << "\n"
      << "property float x\n"
      << "property float y\n"
      << "property float z\n"
      << "property float quality\n"
      << "element face " << mesh.quads.size() << "\n"
      << "property list uchar int vertex_indices\n"
      << "end_header\n";
  for (const auto& v : mesh.vertices) {
    detail::put_le(out, static_cast<float>(v.x));
    detail::put_le(out, static_cast<float>(v.y));
    detail::put_le(out, static_cast<float>(v.z));
    detail::put_le(out, static_cast<float>(v.value));
  }
  for (const auto& q : mesh.quads) {
    detail::put_le(out, static_cast<std::uint8_t>(4));
    for (auto k : q) detail::put_le(out, static_cast<std::int32_t>(k));
  }
  detail::check_stream(out, "PLY");
}

// CSV with header phi,r,sign.
inline void export_csv(const PlanarCurve& curve, std::ostream& out) {
  if (curve.samples.empty()) throw DomainError("export_csv: empty curve");
  out << "phi,r,sign\n";
  for (const auto& s : curve.samples) out << detail::fmt12(s.phi) << ',' << detail::fmt12(s.r) << ',' << s.sign << '\n';
  detail::check_stream(out, "CSV");
}

// CSV with header theta,phi,value (raw phi over the extended period).
inline void export_csv(const SampleCloud& cloud, std::ostream& out) {
  if (cloud.points.empty()) throw DomainError("export_csv: empty cloud");
  out << "theta,phi,value\n";
  for (const auto& p : cloud.points)
    out << detail::fmt12(p.theta) << ',' << detail::fmt12(p.phi) << ',' << detail::fmt12(p.value) << '\n';
  detail::check_stream(out, "CSV");
}

inline void export_csv(const SurfaceMesh& mesh, std::ostream& out) {
  if (mesh.vertices.empty()) throw DomainError("export_csv: empty mesh");
  out << "theta,phi,value\n";
  for (const auto& v : mesh.vertices)
    out << detail::fmt12(v.theta) << ',' << detail::fmt12(v.phi) << ',' << detail::fmt12(v.value) << '\n';
  detail::check_stream(out, "CSV");
}

// Readers for the formats above, used to check exports.

struct ObjData {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::vector<long>> faces;  // 1-based, as written
  std::vector<std::string> face_groups;
};

inline ObjData read_obj(std::istream& in) {
  ObjData data;
  std::string line, group;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      std::array<double, 3> v{};
      if (!(ls >> v[0] >> v[1] >> v[2])) throw ParseError("OBJ: bad vertex line: " + line);
      data.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<long> face;
      std::string tok;
      while (ls >> tok) {
        const long idx = std::stol(tok.substr(0, tok.find('/')));
        if (idx < 1 || idx > static_cast<long>(data.vertices.size()))
          throw ParseError("OBJ: face index out of range: " + line);
        face.push_back(idx);
      }
      if (face.size() < 3) throw ParseError("OBJ: face with fewer than 3 vertices");
      data.faces.push_back(std::move(face));
      data.face_groups.push_back(group);
    } else if (tag == "g") {
      ls >> group;
    }
  }
  return data;
}

struct PlyData {
  std::vector<std::array<float, 3>> vertices;
  std::vector<float> quality;
  std::vector<std::vector<std::int32_t>> faces;
};

inline PlyData read_ply(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "ply") throw ParseError("PLY: missing magic");
  std::size_t n_vertex = 0, n_face = 0;
  bool binary_le = false;
  while (std::getline(in, line)) {
    if (line == "end_header") break;
    std::istringstream ls(line);
    std::string a, b;
    ls >> a >> b;
    if (a == "format") binary_le = b == "binary_little_endian";
    if (a == "element" && b == "vertex") ls >> n_vertex;
    if (a == "element" && b == "face") ls >> n_face;
  }
  if (!binary_le) throw ParseError("PLY: only binary_little_endian is supported");
  PlyData data;
  for (std::size_t k = 0; k < n_vertex; ++k) {
    std::array<float, 3> v{};
    for (auto& c : v) c = detail::get_le<float>(in);
    data.vertices.push_back(v);
    data.quality.push_back(detail::get_le<float>(in));
  }
  for (std::size_t k = 0; k < n_face; ++k) {
    const auto count = detail::get_le<std::uint8_t>(in);
    std::vector<std::int32_t> face(count);
    for (auto& idx : face) {
      idx = detail::get_le<std::int32_t>(in);
      if (idx < 0 || static_cast<std::size_t>(idx) >= n_vertex) throw ParseError("PLY: face index out of range");
    }
    data.faces.push_back(std::move(face));
  }
  return data;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("CSV: missing header");
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream rs(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != table.header.size()) throw ParseError("CSV: ragged row: " + line);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace fracsh
