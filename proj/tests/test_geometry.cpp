#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "fracsh/geometry.hpp"

using namespace fracsh;
using std::numbers::pi;

namespace {

Harmonic frac(std::int64_t p, std::int64_t q, Form form = Form::cos) {
  return Harmonic(HarmonicSpec::fractional(Rational(p, q), form));
}

std::vector<long> sorted_face(std::vector<long> f) {
  std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
  return f;
}

}  // namespace

TEST(Surface, PatchCounts) {
  const auto h = frac(1, 9);
  const auto mesh = build_surface(h, 8, 8, 0.0, h.period() / 4);
  EXPECT_EQ(mesh.vertices.size(), 64u);
  EXPECT_EQ(mesh.quads.size(), 49u);
  std::stringstream obj;
  export_obj(mesh, obj);
  const auto data = read_obj(obj);
  EXPECT_EQ(data.vertices.size(), 64u);
  EXPECT_EQ(data.faces.size(), 49u);
  for (const auto& f : data.faces) EXPECT_EQ(f.size(), 4u);
}

TEST(Surface, RadiusMatchesHarmonic) {
  const auto h = frac(1, 3);
  const auto mesh = build_surface(h, 16, 40);
  for (const auto& v : mesh.vertices) {
    const double r = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    EXPECT_NEAR(r, std::abs(h(v.theta, v.phi).real()), 1e-14);
    EXPECT_NEAR(v.value, h(v.theta, v.phi).real(), 1e-15);
  }
}

TEST(Surface, FullPeriodSeamCloses) {
  const auto h = frac(2, 5);
  const auto mesh = build_surface(h, 12, 50);
  for (int i = 0; i < mesh.n_theta; ++i) {
    const auto& first = mesh.vertices[static_cast<std::size_t>(i * mesh.n_phi)];
    const auto& last = mesh.vertices[static_cast<std::size_t>(i * mesh.n_phi + mesh.n_phi - 1)];
    EXPECT_NEAR(first.x, last.x, 1e-12);
    EXPECT_NEAR(first.y, last.y, 1e-12);
    EXPECT_NEAR(first.z, last.z, 1e-12);
  }
}

TEST(Surface, Arguments) {
  const auto h = frac(1, 2);
  EXPECT_THROW(build_surface(h, 4, 16), DomainError);
  EXPECT_THROW(build_surface(h, 16, 16, 1.0, 0.5), DomainError);
  EXPECT_THROW(build_surface(h, 16, 16, 0.0, 2 * h.period()), DomainError);
}

TEST(Surface, PositiveAndNegativeLobesCoincideForEvenN) {
  // Y(theta, phi + n*pi) = -Y(theta, phi) for l = 1/n: the negative lobe
  // traces the same spatial surface when n is even.
  for (std::int64_t n : {2, 4, 6}) {
    const auto h = frac(1, n);
    const int per_turn = 32;
    const auto mesh = build_surface(h, 9, per_turn * static_cast<int>(n) + 1);
    std::set<std::tuple<long, long, long>> pos, neg;
    for (const auto& v : mesh.vertices) {
      if (std::abs(v.value) < 1e-12) continue;
      const auto key = std::make_tuple(std::lround(v.x * 1e6), std::lround(v.y * 1e6), std::lround(v.z * 1e6));
      (v.value > 0 ? pos : neg).insert(key);
    }
    EXPECT_EQ(pos, neg) << n;
  }
}

TEST(Export, ObjRoundTrip) {
  const auto h = frac(1, 2);
  const auto mesh = build_surface(h, 10, 20);
  std::stringstream obj;
  export_obj(mesh, obj);
  const auto data = read_obj(obj);
  ASSERT_EQ(data.vertices.size(), mesh.vertices.size());
  for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
    EXPECT_NEAR(data.vertices[k][0], mesh.vertices[k].x, 1e-11);
    EXPECT_NEAR(data.vertices[k][1], mesh.vertices[k].y, 1e-11);
    EXPECT_NEAR(data.vertices[k][2], mesh.vertices[k].z, 1e-11);
  }
  std::multiset<std::vector<long>> written, expected;
  for (std::size_t k = 0; k < data.faces.size(); ++k) {
    written.insert(sorted_face(data.faces[k]));
  }
  for (const auto& q : mesh.quads) {
    expected.insert(sorted_face({q[0] + 1L, q[1] + 1L, q[2] + 1L, q[3] + 1L}));
  }
  EXPECT_EQ(written, expected);
  // every face lands in the group matching its corner sign
  std::size_t positives = 0;
  for (const auto& q : mesh.quads) positives += mesh.quad_positive(q);
  EXPECT_EQ(static_cast<std::size_t>(std::count(data.face_groups.begin(), data.face_groups.end(), "positive")),
            positives);
}

TEST(Export, PlyRoundTrip) {
  const auto h = frac(3, 4, Form::sin);
  const auto mesh = build_surface(h, 12, 30);
  std::stringstream ply(std::ios::in | std::ios::out | std::ios::binary);
  export_ply(mesh, ply);
  const auto data = read_ply(ply);
  ASSERT_EQ(data.vertices.size(), mesh.vertices.size());
  ASSERT_EQ(data.faces.size(), mesh.quads.size());
  for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
    EXPECT_EQ(data.vertices[k][0], static_cast<float>(mesh.vertices[k].x));
    EXPECT_EQ(data.vertices[k][1], static_cast<float>(mesh.vertices[k].y));
    EXPECT_EQ(data.vertices[k][2], static_cast<float>(mesh.vertices[k].z));
    EXPECT_EQ(data.quality[k], static_cast<float>(mesh.vertices[k].value));
  }
  for (std::size_t k = 0; k < mesh.quads.size(); ++k) {
    for (int c = 0; c < 4; ++c) EXPECT_EQ(data.faces[k][c], static_cast<std::int32_t>(mesh.quads[k][c]));
  }
}

TEST(Export, CsvRoundTrip) {
  const auto h = frac(2, 3);
  const auto curve = xy_view(h, 256);
  EXPECT_EQ(curve.samples.size(), 256u);
  EXPECT_DOUBLE_EQ(curve.samples.back().phi, 6 * pi);
  std::stringstream csv;
  export_csv(curve, csv);
  const auto table = read_csv(csv);
  ASSERT_EQ(table.header, (std::vector<std::string>{"phi", "r", "sign"}));
  ASSERT_EQ(table.rows.size(), curve.samples.size());
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    EXPECT_NEAR(table.rows[k][0], curve.samples[k].phi, 1e-10);
    EXPECT_NEAR(table.rows[k][1], curve.samples[k].r, 1e-12);
    EXPECT_EQ(table.rows[k][2], curve.samples[k].sign);
  }

  const auto mesh = build_surface(h, 8, 8);
  std::stringstream mcsv;
  export_csv(mesh, mcsv);
  const auto mt = read_csv(mcsv);
  ASSERT_EQ(mt.rows.size(), 64u);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_NEAR(mt.rows[k][2], mesh.vertices[k].value, 1e-12);
}

TEST(Export, EmptyInputRejected) {
  std::stringstream out;
  EXPECT_THROW(export_obj(SurfaceMesh{}, out), Error);
  EXPECT_THROW(export_csv(PlanarCurve{}, out), Error);
}

TEST(Export, ReadersRejectGarbage) {
  std::stringstream bad_obj("v 1 2\n");
  EXPECT_THROW(read_obj(bad_obj), ParseError);
  std::stringstream bad_ply("ply\nformat ascii 1.0\nend_header\n");
  EXPECT_THROW(read_ply(bad_ply), ParseError);
  std::stringstream bad_csv("a,b\n1,2,3\n");
  EXPECT_THROW(read_csv(bad_csv), ParseError);
}

TEST(XyView, ClosesAfterWholePeriod) {
  for (const auto& h : {frac(1, 2), frac(2, 3), frac(3, 4, Form::sin)}) {
    const auto c = xy_view(h, 128);
    EXPECT_NEAR(c.samples.front().r, c.samples.back().r, 1e-12);
  }
  EXPECT_THROW(xy_view(frac(1, 2), 10), DomainError);
}
