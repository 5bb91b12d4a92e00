#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fracsh/classes.hpp"
#include "fracsh/error.hpp"
#include "fracsh/harmonics.hpp"
#include "fracsh/numerics.hpp"
#include "fracsh/rational.hpp"

namespace fracsh {

// One sample of a harmonic's graph. (i, j) index the polar row and the
// spatial azimuth column; several sheets of the extended period share the
// same column.
struct CloudPoint {
  double theta;
  double phi;          // raw azimuth in [0, period)
  double phi_spatial;  // phi mod 2*pi
  double r;            // |value|
  double value;        // signed value (real part for complex forms)
  int sign;            // -1, 0, +1
  int i;
  int j;
};

struct SampleCloud {
  HarmonicSpec spec;
  int n_theta = 0;
  int n_phi_per_2pi = 0;
  double max_r = 0;
  double match_tol = 0;
  std::vector<CloudPoint> points;

  double theta_step() const { return std::numbers::pi / (n_theta - 1); }
  double phi_step() const { return 2 * std::numbers::pi / n_phi_per_2pi; }
};

// Samples theta on [0, pi] (both poles included) and phi on the whole
// extended period at n_phi_per_2pi columns per sheet. Points are ordered
// by theta row, then raw phi.
inline SampleCloud sample_cloud(const Harmonic& harmonic, int n_theta, int n_phi_per_2pi, const Tolerances& tol = {}) {
  tol.validate();
  if (n_theta < 16 || n_phi_per_2pi < 16) throw DomainError("sample_cloud: need at least 16 points per axis");
  SampleCloud cloud{harmonic.spec(), n_theta, n_phi_per_2pi, 0.0, tol.match_tol, {}};
  const std::int64_t turns = harmonic.spec().turns();
  const std::int64_t n_phi = n_phi_per_2pi * turns;
  cloud.points.reserve(static_cast<std::size_t>(n_theta * n_phi));
  const bool real = is_real_form(harmonic.spec().form());
  for (int i = 0; i < n_theta; ++i) {
    const double theta = i == n_theta - 1 ? std::numbers::pi : std::numbers::pi * i / (n_theta - 1);
    for (std::int64_t j = 0; j < n_phi; ++j) {
      const double phi = 2 * std::numbers::pi * static_cast<double>(j) / n_phi_per_2pi;
      const int col = static_cast<int>(j % n_phi_per_2pi);
      const auto y = harmonic(theta, phi);
      const double r = real ? std::abs(y.real()) : std::abs(y);
      cloud.points.push_back({theta, phi, 2 * std::numbers::pi * col / n_phi_per_2pi, r, y.real(), 0, i, col});
      cloud.max_r = std::max(cloud.max_r, r);
    }
  }
  const double zero = tol.match_tol * cloud.max_r;
  for (auto& p : cloud.points) p.sign = p.r < zero ? 0 : (p.value > 0 ? 1 : -1);
  return cloud;
}

// theta -> pi - theta (optional), phi -> phi_sign * phi + phi_shift, and an
// optional global sign flip. Covers the mirrors through the coordinate
// planes and rotations about z.
struct SpatialTransform {
  bool reflect_theta = false;
  int phi_sign = 1;
  double phi_shift = 0;
  bool flip_sign = false;

  static SpatialTransform identity() { return {}; }
  static SpatialTransform xy_mirror() { return {true, 1, 0, false}; }
  static SpatialTransform xz_mirror() { return {false, -1, 0, false}; }
  static SpatialTransform yz_mirror() { return {false, -1, std::numbers::pi, false}; }
  static SpatialTransform rotation(double angle) { return {false, 1, angle, false}; }

  SpatialTransform flipped() const {
    SpatialTransform t = *this;
    t.flip_sign = !t.flip_sign;
    return t;
  }

  SpatialTransform inverse() const {
    SpatialTransform t = *this;
    t.phi_shift = phi_sign == 1 ? -phi_shift : phi_shift;
    return t;
  }
};

struct MatchResult {
  bool holds = false;
  double max_mismatch = 0;
};

namespace detail {

inline double wrap_2pi(double a) {
  constexpr double two_pi = 2 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0) a += two_pi;
  if (a >= two_pi) a -= two_pi;
  return a;
}

// Points of a cloud bucketed by (theta row, spatial column).
class CloudIndex {
 public:
  explicit CloudIndex(const SampleCloud& cloud) : cloud_(&cloud) {
    const std::size_t buckets = static_cast<std::size_t>(cloud.n_theta) * cloud.n_phi_per_2pi;
    offsets_.assign(buckets + 1, 0);
    for (const auto& p : cloud.points) ++offsets_[key(p.i, p.j) + 1];
    for (std::size_t b = 0; b < buckets; ++b) offsets_[b + 1] += offsets_[b];
    entries_.resize(cloud.points.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t k = 0; k < cloud.points.size(); ++k) {
      const auto& p = cloud.points[k];
      entries_[fill[key(p.i, p.j)]++] = k;
    }
  }

  const SampleCloud& cloud() const { return *cloud_; }

  template <class Visit>
  void for_each_in(int i, int j, Visit&& visit) const {
    const std::size_t b = key(i, j);
    for (std::size_t k = offsets_[b]; k < offsets_[b + 1]; ++k) visit(cloud_->points[entries_[k]]);
  }

 private:
  std::size_t key(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cloud_->n_phi_per_2pi) + static_cast<std::size_t>(j);
  }

  const SampleCloud* cloud_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> entries_;
};

// Worst nearest-neighbour mismatch of transform(from) against `to`.
// Mismatch per point is the larger of the angular offset to the nearest
// grid node and the relative radius difference to the best sign-compatible
// point there. Stops as soon as `stop_above` is exceeded.
inline double worst_mismatch(const SampleCloud& from, const CloudIndex& to, const SpatialTransform& t,
                             double scale, double stop_above) {
  const SampleCloud& target = to.cloud();
  const double dtheta = target.theta_step();
  const double dphi = target.phi_step();
  const double two_pi = 2 * std::numbers::pi;
  double worst = 0;
  for (const auto& p : from.points) {
    const double theta = t.reflect_theta ? std::numbers::pi - p.theta : p.theta;
    const double phi = wrap_2pi(t.phi_sign * p.phi_spatial + t.phi_shift);
    const int sign = t.flip_sign ? -p.sign : p.sign;

    const long ii = std::lround(theta / dtheta);
    long jj = std::lround(phi / dphi);
    double offset = std::abs(theta - static_cast<double>(ii) * dtheta);
    double dphi_off = std::abs(phi - static_cast<double>(jj) * dphi);
    dphi_off = std::min(dphi_off, two_pi - dphi_off);
    offset = std::max(offset, dphi_off);
    jj %= target.n_phi_per_2pi;

    double best = std::numeric_limits<double>::infinity();
    if (ii >= 0 && ii < target.n_theta) {
      to.for_each_in(static_cast<int>(ii), static_cast<int>(jj), [&](const CloudPoint& q) {
        if (sign != 0 && q.sign != 0 && sign != q.sign) return;
        best = std::min(best, std::abs(p.r - q.r) / scale);
      });
    }
    worst = std::max(worst, std::max(best, offset));
    if (worst > stop_above) break;
  }
  return worst;
}

}  // namespace detail

// Set-level test: does `t` map the cloud onto itself? Every transformed
// point needs a neighbour within match_tol in (theta, phi_spatial, r, sign).
inline MatchResult test_transform_invariance(const SampleCloud& cloud, const SpatialTransform& t) {
  if (cloud.points.empty()) throw DomainError("test_transform_invariance: empty cloud");
  const detail::CloudIndex index(cloud);
  const double scale = cloud.max_r > 0 ? cloud.max_r : 1.0;
  const double worst = detail::worst_mismatch(cloud, index, t, scale, std::numeric_limits<double>::infinity());
  return {worst <= cloud.match_tol, worst};
}

// Does `t` map cloud `from` onto cloud `to` as point sets? Checked in both
// directions with the inverse transform.
inline MatchResult test_transform_maps(const SampleCloud& from, const SampleCloud& to, const SpatialTransform& t,
                                       bool stop_early = false) {
  if (from.points.empty() || to.points.empty()) throw DomainError("test_transform_maps: empty cloud");
  if (from.n_theta != to.n_theta || from.n_phi_per_2pi != to.n_phi_per_2pi)
    throw DomainError("test_transform_maps: clouds sampled at different resolutions");
  const double tol = std::min(from.match_tol, to.match_tol);
  const double scale = std::max({from.max_r, to.max_r, std::numeric_limits<double>::min()});
  const double stop = stop_early ? tol : std::numeric_limits<double>::infinity();
  const detail::CloudIndex to_index(to);
  double worst = detail::worst_mismatch(from, to_index, t, scale, stop);
  if (worst <= stop) {
    const detail::CloudIndex from_index(from);
    worst = std::max(worst, detail::worst_mismatch(to, from_index, t.inverse(), scale, stop));
  }
  return {worst <= tol, worst};
}

enum class SinCosRelation { identical, mirror_flip, rotated_90, rotated_by, unrelated };

inline std::string_view to_string(SinCosRelation r) {
  switch (r) {
    case SinCosRelation::identical: return "identical";
    case SinCosRelation::mirror_flip: return "mirror_flip";
    case SinCosRelation::rotated_90: return "rotated_90";
    case SinCosRelation::rotated_by: return "rotated_by";
    case SinCosRelation::unrelated: return "unrelated";
  }
  return "?";
}

struct SymmetryReport {
  std::int64_t n = 0;
  bool xy_plane_symmetric = false;
  bool xz_plane_symmetric = false;
  bool yz_plane_symmetric = false;
  bool yz_plane_antisymmetric = false;
  bool pos_neg_overlap = false;
  SinCosRelation sin_vs_cos_relation = SinCosRelation::unrelated;
  double relation_angle = 0;  // rotation angle for rotated_90 / rotated_by, in [0, 2*pi)
  // Smallest sign-preserving rotation about z carrying the cos graph onto
  // the sin graph, if any exists on the sampling grid.
  std::optional<double> sin_rotation_angle;
  int resolution = 0;
  std::vector<std::string> disagreements;
};

// Parity rules for the graphs of Y_{1/n,cos} and Y_{1/n,sin}:
//   all n:   symmetric about the X-Y plane
//   n even:  positive and negative regions coincide, symmetric about X-Z
//   n = 2k, k odd: sin is the left-right mirror image of cos
//   n = 4k:  sin and cos graphs identical
//   n odd:   X-Z symmetric, Y-Z antisymmetric, sin = cos turned 90 degrees about z
struct SymmetryRules {
  bool xz_plane_symmetric = true;
  std::optional<bool> yz_plane_antisymmetric;
  bool pos_neg_overlap = false;
  SinCosRelation relation = SinCosRelation::unrelated;

  static SymmetryRules for_n(std::int64_t n) {
    SymmetryRules r;
    if (n % 2 == 0) {
      r.pos_neg_overlap = true;
      r.relation = n % 4 == 0 ? SinCosRelation::identical : SinCosRelation::mirror_flip;
    } else {
      r.yz_plane_antisymmetric = true;
      r.relation = SinCosRelation::rotated_90;
    }
    return r;
  }
};

// Runs the set-level tests on Y_{1/n,cos} and Y_{1/n,sin} and compares them
// with the parity rules. Disagreements are listed, never resolved.
inline SymmetryReport classify_symmetry(std::int64_t n, const Tolerances& tol = {}, int resolution = 128) {
  if (n < 2) throw DomainError("classify_symmetry: n must be at least 2");
  if (resolution < 16 || resolution % 4 != 0)
    throw DomainError("classify_symmetry: resolution must be a multiple of 4, at least 16");
  const Rational degree(1, n);
  const Harmonic cos_h(HarmonicSpec::fractional(degree, Form::cos), tol.quad_abs_tol);
  const Harmonic sin_h(HarmonicSpec::fractional(degree, Form::sin), tol.quad_abs_tol);
  const SampleCloud cos_cloud = sample_cloud(cos_h, resolution, resolution, tol);
  const SampleCloud sin_cloud = sample_cloud(sin_h, resolution, resolution, tol);

  SymmetryReport report;
  report.n = n;
  report.resolution = resolution;
  report.xy_plane_symmetric = test_transform_invariance(cos_cloud, SpatialTransform::xy_mirror()).holds &&
                              test_transform_invariance(sin_cloud, SpatialTransform::xy_mirror()).holds;
  report.xz_plane_symmetric = test_transform_invariance(cos_cloud, SpatialTransform::xz_mirror()).holds;
  report.yz_plane_symmetric = test_transform_invariance(cos_cloud, SpatialTransform::yz_mirror()).holds;
  report.yz_plane_antisymmetric =
      !report.yz_plane_symmetric && test_transform_invariance(cos_cloud, SpatialTransform::yz_mirror().flipped()).holds;
  report.pos_neg_overlap = test_transform_invariance(cos_cloud, SpatialTransform::identity().flipped()).holds;

  const double half_pi = std::numbers::pi / 2;
  const double step = cos_cloud.phi_step();
  for (int k = 0; k < resolution; ++k) {
    const double angle = step * k;
    if (test_transform_maps(cos_cloud, sin_cloud, SpatialTransform::rotation(angle), true).holds) {
      report.sin_rotation_angle = angle;
      break;
    }
  }

  if (test_transform_maps(cos_cloud, sin_cloud, SpatialTransform::identity()).holds) {
    report.sin_vs_cos_relation = SinCosRelation::identical;
  } else if (test_transform_maps(cos_cloud, sin_cloud, SpatialTransform::yz_mirror()).holds) {
    report.sin_vs_cos_relation = SinCosRelation::mirror_flip;
  } else if (test_transform_maps(cos_cloud, sin_cloud, SpatialTransform::rotation(half_pi)).holds) {
    report.sin_vs_cos_relation = SinCosRelation::rotated_90;
    report.relation_angle = half_pi;
  } else if (test_transform_maps(cos_cloud, sin_cloud, SpatialTransform::rotation(3 * half_pi)).holds) {
    report.sin_vs_cos_relation = SinCosRelation::rotated_90;
    report.relation_angle = 3 * half_pi;
  } else if (report.sin_rotation_angle) {
    report.sin_vs_cos_relation = SinCosRelation::rotated_by;
    report.relation_angle = *report.sin_rotation_angle;
  }

  const SymmetryRules rules = SymmetryRules::for_n(n);
  auto flag = [&](const std::string& what, bool numeric, bool rule) {
    if (numeric != rule)
      report.disagreements.push_back(what + ": numeric " + (numeric ? "true" : "false") + ", rule " +
                                     (rule ? "true" : "false"));
  };
  flag("xy_plane_symmetric", report.xy_plane_symmetric, true);
  flag("xz_plane_symmetric", report.xz_plane_symmetric, rules.xz_plane_symmetric);
  flag("pos_neg_overlap", report.pos_neg_overlap, rules.pos_neg_overlap);
  if (rules.yz_plane_antisymmetric)
    flag("yz_plane_antisymmetric", report.yz_plane_antisymmetric, *rules.yz_plane_antisymmetric);
  if (report.sin_vs_cos_relation != rules.relation)
    report.disagreements.push_back("sin_vs_cos_relation: numeric " + std::string(to_string(report.sin_vs_cos_relation)) +
                                   ", rule " + std::string(to_string(rules.relation)));
  return report;
}

struct ContinuityReport {
  Rational degree;
  Form form = Form::cos;
  double closure_jump = 0;
  double pattern_period = 0;
  double precession_angle = 0;
  double seam_chord_gap = 0;
  double amplitude = 0;
  bool closes = false;
};

namespace detail {

// Neville extrapolation of samples y(h_k) to h = 0.
inline double extrapolate_to_zero(std::vector<double> h, std::vector<double> y) {
  const std::size_t n = y.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t k = 0; k + level < n; ++k) {
      y[k] = (h[k + level] * y[k] - h[k] * y[k + 1]) / (h[k + level] - h[k]);
    }
  }
  return y[0];
}

}  // namespace detail

// Seam behaviour of the equatorial curve of Y_{l,cos|sin}, l = p/q.
//
// The curve shape repeats after the pattern period 2*pi*q/p, turned by the
// precession angle delta = pattern period mod 2*pi. The seam chord gap is
// the distance between the start anchor of one pattern period (phi = 0)
// and the start anchor of the next (phi = pattern period, spatial angle
// delta). closure_jump measures |Y(period - eps) - Y(0)| extrapolated to
// eps -> 0, i.e. whether the whole curve closes after q turns.
inline ContinuityReport continuity_report(const Rational& degree, Form form, const Tolerances& tol = {}) {
  if (!(degree > 0)) throw DomainError("continuity_report: degree must be positive");
  if (!is_real_form(form)) throw DomainError("continuity_report: form must be cos or sin");
  const Harmonic h(HarmonicSpec(degree, degree, form), tol.quad_abs_tol);
  const double equator = std::numbers::pi / 2;
  const double two_pi = 2 * std::numbers::pi;

  ContinuityReport rep;
  rep.degree = degree;
  rep.form = form;
  rep.amplitude = h.normalization() * std::abs(h.shape(equator));

  // pattern period = 2*pi*q/p; its excess over whole turns is (q mod p)/p.
  const std::int64_t p = degree.num();
  const std::int64_t q = degree.den();
  rep.pattern_period = two_pi * static_cast<double>(q) / static_cast<double>(p);
  rep.precession_angle = two_pi * static_cast<double>(q % p) / static_cast<double>(p);

  std::vector<double> eps, diff;
  for (int k = 0; k < 4; ++k) {
    const double e = 1e-3 / std::pow(2.0, k);
    eps.push_back(e);
    diff.push_back(h.real_value(equator, h.period() - e) - h.real_value(equator, 0.0));
  }
  rep.closure_jump = std::abs(detail::extrapolate_to_zero(eps, diff));

  const double r0 = std::abs(h.real_value(equator, 0.0));
  const double r1 = std::abs(h.real_value(equator, rep.pattern_period));
  const double dx = r1 * std::cos(rep.precession_angle) - r0;
  const double dy = r1 * std::sin(rep.precession_angle);
  rep.seam_chord_gap = std::hypot(dx, dy);
  rep.closes = rep.closure_jump <= tol.residual_tol * std::max(1.0, rep.amplitude);
  return rep;
}

}  // namespace fracsh
