#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracsh/analysis.hpp"

using namespace fracsh;
using std::numbers::pi;

namespace {

SampleCloud cloud_of(const Rational& l, Form form, int res = 64) {
  return sample_cloud(Harmonic(HarmonicSpec::fractional(l, form)), res, res);
}

}  // namespace

TEST(SampleCloud, Shape) {
  const auto c = cloud_of(Rational(1, 3), Form::cos, 32);
  EXPECT_EQ(c.points.size(), 32u * 32u * 3u);
  EXPECT_GT(c.max_r, 0);
  EXPECT_DOUBLE_EQ(c.points.front().theta, 0.0);
  EXPECT_THROW(sample_cloud(Harmonic(HarmonicSpec::fractional(Rational(1, 2), Form::cos)), 8, 64), DomainError);
}

TEST(SpatialTransform, InverseComposesToIdentity) {
  for (const auto& t : {SpatialTransform::xz_mirror(), SpatialTransform::yz_mirror(), SpatialTransform::rotation(1.1)}) {
    const auto inv = t.inverse();
    const double phi = 0.8;
    const double once = t.phi_sign * phi + t.phi_shift;
    const double back = inv.phi_sign * once + inv.phi_shift;
    EXPECT_NEAR(detail::wrap_2pi(back), phi, 1e-14);
  }
}

TEST(SetSymmetry, IdentityAlwaysHolds) {
  const auto c = cloud_of(Rational(1, 5), Form::cos);
  const auto r = test_transform_invariance(c, SpatialTransform::identity());
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.max_mismatch, 1e-14);
}

TEST(SetSymmetry, EquatorialMirrorForAllN) {
  for (std::int64_t n = 2; n <= 9; ++n) {
    EXPECT_TRUE(test_transform_invariance(cloud_of(Rational(1, n), Form::cos), SpatialTransform::xy_mirror()).holds)
        << n;
  }
}

TEST(SetSymmetry, GenuineAsymmetryDetected) {
  // The sin graph of l = 1/3 is not carried onto itself by the X-Z mirror.
  const auto c = cloud_of(Rational(1, 3), Form::sin);
  const auto r = test_transform_invariance(c, SpatialTransform::xz_mirror());
  EXPECT_FALSE(r.holds);
  EXPECT_GT(r.max_mismatch, 1e-3);
}

TEST(SetSymmetry, SinIsRotatedCosForOddN) {
  const auto c = cloud_of(Rational(1, 3), Form::cos);
  const auto s = cloud_of(Rational(1, 3), Form::sin);
  EXPECT_TRUE(test_transform_maps(c, s, SpatialTransform::rotation(3 * pi / 2), false).holds);
  EXPECT_FALSE(test_transform_maps(c, s, SpatialTransform::identity(), false).holds);
}

TEST(SymmetryRules, Table) {
  EXPECT_EQ(SymmetryRules::for_n(2).relation, SinCosRelation::mirror_flip);
  EXPECT_EQ(SymmetryRules::for_n(6).relation, SinCosRelation::mirror_flip);
  EXPECT_EQ(SymmetryRules::for_n(4).relation, SinCosRelation::identical);
  EXPECT_EQ(SymmetryRules::for_n(8).relation, SinCosRelation::identical);
  EXPECT_EQ(SymmetryRules::for_n(5).relation, SinCosRelation::rotated_90);
  EXPECT_TRUE(SymmetryRules::for_n(7).yz_plane_antisymmetric.value_or(false));
  EXPECT_FALSE(SymmetryRules::for_n(7).pos_neg_overlap);
  EXPECT_TRUE(SymmetryRules::for_n(4).pos_neg_overlap);
}

class ClassifySymmetry : public ::testing::TestWithParam<int> {};

TEST_P(ClassifySymmetry, AgreesWithRules) {
  const std::int64_t n = GetParam();
  const auto rep = classify_symmetry(n);
  const auto rules = SymmetryRules::for_n(n);
  EXPECT_TRUE(rep.disagreements.empty()) << rep.disagreements.front();
  EXPECT_TRUE(rep.xy_plane_symmetric);
  EXPECT_TRUE(rep.xz_plane_symmetric);
  EXPECT_EQ(rep.pos_neg_overlap, n % 2 == 0);
  EXPECT_EQ(rep.sin_vs_cos_relation, rules.relation);
  if (n % 2 == 1) {
    EXPECT_TRUE(rep.yz_plane_antisymmetric);
    EXPECT_NEAR(std::min(rep.relation_angle, 2 * pi - rep.relation_angle), pi / 2, 1e-12);
  }
  if (n % 4 == 0) {
    ASSERT_TRUE(rep.sin_rotation_angle.has_value());
    EXPECT_EQ(*rep.sin_rotation_angle, 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(NTwoToNine, ClassifySymmetry, ::testing::Range(2, 10));

TEST(ClassifySymmetry, Arguments) {
  EXPECT_THROW(classify_symmetry(1), DomainError);
  EXPECT_THROW(classify_symmetry(3, {}, 30), DomainError);
}

TEST(Continuity, PrecessionAngles) {
  EXPECT_NEAR(continuity_report(Rational(2, 3), Form::cos).precession_angle, pi, 1e-12);
  EXPECT_NEAR(continuity_report(Rational(3, 4), Form::cos).precession_angle, 2 * pi / 3, 1e-12);
  EXPECT_NEAR(continuity_report(Rational(2, 5), Form::cos).precession_angle, pi, 1e-12);
  EXPECT_EQ(continuity_report(Rational(1, 7), Form::cos).precession_angle, 0.0);
}

TEST(Continuity, SeamGaps) {
  // gap / amplitude = |1 - e^{i delta}|: 2 for delta = pi, sqrt(3) for 2pi/3
  const double frozen[][2] = {{0.535804116583026054, 0.267902058291513027},
                              {0.407484643099598074, 0.235261368384191529},
                              {0.394630706786184938, 0.197315353393092469}};
  const Rational degrees[] = {Rational(2, 3), Rational(3, 4), Rational(2, 5)};
  for (int k = 0; k < 3; ++k) {
    const auto c = continuity_report(degrees[k], Form::cos);
    EXPECT_NEAR(c.seam_chord_gap, frozen[k][0], 1e-12);
    EXPECT_NEAR(c.amplitude, frozen[k][1], 1e-12);
    EXPECT_GT(c.seam_chord_gap, 0.1 * c.amplitude);
    EXPECT_NEAR(continuity_report(degrees[k], Form::sin).seam_chord_gap, 0.0, 1e-10);
  }
  for (std::int64_t n = 2; n <= 9; ++n) {
    EXPECT_NEAR(continuity_report(Rational(1, n), Form::cos).seam_chord_gap, 0.0, 1e-10);
  }
}

TEST(Continuity, WholeCurveCloses) {
  for (const Rational l : {Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(2, 5), Rational(5, 7)}) {
    for (const Form f : {Form::cos, Form::sin}) {
      const auto c = continuity_report(l, f);
      EXPECT_TRUE(c.closes) << l << " " << to_string(f);
      EXPECT_LT(c.closure_jump, 1e-9);
    }
  }
  EXPECT_THROW(continuity_report(Rational(1, 2), Form::complex_plus), DomainError);
  EXPECT_THROW(continuity_report(Rational(0), Form::cos), DomainError);
}

TEST(Continuity, NevilleExtrapolation) {
  // y = 3 + 2h - h^2 + 0.5 h^3 is reproduced exactly at h = 0
  std::vector<double> h{0.4, 0.2, 0.1, 0.05}, y;
  for (double x : h) y.push_back(3 + 2 * x - x * x + 0.5 * x * x * x);
  EXPECT_NEAR(detail::extrapolate_to_zero(h, y), 3.0, 1e-13);
}
