#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracsh/numerics.hpp"
#include "fracsh/rational.hpp"

using namespace fracsh;

TEST(Rational, StoredInLowestTerms) {
  const Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, 5), Rational(0));
  EXPECT_EQ(Rational(0, 5).den(), 1);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 3) - Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(1, 5) + Rational(1, 5) - Rational(1, 7), Rational(9, 35));
  EXPECT_EQ(Rational(9, 35) / Rational(1, 2), Rational(18, 35));
  EXPECT_EQ(Rational(1, 2) * (Rational(1, 2) + 1), Rational(3, 4));
  EXPECT_LT(Rational(1, 7), Rational(1, 6));
  EXPECT_GT(Rational(-1, 7), Rational(-1, 6));
  EXPECT_EQ(Rational(-2, 3).abs(), Rational(2, 3));
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("1/2"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-3/9"), Rational(-1, 3));
  EXPECT_EQ(Rational::parse("4"), Rational(4));
  EXPECT_EQ(Rational(3, 4).to_string(), "3/4");
  EXPECT_EQ(Rational(-6, 3).to_string(), "-2");
  for (const char* bad : {"5/0", "0.5", "1/", "/2", "", "a/b", "1/2/3", "+-1/2", "1 /2"}) {
    EXPECT_THROW(Rational::parse(bad), ParseError) << bad;
  }
}

TEST(Rational, OverflowIsReported) {
  const Rational big(std::int64_t{1} << 62, 1);
  EXPECT_THROW(big * big, LimitError);
}

TEST(Rational, RoundTripProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 1000);
  for (int k = 0; k < 500; ++k) {
    const Rational r(num(rng), den(rng));
    EXPECT_EQ(Rational::parse(r.to_string()), r);
    EXPECT_EQ(r + (-r), Rational(0));
    if (!r.is_zero()) {
      EXPECT_EQ(r / r, Rational(1));
    }
  }
}

TEST(Gamma, KnownValues) {
  EXPECT_NEAR(numerics::gamma(0.5), 1.7724538509055160, 1e-13);
  EXPECT_NEAR(numerics::gamma(1.5), 0.8862269254527580, 1e-13);
  EXPECT_NEAR(numerics::gamma(1.0), 1.0, 1e-13);
  EXPECT_NEAR(numerics::gamma(5.0), 24.0, 1e-11);
}

TEST(Gamma, RejectsNonPositive) {
  EXPECT_THROW(numerics::gamma(0.0), DomainError);
  EXPECT_THROW(numerics::gamma(-1.5), DomainError);
  EXPECT_THROW(numerics::gamma(std::nan("")), DomainError);
}

TEST(Gamma, RecurrenceAndLibraryAgreement) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.05, 20.0);
  for (int k = 0; k < 100; ++k) {
    const double x = dist(rng);
    const double g = numerics::gamma(x);
    EXPECT_NEAR(numerics::gamma(x + 1) / (x * g), 1.0, 1e-12) << x;
    EXPECT_NEAR(g / std::tgamma(x), 1.0, 1e-12) << x;
  }
}

TEST(Quadrature, PolynomialAndTrig) {
  const auto r = numerics::integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-14);
  const auto s = numerics::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
  EXPECT_NEAR(s.value, 2.0, 1e-12);
  EXPECT_GT(s.evaluations, 0);
}

TEST(Quadrature, EndpointSingularDerivative) {
  // sin^(2l+1) over [0, pi] against the Wallis closed form, l = 1/9
  const auto r = numerics::integrate([](double t) { return std::pow(std::sin(t), 1.0 + 2.0 / 9.0); }, 0.0,
                                     std::numbers::pi, 1e-10);
  EXPECT_TRUE(r.converged);
  const double l = 1.0 / 9.0;
  const double wallis = std::sqrt(std::numbers::pi) * std::tgamma(l + 1) / std::tgamma(l + 1.5);
  EXPECT_NEAR(r.value, wallis, 1e-10);
}

TEST(Quadrature, AdditivityProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 3.0);
  auto f = [](double x) { return std::exp(-x) * std::cos(3 * x); };
  for (int k = 0; k < 20; ++k) {
    double a = dist(rng), c = dist(rng);
    if (a > c) std::swap(a, c);
    const double b = a + (c - a) * 0.37;
    const double whole = numerics::integrate(f, a, c, 1e-12).value;
    const double split = numerics::integrate(f, a, b, 1e-12).value + numerics::integrate(f, b, c, 1e-12).value;
    EXPECT_NEAR(whole, split, 1e-11);
  }
}

TEST(Quadrature, OddFunctionVanishes) {
  const auto r = numerics::integrate([](double x) { return x * x * x * std::cos(x); }, -2.0, 2.0, 1e-12);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(Quadrature, RejectsEmptyOrReversedInterval) {
  EXPECT_THROW(numerics::integrate([](double x) { return x; }, 1.0, 0.0, 1e-12), DomainError);
  EXPECT_THROW(numerics::integrate([](double x) { return x; }, 1.0, 1.0, 1e-12), DomainError);
}

TEST(Quadrature, ReportsNonConvergence) {
  const auto r = numerics::integrate([](double x) { return std::sin(1.0 / x); }, 1e-9, 1.0, 1e-15, 4);
  EXPECT_FALSE(r.converged);
}

TEST(SecondDerivative, FourthOrderStencil) {
  EXPECT_NEAR(numerics::second_derivative([](double x) { return std::sin(x); }, 0.7, 1e-3), -std::sin(0.7), 1e-10);
  EXPECT_NEAR(numerics::second_derivative([](double x) { return x * x; }, 3.0, 1e-3), 2.0, 1e-8);
  // error falls by ~16 when h halves
  auto f = [](double x) { return std::exp(2 * x); };
  const double exact = 4 * std::exp(1.0);
  const double e1 = std::abs(numerics::second_derivative(f, 0.5, 0.1) - exact);
  const double e2 = std::abs(numerics::second_derivative(f, 0.5, 0.05) - exact);
  EXPECT_GT(e1 / e2, 14.0);
  EXPECT_LT(e1 / e2, 18.0);
}

TEST(Tolerances, Validation) {
  EXPECT_NO_THROW(Tolerances{}.validate());
  Tolerances t;
  t.match_tol = 0;
  EXPECT_THROW(t.validate(), DomainError);
  t = {};
  t.pole_margin = 2.0;
  EXPECT_THROW(t.validate(), DomainError);
}
