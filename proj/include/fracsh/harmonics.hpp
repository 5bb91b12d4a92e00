#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracsh/error.hpp"
#include "fracsh/numerics.hpp"
#include "fracsh/rational.hpp"

namespace fracsh {

enum class Form { complex_plus, complex_minus, cos, sin };

inline std::string_view to_string(Form form) {
  switch (form) {
    case Form::complex_plus: return "complex_plus";
    case Form::complex_minus: return "complex_minus";
    case Form::cos: return "cos";
    case Form::sin: return "sin";
  }
  return "?";
}

inline Form parse_form(std::string_view text) {
  if (text == "complex_plus") return Form::complex_plus;
  if (text == "complex_minus") return Form::complex_minus;
  if (text == "cos") return Form::cos;
  if (text == "sin") return Form::sin;
  throw ParseError("unknown form '" + std::string(text) + "' (expected complex_plus, complex_minus, cos or sin)");
}

inline bool is_real_form(Form form) { return form == Form::cos || form == Form::sin; }

// Largest integer degree handled by the Rodrigues polynomial route.
inline constexpr int max_integer_degree = 30;

// Degree l, order m and form of one harmonic. Integer degrees take any
// integer order |m| <= l; fractional degrees only the orders m = +-l.
// Real forms store m >= 0, complex forms carry the sign of m in the form.
class HarmonicSpec {
 public:
  HarmonicSpec(Rational degree, Rational order, Form form) : degree_(degree), order_(order), form_(form) {
    if (degree < 0) throw DomainError("degree must be non-negative, got " + degree.to_string());
    if (degree.is_integer()) {
      if (!order.is_integer()) throw DomainError("integer degree needs an integer order");
      if (order.abs() > degree) throw DomainError("|m| must not exceed l for integer degree");
      if (degree > max_integer_degree) throw DomainError("integer degree above " + std::to_string(max_integer_degree));
    } else if (order.abs() != degree) {
      throw DomainError("fractional degree " + degree.to_string() + " only admits m = +-l, got m = " +
                        order.to_string());
    }
    if (form == Form::complex_plus && order < 0) throw DomainError("complex_plus needs m >= 0");
    if (form == Form::complex_minus && order > 0) throw DomainError("complex_minus needs m <= 0");
    if (is_real_form(form) && order < 0) throw DomainError("real forms take m >= 0");
    if (form == Form::sin && order.is_zero()) throw DomainError("sin form with m = 0 vanishes identically");
  }

  // m = +l for complex_plus and the real forms, m = -l for complex_minus.
  static HarmonicSpec fractional(Rational degree, Form form) {
    return HarmonicSpec(degree, form == Form::complex_minus ? -degree : degree, form);
  }

  const Rational& degree() const { return degree_; }
  const Rational& order() const { return order_; }
  Form form() const { return form_; }
  bool integer_degree() const { return degree_.is_integer(); }

  // Number of 2*pi sheets in one azimuthal period (q for l = p/q).
  std::int64_t turns() const { return degree_.den(); }
  double period() const { return 2 * std::numbers::pi * static_cast<double>(turns()); }
  Rational eigenvalue() const { return degree_ * (degree_ + 1); }

  std::string label() const {
    return "l=" + degree_.to_string() + " m=" + order_.to_string() + " " + std::string(to_string(form_));
  }

 private:
  Rational degree_;
  Rational order_;
  Form form_;
};

struct EvalPoint {
  double theta;
  double phi;
};

namespace detail {

// sin(theta) computed so that theta and pi - theta give bit-identical results.
inline double sin_polar(double theta) {
  return std::sin(theta <= std::numbers::pi / 2 ? theta : std::numbers::pi - theta);
}

inline void check_theta(double theta) {
  if (!(theta >= 0 && theta <= std::numbers::pi)) throw DomainError("theta must lie in [0, pi]");
}

inline double reduce_angle(double phi, double period) {
  if (!std::isfinite(phi)) throw DomainError("phi must be finite");
  double r = std::fmod(phi, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

// Q(x) = d^{l+m}/dx^{l+m} (x^2-1)^l / (2^l l!), so P_l^m(x) = (1-x^2)^{m/2} Q(x).
class RodriguesPolynomial {
 public:
  RodriguesPolynomial() = default;
  RodriguesPolynomial(int l, int m) : m_(m) {
    if (m < 0 || m > l) throw DomainError("associated Legendre: need 0 <= m <= l");
    std::vector<double> c(2 * l + 1, 0.0);
    double binom = 1;
    for (int j = 0; j <= l; ++j) {
      c[2 * j] = ((l - j) % 2 ? -binom : binom);
      binom = binom * (l - j) / (j + 1);
    }
    for (int d = 0; d < l + m; ++d) c = derivative(c);
    double scale = 1;
    for (int i = 1; i <= l; ++i) scale *= 2.0 * i;
    for (double& v : c) v /= scale;
    q_ = c;
    dq_ = derivative(q_);
    d2q_ = derivative(dq_);
  }

  int order() const { return m_; }
  double q(double x) const { return horner(q_, x); }
  double dq(double x) const { return horner(dq_, x); }
  double d2q(double x) const { return horner(d2q_, x); }

 private:
  static std::vector<double> derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
  }
  static double horner(const std::vector<double>& c, double x) {
    double acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  int m_ = 0;
  std::vector<double> q_{1.0}, dq_{0.0}, d2q_{0.0};
};

}  // namespace detail

// Closed-form fractional Legendre function (sin theta)^l / (2^l Gamma(l+1)).
inline double theta_fractional(const Rational& degree, double theta) {
  if (!(degree > 0)) throw DomainError("theta_fractional: degree must be positive");
  detail::check_theta(theta);
  if (theta == 0 || theta == std::numbers::pi) return 0.0;
  const double l = degree.to_double();
  return std::pow(detail::sin_polar(theta), l) / (std::pow(2.0, l) * numerics::gamma(l + 1));
}

// Associated Legendre polynomial P_l^{|m|}(cos theta) from the Rodrigues
// definitions, without the Condon-Shortley phase.
inline double theta_integer(int l, int m, double theta) {
  if (l < 0 || l > max_integer_degree) throw DomainError("theta_integer: degree out of range");
  if (std::abs(m) > l) throw DomainError("theta_integer: |m| > l");
  detail::check_theta(theta);
  const int mu = std::abs(m);
  const detail::RodriguesPolynomial poly(l, mu);
  return std::pow(detail::sin_polar(theta), mu) * poly.q(std::cos(theta));
}

// Azimuthal factor. Complex forms are normalized over the extended period
// 2*pi*q (q = denominator of m); real forms return the bare cos/sin.
inline std::complex<double> phi_eval(const Rational& order, Form form, double phi) {
  const double period = 2 * std::numbers::pi * static_cast<double>(order.den());
  const double p = detail::reduce_angle(phi, period);
  const double m = order.abs().to_double();
  switch (form) {
    case Form::complex_plus: return std::polar(1.0 / std::sqrt(period), m * p);
    case Form::complex_minus: return std::polar(1.0 / std::sqrt(period), -m * p);
    case Form::cos: return {std::cos(m * p), 0.0};
    case Form::sin: return {std::sin(m * p), 0.0};
  }
  return {};
}

// Constant N in Y = N * shape(theta) * angular(phi), where shape is
// (sin theta)^l or P_l^m(cos theta) and angular is exp(+-i|m|phi), cos(|m|phi)
// or sin(|m|phi), chosen so that the integral of |Y|^2 sin(theta) over
// [0, pi] x [0, period) is one. The polar integral is computed by adaptive
// quadrature; the azimuthal one is exact because period * m is a multiple
// of 2*pi.
inline double normalization_constant(const HarmonicSpec& spec, double tol = Tolerances{}.quad_abs_tol) {
  QuadratureResult polar;
  if (spec.integer_degree()) {
    const detail::RodriguesPolynomial poly(static_cast<int>(spec.degree().num()),
                                           static_cast<int>(spec.order().abs().num()));
    const int mu = poly.order();
    polar = numerics::integrate(
        [&](double t) {
          const double s = detail::sin_polar(t);
          const double v = std::pow(s, mu) * poly.q(std::cos(t));
          return v * v * s;
        },
        0.0, std::numbers::pi, tol);
  } else {
    const double exponent = 2 * spec.degree().to_double() + 1;
    polar = numerics::integrate([&](double t) { return std::pow(detail::sin_polar(t), exponent); }, 0.0,
                                std::numbers::pi, tol);
  }
  if (!polar.converged)
    throw ConvergenceError("normalization quadrature did not converge for " + spec.label());

  double azimuthal = spec.period();
  if (is_real_form(spec.form()) && !spec.order().is_zero()) azimuthal /= 2;
  return 1.0 / std::sqrt(polar.value * azimuthal);
}

// A harmonic with its normalization resolved once. Immutable; evaluation is
// a pure function of (theta, phi).
class Harmonic {
 public:
  explicit Harmonic(HarmonicSpec spec, double tol = Tolerances{}.quad_abs_tol)
      : spec_(std::move(spec)), norm_(normalization_constant(spec_, tol)) {
    mu_ = spec_.order().abs().to_double();
    period_ = spec_.period();
    if (spec_.integer_degree()) {
      poly_ = detail::RodriguesPolynomial(static_cast<int>(spec_.degree().num()),
                                          static_cast<int>(spec_.order().abs().num()));
    } else {
      exponent_ = spec_.degree().to_double();
    }
  }

  const HarmonicSpec& spec() const { return spec_; }
  double normalization() const { return norm_; }
  double period() const { return period_; }

  // Unnormalized polar factor: (sin theta)^l, or P_l^m(cos theta).
  double shape(double theta) const {
    if (theta == 0 || theta == std::numbers::pi) {
      if (!spec_.integer_degree()) return 0.0;
    }
    const double s = detail::sin_polar(theta);
    if (spec_.integer_degree()) return std::pow(s, poly_.order()) * poly_.q(std::cos(theta));
    return std::pow(s, exponent_);
  }

  std::complex<double> angular(double phi) const {
    const double p = detail::reduce_angle(phi, period_);
    switch (spec_.form()) {
      case Form::complex_plus: return std::polar(1.0, mu_ * p);
      case Form::complex_minus: return std::polar(1.0, -mu_ * p);
      case Form::cos: return {std::cos(mu_ * p), 0.0};
      case Form::sin: return {std::sin(mu_ * p), 0.0};
    }
    return {};
  }

  std::complex<double> operator()(double theta, double phi) const {
    detail::check_theta(theta);
    return norm_ * shape(theta) * angular(phi);
  }

  // The real value for cos/sin forms, the real part for complex forms.
  double real_value(double theta, double phi) const { return (*this)(theta, phi).real(); }

 private:
  HarmonicSpec spec_;
  double norm_;
  double mu_ = 0;
  double period_ = 0;
  double exponent_ = 0;
  detail::RodriguesPolynomial poly_;
};

inline std::complex<double> eval(const Harmonic& harmonic, EvalPoint point) {
  return harmonic(point.theta, point.phi);
}

inline std::complex<double> eval(const HarmonicSpec& spec, EvalPoint point) { return eval(Harmonic(spec), point); }

// Residual of the polar equation
//   (1/sin) d/dtheta(sin dTheta/dtheta) - m^2/sin^2 Theta + k Theta
// for the exact solution Theta, using analytic derivatives. Fractional
// degrees use Theta = (sin theta)^l / (2^l Gamma(l+1)) with |m| = l; integer
// degrees use P_l^m in the cos(theta) variable. k defaults to l(l+1).
inline double legendre_ode_residual(const Rational& degree, const Rational& order, double theta,
                                    std::optional<double> k = std::nullopt,
                                    double pole_margin = Tolerances{}.pole_margin) {
  constexpr double slack = 1e-12;
  if (!(theta >= pole_margin - slack && theta <= std::numbers::pi - pole_margin + slack))
    throw DomainError("legendre_ode_residual: theta within pole margin");
  const double eig = k.value_or((degree * (degree + 1)).to_double());

  if (degree.is_integer()) {
    if (!order.is_integer() || order.abs() > degree) throw DomainError("integer degree needs integer |m| <= l");
    const int l = static_cast<int>(degree.num());
    if (l > max_integer_degree) throw DomainError("integer degree out of range");
    const detail::RodriguesPolynomial poly(l, static_cast<int>(order.abs().num()));
    const double mu = poly.order();
    const double x = std::cos(theta);
    const double w = 1 - x * x;
    // With y = w^{mu/2} Q the Legendre operator reduces to
    // w^{mu/2} [w Q'' - 2(mu+1) x Q' + (k - mu - mu^2) Q].
    const double bracket = w * poly.d2q(x) - 2 * (mu + 1) * x * poly.dq(x) + (eig - mu - mu * mu) * poly.q(x);
    return std::pow(detail::sin_polar(theta), mu) * bracket;
  }

  if (order.abs() != degree) throw DomainError("fractional degree requires |m| = l");
  const double nu = degree.to_double();
  const double m2 = nu * nu;
  const double s = detail::sin_polar(theta);
  const double c = std::cos(theta);
  const double scale = 1.0 / (std::pow(2.0, nu) * numerics::gamma(nu + 1));
  const double s_nu = std::pow(s, nu);
  const double s_nu2 = s_nu / (s * s);
  // (1/s) d/dtheta (s * nu s^{nu-1} c) = nu^2 s^{nu-2} c^2 - nu s^nu
  const double laplace = nu * nu * s_nu2 * c * c - nu * s_nu;
  return scale * (laplace - m2 * s_nu2 + eig * s_nu);
}

// Applies the full angular operator by finite differences to the values of
// `harmonic` and returns max |L^2 Y - k Y| / max |Y| over the grid.
//
// The polar direction is discretized in the Mercator variable
// t = ln tan(theta/2), in which the operator becomes
// -(Y_tt + Y_phiphi) / sin^2(theta). (sin theta)^l is analytic in t, so the
// stencil stays accurate right up to the pole margin, where a uniform theta
// stencil would step across the pole. Both directions use the O(h^4)
// five-point stencil with the grid spacing as step.
//
// The grid has n_theta points uniform in t over [margin, pi - margin] and
// n_phi_per_2pi points per 2*pi sheet over the whole period.
inline double eigen_residual(const Harmonic& harmonic, int n_theta, int n_phi_per_2pi, const Tolerances& tol = {},
                             std::optional<double> k = std::nullopt) {
  tol.validate();
  if (n_theta < 8 || n_phi_per_2pi < 8) throw DomainError("eigen_residual: need at least 8 points per axis");
  const double eig = k.value_or(harmonic.spec().eigenvalue().to_double());

  auto to_t = [](double theta) { return std::log(std::tan(theta / 2)); };
  auto to_theta = [](double t) { return 2 * std::atan(std::exp(t)); };
  const double t_lo = to_t(tol.pole_margin);
  const double t_hi = -t_lo;
  const double ht = (t_hi - t_lo) / (n_theta - 1);
  const double hphi = 2 * std::numbers::pi / n_phi_per_2pi;
  const std::int64_t n_phi = n_phi_per_2pi * harmonic.spec().turns();

  double max_residual = 0;
  double max_value = 0;
  for (int i = 0; i < n_theta; ++i) {
    const double t = t_lo + ht * i;
    const double theta = to_theta(t);
    const double s = detail::sin_polar(theta);
    for (std::int64_t j = 0; j < n_phi; ++j) {
      const double phi = hphi * static_cast<double>(j);
      const auto y = harmonic(theta, phi);
      const auto ytt = numerics::second_derivative([&](double tt) { return harmonic(to_theta(tt), phi); }, t, ht);
      const auto ypp = numerics::second_derivative([&](double pp) { return harmonic(theta, pp); }, phi, hphi);
      const auto l2y = -(ytt + ypp) / (s * s);
      max_residual = std::max(max_residual, std::abs(l2y - eig * y));
      max_value = std::max(max_value, std::abs(y));
    }
  }
  if (max_value == 0) throw DomainError("eigen_residual: harmonic vanishes on the grid");
  return max_residual / max_value;
}

}  // namespace fracsh
