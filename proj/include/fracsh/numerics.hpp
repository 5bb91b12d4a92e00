#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "fracsh/error.hpp"

namespace fracsh {

struct Tolerances {
  double quad_abs_tol = 1e-10;
  double residual_tol = 1e-9;
  double pole_margin = 1e-2;  // radians
  double match_tol = 1e-6;    // relative to the largest radius of a cloud

  void validate() const {
    if (!(quad_abs_tol > 0) || !(residual_tol > 0) || !(pole_margin > 0) || !(match_tol > 0))
      throw DomainError("tolerances must be strictly positive");
    if (pole_margin >= std::numbers::pi / 2) throw DomainError("pole margin must be below pi/2");
  }
};

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;  // absolute
  int evaluations = 0;
  bool converged = true;
};

namespace numerics {

// Lanczos approximation (g = 7, 9 terms). Arguments below 1/2 are lifted
// with the recurrence instead of the reflection formula, so only x > 0 is
// accepted.
inline double gamma(double x) {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("gamma: argument must be positive and finite");
  if (x < 0.5) return gamma(x + 1) / x;

  static constexpr double g = 7;
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

  const double z = x - 1;
  double sum = c[0];
  for (int i = 1; i < 9; ++i) sum += c[i] / (z + i);
  const double t = z + g + 0.5;
  return std::sqrt(2 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  friend bool operator<(const Segment& x, const Segment& y) { return x.error < y.error; }
};

template <class F>
Segment gauss_kronrod(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kronrod_nodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[i] * pair;
    if (i % 2 == 1) gauss += gauss_weights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod quadrature: the segment with the largest
// error estimate is bisected until the summed estimate drops below `tol`.
// Integrable endpoint singularities in the derivative, e.g. (sin x)^a near
// 0, are resolved by repeated bisection. When `max_subdivisions` is
// exhausted the best estimate is returned with converged = false.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double tol, int max_subdivisions = 2000) {
  if (!(a < b)) throw DomainError("integrate: require a < b");
  if (!(tol > 0)) throw DomainError("integrate: tolerance must be positive");

  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gauss_kronrod(f, a, b));
  double total = heap.top().value;
  double error = heap.top().error;
  int evaluations = 15;
  int splits = 0;

  while (error > tol && splits < max_subdivisions) {
    const detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) break;  // segment no longer divisible
    heap.pop();
    const detail::Segment left = detail::gauss_kronrod(f, worst.a, mid);
    const detail::Segment right = detail::gauss_kronrod(f, mid, worst.b);
    evaluations += 30;
    ++splits;
    heap.push(left);
    heap.push(right);

    // Resum from scratch every so often to stop cancellation drift.
    if (splits % 64 == 0) {
      auto copy = heap;
      total = 0;
      error = 0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    } else {
      total += left.value + right.value - worst.value;
      error += left.error + right.error - worst.error;
    }
  }

  // Final exact resum.
  total = 0;
  error = 0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {total, std::max(error, 0.0), evaluations, error <= tol};
}

// Five-point central stencil, O(h^4). Works for any value type with
// + and scalar *, including std::complex<double>.
template <class F>
auto second_derivative(F&& f, double x, double h) {
  // Differences against the center first; this loses fewer digits than
  // summing the raw weights when h is small.
  const auto f0 = f(x);
  const auto d1 = (f(x + h) - f0) + (f(x - h) - f0);
  const auto d2 = (f(x + 2 * h) - f0) + (f(x - 2 * h) - f0);
  return (16.0 * d1 - d2) / (12.0 * h * h);
}

}  // namespace numerics
}  // namespace fracsh
