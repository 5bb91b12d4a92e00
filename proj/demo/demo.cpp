// Tour of the library: evaluate a half-degree harmonic, check it, look at
// its symmetry, and replay the spin ladder for 1/2.

#include <cstdio>
#include <fstream>

#include "fracsh/fracsh.hpp"

using namespace fracsh;

int main() {
  const Harmonic y(HarmonicSpec::fractional(Rational(1, 2), Form::complex_plus));
  const auto v = y(std::numbers::pi / 2, 0.3);
  std::printf("%s  N = %.12g  Y(pi/2, 0.3) = %.12g %+.12gi\n", y.spec().label().c_str(), y.normalization(), v.real(),
              v.imag());
  std::printf("eigen residual (100x200 grid): %.3g\n", eigen_residual(y, 100, 200));

  for (std::int64_t n = 2; n <= 5; ++n) {
    const auto rep = classify_symmetry(n);
    std::printf("l = 1/%lld  class %s  sin vs cos: %s\n", static_cast<long long>(n),
                std::string(to_string(particle_class(n).id)).c_str(),
                std::string(to_string(rep.sin_vs_cos_relation)).c_str());
  }

  const auto cont = continuity_report(Rational(3, 4), Form::cos);
  std::printf("l = 3/4 cos: precession %.6g rad, seam gap %.6g\n", cont.precession_angle, cont.seam_chord_gap);

  const auto tree = expand(Rational(1, 2), 3);
  for (int k = 1; k <= tree.depth(); ++k) {
    const Rational m = main_sum(tree, k);
    std::printf("step %d: main sum %s = %s of 1/2\n", k, m.to_string().c_str(),
                format_percent(ratio_to(Rational(1, 2), m)).c_str());
  }

  const Harmonic quarter(HarmonicSpec::fractional(Rational(1, 4), Form::cos));
  std::ofstream obj("demo_quarter.obj");
  export_obj(build_surface(quarter, 48, 192), obj);
  std::printf("wrote demo_quarter.obj\n");
}
