#pragma once

#include <cmath>

namespace gaussq {

struct GoldenSectionResult {
  double argmin;
  double min_value;
  int iterations;
};

/// Golden-section search for the minimum of a unimodal `f` on [lo, hi],
/// stopping once the bracket is narrower than `tolerance`.
template <class F>
GoldenSectionResult golden_section_minimize(F&& f, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int iterations = 0;
  while (b - a > tolerance && iterations < 500) {
    ++iterations;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), iterations};
}

}  // namespace gaussq
