#ifndef FDREP_GOLDEN_HPP
#define FDREP_GOLDEN_HPP

#include <cmath>
#include <functional>

namespace fdrep {

struct LineMaximum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of f on [a, b], stopping when the
/// bracket is shorter than tol. Exact for unimodal f; otherwise a local
/// maximum inside the bracket.
inline LineMaximum golden_section_maximize(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
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
  LineMaximum best{c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

}  // namespace fdrep

#endif
