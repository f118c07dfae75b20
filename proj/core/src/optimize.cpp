#include "rdfront/optimize.hpp"

#include <cmath>

#include "rdfront/errors.hpp"

namespace rdfront {

ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              int scan_points, double x_tol) {
  if (!(lo < hi)) throw DomainError("maximize_scalar requires lo < hi");
  if (scan_points < 3) throw DomainError("maximize_scalar needs at least 3 scan points");
  ScalarMaximum out;
  const double h = (hi - lo) / (scan_points - 1);
  int best = 0;
  double best_value = -INFINITY;
  for (int i = 0; i < scan_points; ++i) {
    const double v = f(lo + i * h);
    ++out.evaluations;
    if (!std::isnan(v) && v >= best_value) {
      best_value = v;
      best = i;
    }
  }
  out.interior = best > 0 && best < scan_points - 1;
  out.x = lo + best * h;
  out.value = best_value;
  if (!out.interior) return out;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo + (best - 1) * h;
  double b = lo + (best + 1) * h;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  out.evaluations += 2;
  while (b - a > x_tol) {
    if (fc > fd) {
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
    ++out.evaluations;
  }
  const double x = 0.5 * (a + b);
  const double v = f(x);
  ++out.evaluations;
  if (v >= best_value) {
    out.x = x;
    out.value = v;
  }
  return out;
}

}  // namespace rdfront
