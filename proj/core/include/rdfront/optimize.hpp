#pragma once

#include <functional>

namespace rdfront {

struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
  /// False when the best scan point sits at either end of the interval.
  bool interior = false;
  int evaluations = 0;
};

/// Maximizes `f` on [lo, hi]: a uniform scan of `scan_points` brackets the
/// best point, then golden-section search refines it to `x_tol`. Ties in the
/// scan go to the larger abscissa.
ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              int scan_points = 1024, double x_tol = 1e-10);

}  // namespace rdfront
