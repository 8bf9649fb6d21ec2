#pragma once

#include <cmath>
#include <numbers>

#include "stoqtim/error.hpp"

namespace stoqtim {

template <class F>
double tanh_sinh(F&& f, double a, double b, double rel_tol, int max_level) {
  const double hl = 0.5 * (b - a);
  const double half_pi = 0.5 * std::numbers::pi;
  // Abscissae are generated with their distances to both endpoints so the
  // integrand can avoid cancellation near the singular ends.
  auto node_sum = [&](double t) {
    const double u = half_pi * std::sinh(t);
    const double cu = std::cosh(u);
    const double w = hl * half_pi * std::cosh(t) / (cu * cu);
    if (w == 0.0) return 0.0;
    const double d = hl / (std::exp(u) * cu);  // hl (1 - tanh u)
    if (d <= 0.0) return 0.0;
    double s = w * f(b - d, 2 * hl - d, d);
    if (t != 0.0) s += w * f(a + d, d, 2 * hl - d);
    return s;
  };
  const int n0 = 4;  // t_max = 4 at level 0 (h = 1)
  double h = 1.0;
  double sum = 0.0;
  for (int k = 0; k <= n0; ++k) sum += node_sum(k * h);
  double est = h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    const int kmax = n0 << level;
    for (int k = 1; k <= kmax; k += 2) sum += node_sum(k * h);
    const double next = h * sum;
    if (level >= 3 && std::abs(next - est) <= std::max(rel_tol * std::abs(next), 1e-300)) return next;
    est = next;
  }
  fail(ErrorKind::non_convergence, "tanh-sinh quadrature did not converge");
}

}  // namespace stoqtim
