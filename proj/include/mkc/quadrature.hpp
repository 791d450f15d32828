#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "mkc/errors.hpp"

namespace mkc {

// Adaptive Gauss-Kronrod (G7, K15) quadrature. Panels whose K15-G7
// discrepancy exceeds the width-proportional share of abs_tol are bisected,
// up to max_panels panels in total.
template <typename F>
double integrate(F&& f, double lo, double hi, double abs_tol = 1e-10,
                 int max_panels = 1 << 15) {
  // Kronrod-15 abscissae (absolute values) and weights; the even-indexed
  // nodes form the embedded Gauss-7 rule.
  static constexpr double nodes[8] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769,
      0.741531185599394, 0.586087235467691, 0.405845151377397,
      0.207784955007898, 0.000000000000000};
  static constexpr double kronrod_w[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250,
      0.140653259715525, 0.169004726639267, 0.190350578064785,
      0.204432940075298, 0.209482141084728};
  static constexpr double gauss_w[4] = {
      0.129484966168870, 0.279705391489277, 0.381830050505119,
      0.417959183673469};

  if (!(lo < hi)) {
    throw InputError("integrate: empty or inverted interval");
  }

  const double total_width = hi - lo;
  auto panel = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = kronrod_w[7] * f(mid);
    double gauss = gauss_w[3] * f(mid);
    for (int j = 0; j < 7; ++j) {
      const double offset = half * nodes[j];
      const double sum = f(mid - offset) + f(mid + offset);
      kron += kronrod_w[j] * sum;
      if (j % 2 == 1) {
        gauss += gauss_w[j / 2] * sum;
      }
    }
    kron *= half;
    gauss *= half;
    if (!std::isfinite(kron)) {
      throw NumericError("integrate: integrand produced a non-finite value");
    }
    return std::pair<double, double>(kron, std::fabs(kron - gauss));
  };

  std::vector<std::pair<double, double>> stack{{lo, hi}};
  double sum = 0.0;
  int panels = 1;
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    const auto [value, err] = panel(a, b);
    const double share = abs_tol * (b - a) / total_width;
    if (err <= share || panels >= max_panels) {
      sum += value;
      continue;
    }
    const double mid = 0.5 * (a + b);
    stack.push_back({a, mid});
    stack.push_back({mid, b});
    ++panels;
  }
  return sum;
}

}  // namespace mkc
