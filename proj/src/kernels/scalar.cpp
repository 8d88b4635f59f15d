#include <algorithm>
#include <cmath>
#include <numbers>

#include "itm/kernels.hpp"

namespace itm::kernels::scalar {

void trig_sums(std::span<const double> xs, std::span<const double> coefs, std::size_t degree,
               std::span<double> cos_sums, std::span<double> sin_sums) {
  std::fill_n(cos_sums.begin(), degree, 0.0);
  std::fill_n(sin_sums.begin(), degree, 0.0);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 1; k <= degree; ++k) {
    double cs = 0.0, sn = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double angle = two_pi * static_cast<double>(k) * xs[i];
      cs += coefs[i] * std::cos(angle);
      sn += coefs[i] * std::sin(angle);
    }
    cos_sums[k - 1] = cs;
    sin_sums[k - 1] = sn;
  }
}

std::size_t count_near(std::span<const double> xs, std::span<const double> centres, double eps, bool circle) {
  std::size_t count = 0;
  for (double x : xs) {
    bool hit = false;
    for (double h : centres) {
      double d = std::fabs(x - h);
      if (circle) d = std::min(d, 1.0 - d);
      if (d < eps) {
        hit = true;
        break;
      }
    }
    count += hit ? 1 : 0;
  }
  return count;
}

}  // namespace itm::kernels::scalar
