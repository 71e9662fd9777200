#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "ibs/geometry.hpp"
#include "ibs/spectral.hpp"

namespace test {

constexpr double kPi = std::numbers::pi;

inline ibs::Field sample(int n, const std::function<double(double)>& f) {
  const ibs::PeriodicGrid grid(n);
  ibs::Field out(n);
  for (int j = 0; j < n; ++j) out[j] = f(grid.point(j));
  return out;
}

inline double max_abs_diff(const ibs::Field& a, const ibs::Field& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

inline double max_abs_diff(const ibs::VecField& a, const ibs::VecField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, ibs::norm(a[j] - b[j]));
  return m;
}

// Band-limited random field with given number of modes.
inline ibs::Field random_field(int n, unsigned seed, int band, double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(band + 1), b(band + 1);
  for (int k = 1; k <= band; ++k) {
    a[k] = u(rng) / (k * k);
    b[k] = u(rng) / (k * k);
  }
  return sample(n, [&](double x) {
    double s = 0.0;
    for (int k = 1; k <= band; ++k) s += a[k] * std::cos(k * x) + b[k] * std::sin(k * x);
    return amplitude * s;
  });
}

// Adaptive Simpson quadrature used as an independent integration oracle.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 40) {
  const auto step = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole,
                        double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = f(lm), frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return self(self, lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) +
           self(self, mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return step(step, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

}  // namespace test
