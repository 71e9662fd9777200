#include <cmath>

#include "doctest.h"
#include "ibs/error.hpp"
#include "ibs/kernels.hpp"
#include "support.hpp"

using namespace ibs;
using test::kPi;

namespace {

CurveState perturbed(int n, double eps) {
  const Field d = test::sample(n, [eps](double a) { return eps * (std::sin(2 * a) + 0.5 * std::cos(3 * a)); });
  const Field ys = test::sample(n, [eps](double s) { return eps * std::cos(2 * s + 0.4); });
  return normalize_initial_data(d, ys, kPi);
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("fundamental solution values") {
    const StokesletValue a = fundamental_solution({1, 0});
    CHECK(a.G.xx == doctest::Approx(1 / (4 * kPi)));
    CHECK(std::abs(a.G.xy) < 1e-16);
    CHECK(std::abs(a.G.yy) < 1e-16);
    CHECK(a.Q.x == doctest::Approx(1 / (2 * kPi)));
    const StokesletValue b = fundamental_solution({0, 2});
    CHECK(b.G.xx == doctest::Approx(-std::log(2.0) / (4 * kPi)));
    CHECK(b.G.yy == doctest::Approx((1 - std::log(2.0)) / (4 * kPi)));
    CHECK(std::abs(b.G.xy) < 1e-16);
    CHECK_THROWS_AS(fundamental_solution({0, 0}), Error);
  }

  TEST_CASE("kernel derivative matches centered differences") {
    const Vec2 x{0.6, -0.4}, v{0.3, 0.8};
    const double h = 1e-5;
    const Mat2 fd = (1.0 / (2 * h)) * (fundamental_solution(x + h * v).G - fundamental_solution(x - h * v).G);
    CHECK(max_abs(fd - stokeslet_derivative(x, v)) < 1e-9);
  }

  TEST_CASE("torus difference") {
    CHECK(torus_difference(0.0, 1.5 * kPi) == doctest::Approx(-0.5 * kPi));
    CHECK(torus_difference(0.0, kPi) == doctest::Approx(-kPi));
    CHECK(torus_difference(1.0, 0.5) == doctest::Approx(-0.5));
  }

  TEST_CASE("divided differences on the unit circle") {
    const int n = 64;
    const CurveSamples c = reconstruct_curve(CurveState::equilibrium(n));
    const DividedDifferences dd = divided_differences(c, Coordinate::ArcLength);
    const int i0 = n / 2;  // alpha = 0
    for (int j = 0; j < n; ++j) {
      if (j == i0) continue;
      const double d = dd.tau[dd.index(i0, j)];
      const Vec2 expect{std::sin(d) / d, (1 - std::cos(d)) / d};
      CHECK(norm(dd.L[dd.index(i0, j)] - expect) < 1e-14);
    }
    for (int i = 0; i < n; ++i) {
      const Vec2 N = dd.N[dd.index(i, i)];
      CHECK(norm(N - 0.5 * c.z_aa[i]) < 1e-15);
      CHECK(norm(c.z_aa[i]) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }

  TEST_CASE("divided difference identity on a perturbed curve") {
    const int n = 64;
    const CurveSamples c = reconstruct_curve(perturbed(n, 0.05));
    for (Coordinate coord : {Coordinate::ArcLength, Coordinate::Material}) {
      const DividedDifferences dd = divided_differences(c, coord);
      const VecField& za = coord == Coordinate::ArcLength ? c.z_a : c.X_s;
      double worst = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const std::size_t k = dd.index(i, j);
          worst = std::max(worst, norm(dd.L[k] + dd.tau[k] * (dd.M[k] - dd.N[k]) - za[j]));
        }
      CHECK(worst < 1e-12);
    }
  }

  TEST_CASE("remainder off the diagonal is the two-term sum") {
    const int n = 64;
    const CurveSamples c = reconstruct_curve(CurveState::equilibrium(n));
    const int i = n / 2;       // alpha = 0
    const int j = 3 * n / 4;   // alpha = pi/2
    for (KernelKind kind : {KernelKind::TargetDerivative, KernelKind::SourceDerivative}) {
      const KernelTable t = remainder_kernel(c, Coordinate::ArcLength, kind);
      // Direct: derivative of G at z(a) - z(a') along the differentiated point, plus the desingularizer.
      const Vec2 x = c.z[i] - c.z[j];
      const Mat2 direct = kind == KernelKind::TargetDerivative ? stokeslet_derivative(x, c.z_a[i])
                                                               : stokeslet_derivative(x, c.z_a[j]);
      const Mat2 expect = direct + (1.0 / (8 * kPi * std::tan(0.5 * (-kPi / 2)))) * identity2();
      CHECK(max_abs(t.at(i, j) - expect) < 1e-12);
      const KernelTable tm = remainder_kernel(c, Coordinate::Material, kind);
      CHECK(max_abs(tm.at(i, j) - t.at(i, j)) < 1e-13);
    }
  }

  TEST_CASE("remainder diagonal agrees with extrapolation") {
    const int n = 256;
    const CurveSamples c = reconstruct_curve(perturbed(n, 0.05));
    for (Coordinate coord : {Coordinate::ArcLength, Coordinate::Material})
      for (KernelKind kind : {KernelKind::TargetDerivative, KernelKind::SourceDerivative}) {
        const KernelTable t = remainder_kernel(c, coord, kind);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
          auto at = [&](int off) { return t.at(i, ((i + off) % n + n) % n); };
          const Mat2 ex = (1.0 / 6.0) * (4.0 * (at(1) + at(-1)) - (at(2) + at(-2)));
          worst = std::max(worst, max_abs(ex - t.at(i, i)));
        }
        CHECK(worst < 1e-6);
      }
  }

  TEST_CASE("stokes equations hold away from the origin") {
    auto residual = [](Vec2 x, double h) {
      auto G = [](Vec2 p) { return fundamental_solution(p).G; };
      const Vec2 ex{h, 0}, ey{0, h};
      const Mat2 lap = (1 / (h * h)) * (G(x + ex) + G(x - ex) + G(x + ey) + G(x - ey) - 4.0 * G(x));
      const Vec2 qx = (1 / (2 * h)) * (fundamental_solution(x + ex).Q - fundamental_solution(x - ex).Q);
      const Vec2 qy = (1 / (2 * h)) * (fundamental_solution(x + ey).Q - fundamental_solution(x - ey).Q);
      return std::max({std::abs(-lap.xx + qx.x), std::abs(-lap.xy + qx.y), std::abs(-lap.yx + qy.x),
                       std::abs(-lap.yy + qy.y)});
    };
    const Vec2 x{0.9, -0.35};
    const double r1 = residual(x, 1e-2);
    const double r2 = residual(x, 5e-3);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
  }

  TEST_CASE("coincident points are rejected") {
    const int n = 32;
    CurveState s = CurveState::equilibrium(n);
    CurveSamples c = reconstruct_curve(s);
    c.z[5] = c.z[9];
    CHECK_THROWS_AS(remainder_kernel(c, Coordinate::ArcLength, KernelKind::TargetDerivative), MarginError);
  }
}
