#include <cmath>
#include <random>

#include "doctest.h"
#include "ibs/error.hpp"
#include "ibs/spectral.hpp"
#include "support.hpp"

using namespace ibs;
using test::kPi;

TEST_SUITE("spectral") {
  TEST_CASE("grid points start at -pi") {
    const PeriodicGrid g(8);
    CHECK(g.point(0) == doctest::Approx(-kPi));
    CHECK(g.spacing() == doctest::Approx(kPi / 4));
    CHECK_THROWS_AS(PeriodicGrid(7), Error);
  }

  TEST_CASE("forward of constant and sin 2a") {
    const Modes c1 = spectral::forward(Field(16, 1.0));
    CHECK(std::abs(c1[0] - Complex(1.0, 0.0)) < 1e-15);
    for (std::size_t k = 1; k < c1.size(); ++k) CHECK(std::abs(c1[k]) < 1e-15);

    const SpectralField f(PeriodicGrid(16), test::sample(16, [](double x) { return std::sin(2 * x); }));
    CHECK(std::abs(f.mode(2) - Complex(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(f.mode(-2) - Complex(0.0, 0.5)) < 1e-15);
    for (int k = -8; k <= 8; ++k)
      if (std::abs(k) != 2) CHECK(std::abs(f.mode(k)) < 1e-15);
  }

  TEST_CASE("round trip of a random field") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    Field f(128);
    for (double& x : f) x = u(rng);
    const SpectralField sf(PeriodicGrid(128), f);
    const SpectralField back = spectral::spectral_transform(spectral::spectral_transform(sf, TransformDirection::Forward),
                                                  TransformDirection::Inverse);
    CHECK(test::max_abs_diff(back.samples(), f) < 1e-13);
  }

  TEST_CASE("derivatives") {
    const int n = 32;
    const Field s2 = test::sample(n, [](double x) { return std::sin(2 * x); });
    const Field c2 = test::sample(n, [](double x) { return 2 * std::cos(2 * x); });
    CHECK(test::max_abs_diff(spectral::derivative(s2, 1), c2) < 1e-13);
    const Field s1 = test::sample(n, [](double x) { return std::sin(x); });
    const Field mc1 = test::sample(n, [](double x) { return -std::cos(x); });
    CHECK(test::max_abs_diff(spectral::derivative(s1, 3), mc1) < 1e-12);
  }

  TEST_CASE("derivative agrees with centered differences at second order") {
    double err[2];
    for (int i = 0; i < 2; ++i) {
      const int n = i == 0 ? 128 : 256;
      const Field f = test::random_field(n, 11, 6, 1.0);
      const Field d = spectral::derivative(f, 1);
      const double h = 2 * kPi / n;
      err[i] = 0.0;
      for (int j = 0; j < n; ++j) {
        const double fd = (f[(j + 1) % n] - f[(j + n - 1) % n]) / (2 * h);
        err[i] = std::max(err[i], std::abs(fd - d[j]));
      }
    }
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.05));
  }

  TEST_CASE("hilbert transform against principal-value quadrature") {
    const int n = 64;
    const int m = 1024;
    const double h = 2 * kPi / m;
    for (int k : {1, 3, 7, 31}) {
      const Field hs = spectral::hilbert(test::sample(n, [k](double x) { return std::sin(k * x); }));
      const Field hc = spectral::hilbert(test::sample(n, [k](double x) { return std::cos(k * x); }));
      const PeriodicGrid g(n);
      for (int j = 0; j < n; j += 5) {
        const double a = g.point(j);
        double qs = 0.0, qc = 0.0;
        for (int q = 1; q < m; q += 2) {
          const double w = 2 * h / (2 * kPi) / std::tan(-0.5 * q * h);
          qs += w * std::sin(k * (a + q * h));
          qc += w * std::cos(k * (a + q * h));
        }
        CHECK(std::abs(hs[j] - qs) < 1e-12);
        CHECK(std::abs(hc[j] - qc) < 1e-12);
        CHECK(std::abs(hs[j] + std::cos(k * a)) < 1e-12);
      }
    }
    CHECK(test::max_abs_diff(spectral::hilbert(Field(16, 2.5)), Field(16, 0.0)) < 1e-15);
    const Field c3 = test::sample(32, [](double x) { return std::cos(3 * x); });
    const Field s3 = test::sample(32, [](double x) { return std::sin(3 * x); });
    CHECK(test::max_abs_diff(spectral::hilbert(c3), s3) < 1e-14);
  }

  TEST_CASE("hilbert commutator examples") {
    const int n = 32;
    const Field c = test::sample(n, [](double x) { return std::cos(x); });
    const Field s = test::sample(n, [](double x) { return std::sin(x); });
    const Field f = test::random_field(n, 5, 5, 1.0);
    CHECK(test::max_abs_diff(spectral::hilbert_commutator(Field(n, 3.0), f, true), Field(n, 0.0)) < 1e-14);

    // psi = e^{ia}, f = e^{ia}: real and imaginary parts of [H, psi] f vanish.
    auto comm = [&](const Field& p, const Field& q) { return spectral::hilbert_commutator(p, q, true); };
    const Field cc = comm(c, c), ss = comm(s, s), cs = comm(c, s), sc = comm(s, c);
    Field re(n), im(n), re2(n), im2(n);
    for (int j = 0; j < n; ++j) {
      re[j] = cc[j] - ss[j];
      im[j] = cs[j] + sc[j];
      // psi = e^{ia}, f = e^{-ia}: expected constant -i.
      re2[j] = cc[j] + ss[j];
      im2[j] = sc[j] - cs[j];
    }
    CHECK(test::max_abs_diff(re, Field(n, 0.0)) < 1e-14);
    CHECK(test::max_abs_diff(im, Field(n, 0.0)) < 1e-14);
    CHECK(test::max_abs_diff(re2, Field(n, 0.0)) < 1e-14);
    CHECK(test::max_abs_diff(im2, Field(n, -1.0)) < 1e-14);
  }

  TEST_CASE("dealiased product is exact for resolved products") {
    const int n = 32;
    const Field a = test::sample(n, [](double x) { return std::cos(10 * x); });
    const Field b = test::sample(n, [](double x) { return std::sin(9 * x); });
    const Field exact = test::sample(n, [](double x) { return 0.5 * (std::sin(19 * x) - std::sin(x)); });
    // 19 aliases to -13 on 32 points; the padded product drops it instead.
    const Field p = spectral::product(a, b, true);
    const Field low = test::sample(n, [](double x) { return -0.5 * std::sin(x); });
    CHECK(test::max_abs_diff(p, low) < 1e-14);
    const Field q = spectral::product(a, b, false);
    CHECK(test::max_abs_diff(q, exact) < 1e-13);
  }

  TEST_CASE("sobolev seminorms") {
    CHECK(spectral::sobolev_seminorm(Field(16, 0.0), 1.0) == 0.0);
    CHECK(spectral::sobolev_seminorm(test::sample(32, [](double x) { return std::sin(x); }), 0.0) ==
          doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    const double h = spectral::sobolev_seminorm(test::sample(32, [](double x) { return std::sin(3 * x); }), 2.5);
    CHECK(h * h == doctest::Approx(243 * kPi).epsilon(1e-13));
    // L2 norm against a direct trapezoid sum.
    const Field f = test::random_field(64, 2, 8, 0.7);
    double direct = 0.0;
    for (double v : f) direct += v * v;
    direct = std::sqrt(direct * 2 * kPi / 64);
    CHECK(spectral::sobolev_seminorm(f, 0.0) == doctest::Approx(direct).epsilon(1e-13));
  }

  TEST_CASE("fourier coefficients") {
    const Field f = test::sample(32, [](double x) { return 0.3 * std::cos(2 * x) - 0.7 * std::sin(5 * x); });
    const Modes m = spectral::forward(f);
    CHECK(spectral::cosine_coefficient(m, 2) == doctest::Approx(0.3 * kPi));
    CHECK(spectral::sine_coefficient(m, 5) == doctest::Approx(-0.7 * kPi));
    CHECK(std::abs(spectral::sine_coefficient(m, 2)) < 1e-14);
  }

  TEST_CASE("antiderivative is anchored at -pi") {
    const Field f = test::sample(32, [](double x) { return std::cos(x); });
    const Field F = spectral::antiderivative(f);
    CHECK(test::max_abs_diff(F, test::sample(32, [](double x) { return std::sin(x); })) < 1e-14);
    CHECK(test::max_abs_diff(spectral::derivative(spectral::antiderivative(test::random_field(64, 4, 6, 1.0)), 1),
                             test::random_field(64, 4, 6, 1.0)) < 1e-13);
  }

  TEST_CASE("implicit factors") {
    CHECK(spectral::implicit_factor(0, 0.1, spectral::LinearOperator::Bending, 1.0) == 1.0);
    CHECK(spectral::implicit_factor(2, 0.1, spectral::LinearOperator::Bending, 1.0) ==
          doctest::Approx(1.0 / 1.2).epsilon(1e-15));
    CHECK(spectral::implicit_factor(4, 0.1, spectral::LinearOperator::Stretching, 1.0) ==
          doctest::Approx(1.0 / 1.1).epsilon(1e-15));
    CHECK_THROWS_AS(spectral::implicit_factor(1, 0.0, spectral::LinearOperator::Bending, 1.0), Error);
  }

  TEST_CASE("repeated implicit steps follow the exact semigroup at first order") {
    const double sp = 1.3;
    for (int k : {1, 2, 3}) {
      double err[2];
      for (int i = 0; i < 2; ++i) {
        const double dt = i == 0 ? 1e-2 : 5e-3;
        Modes c(9, Complex(0, 0));
        c[k] = Complex(0.5, 0.0);
        for (int st = 0; st < std::lround(1.0 / dt); ++st)
          c = spectral::implicit_linear_step(c, dt, spectral::LinearOperator::Bending, sp);
        err[i] = std::abs(c[k].real() - 0.5 * std::exp(-std::pow(k, 3) / (4 * sp * sp * sp)));
      }
      CHECK(err[0] / err[1] == doctest::Approx(2.0).epsilon(0.1));
    }
  }

  TEST_CASE("off-grid interpolation reproduces trigonometric polynomials") {
    const int n = 32;
    const Field pts = {-3.0, -1.234, 0.0, 0.5, 2.9, 3.14};
    const spectral::OffGridBasis basis(n, pts);
    const Field smooth = test::sample(n, [](double x) { return std::cos(3 * x) - 0.2 * std::sin(7 * x); });
    const Field g2 = basis.evaluate_samples(smooth);
    for (std::size_t i = 0; i < pts.size(); ++i)
      CHECK(std::abs(g2[i] - (std::cos(3 * pts[i]) - 0.2 * std::sin(7 * pts[i]))) < 1e-13);
    double v = 0, d = 0;
    spectral::evaluate_point(spectral::forward(smooth), 0.77, &v, &d);
    CHECK(v == doctest::Approx(std::cos(3 * 0.77) - 0.2 * std::sin(7 * 0.77)).epsilon(1e-13));
    CHECK(d == doctest::Approx(-3 * std::sin(3 * 0.77) - 1.4 * std::cos(7 * 0.77)).epsilon(1e-13));
  }
}
