#include "ibs/kernels.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "ibs/error.hpp"

namespace ibs {

namespace {

constexpr double kPi = std::numbers::pi;

struct PairSource {
  const VecField* position;
  const VecField* tangent;
  const VecField* second;
  double scale;  // |z'| reference for the coincidence test
};

PairSource pick(const CurveSamples& c, Coordinate coordinate) {
  if (coordinate == Coordinate::ArcLength) return {&c.z, &c.z_a, &c.z_aa, c.state.perimeter};
  return {&c.X, &c.X_s, &c.X_ss, c.state.perimeter};
}

}  // namespace

StokesletValue fundamental_solution(Vec2 x) {
  const double r2 = norm2(x);
  if (!(r2 > 0.0)) throw Error(ErrorKind::Singularity, "fundamental solution evaluated at the origin");
  const double c = 1.0 / (4.0 * kPi);
  StokesletValue v;
  const double lg = -0.5 * std::log(r2);
  v.G = c * (lg * identity2() + (1.0 / r2) * outer(x, x));
  v.Q = (1.0 / (2.0 * kPi * r2)) * x;
  return v;
}

Mat2 stokeslet_derivative(Vec2 x, Vec2 v) {
  const double r2 = norm2(x);
  if (!(r2 > 0.0)) throw Error(ErrorKind::Singularity, "kernel derivative evaluated at the origin");
  const double xv = dot(x, v);
  const Mat2 m = (-xv / r2) * identity2() + (1.0 / r2) * (outer(v, x) + outer(x, v)) +
                 (-2.0 * xv / (r2 * r2)) * outer(x, x);
  return (1.0 / (4.0 * kPi)) * m;
}

double torus_difference(double alpha, double alpha_prime) {
  const double d = alpha_prime - alpha;
  if (d < -kPi) return d + 2.0 * kPi;
  if (d >= kPi) return d - 2.0 * kPi;
  return d;
}

Mat2 kernel_from_chord(Vec2 L, double tau, Vec2 v) {
  const double l2 = norm2(L);
  const double lv = dot(L, v);
  const Mat2 m = (lv / l2) * identity2() + (2.0 * lv / (l2 * l2)) * outer(L, L) + (-1.0 / l2) * (outer(v, L) + outer(L, v));
  return (1.0 / (4.0 * kPi * tau)) * m;
}

double desingularizer(double d, Coordinate coordinate) {
  const double t = std::tan(0.5 * d);
  if (coordinate == Coordinate::ArcLength) return 1.0 / (8.0 * kPi * t);
  return 0.25 * (1.0 / (2.0 * kPi * t));
}

Mat2 remainder_diagonal(Vec2 a, Vec2 b, KernelKind kind) {
  const double s2 = norm2(a);
  const double ab = dot(a, b);
  const Mat2 m = (-ab / (2.0 * s2)) * identity2() + (1.0 / (2.0 * s2)) * (outer(a, b) + outer(b, a)) +
                 (-ab / (s2 * s2)) * outer(a, a);
  const double sign = kind == KernelKind::TargetDerivative ? 1.0 : -1.0;
  return (sign / (4.0 * kPi)) * m;
}

DividedDifferences divided_differences(const CurveSamples& curve, Coordinate coordinate) {
  const int n = curve.size();
  const PairSource src = pick(curve, coordinate);
  const VecField& z = *src.position;
  const VecField& za = *src.tangent;
  const VecField& zaa = *src.second;
  const PeriodicGrid grid(n, coordinate);
  DividedDifferences dd;
  dd.n = n;
  dd.coordinate = coordinate;
  dd.tau.resize(static_cast<std::size_t>(n) * n);
  dd.L.resize(dd.tau.size());
  dd.M.resize(dd.tau.size());
  dd.N.resize(dd.tau.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = dd.index(i, j);
      if (i == j) {
        dd.tau[k] = 0.0;
        dd.L[k] = za[i];
        dd.M[k] = zaa[i];
        dd.N[k] = 0.5 * zaa[i];
        continue;
      }
      const double tau = torus_difference(grid.point(i), grid.point(j));
      dd.tau[k] = tau;
      dd.L[k] = (z[j] - z[i]) / tau;
      dd.M[k] = (za[j] - za[i]) / tau;
      dd.N[k] = (dd.L[k] - za[i]) / tau;
    }
  }
  return dd;
}

VecField KernelTable::apply(const VecField& density) const {
  const double h = 2.0 * kPi / n;
  VecField out(n);
  for (int i = 0; i < n; ++i) {
    const Mat2* row = &values[static_cast<std::size_t>(i) * n];
    double ax = 0.0;
    double ay = 0.0;
    for (int j = 0; j < n; ++j) {
      const Mat2& m = row[j];
      ax += m.xx * density[j].x + m.xy * density[j].y;
      ay += m.yx * density[j].x + m.yy * density[j].y;
    }
    out[i] = {h * ax, h * ay};
  }
  return out;
}

KernelTable remainder_kernel(const CurveSamples& curve, Coordinate coordinate, KernelKind kind) {
  const int n = curve.size();
  const PairSource src = pick(curve, coordinate);
  const VecField& z = *src.position;
  const VecField& za = *src.tangent;
  const VecField& zaa = *src.second;
  const PeriodicGrid grid(n, coordinate);
  const double h = grid.spacing();

  // Desingularizer depends only on the index offset.
  std::vector<double> desing(n, 0.0);
  for (int m = 1; m < n; ++m) {
    desing[m] = desingularizer(m * h, coordinate);
    assert(std::abs(desing[m] - desingularizer(m * h, Coordinate::ArcLength)) <= 1e-14 * std::abs(desing[m]) + 1e-300);
  }

  // tau also depends only on the offset j - i.
  std::vector<double> inv_tau(n, 0.0);
  for (int m = 1; m < n; ++m) inv_tau[m] = 1.0 / torus_difference(0.0, grid.point(m) - grid.point(0));

  KernelTable table;
  table.n = n;
  table.coordinate = coordinate;
  table.kind = kind;
  table.values.resize(static_cast<std::size_t>(n) * n);
  const double tiny2 = 1e-28 * src.scale * src.scale;
  const double c = 1.0 / (4.0 * kPi);
  const bool target = kind == KernelKind::TargetDerivative;
  for (int i = 0; i < n; ++i) {
    Mat2* row = &table.values[static_cast<std::size_t>(i) * n];
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        row[j] = remainder_diagonal(za[i], zaa[i], kind);
        continue;
      }
      const int fwd = j > i ? j - i : j - i + n;
      const double it = inv_tau[fwd];
      const double lx = (z[j].x - z[i].x) * it;
      const double ly = (z[j].y - z[i].y) * it;
      const double l2 = lx * lx + ly * ly;
      if (!(l2 > tiny2))
        throw MarginError(ErrorKind::SelfIntersection, "curve points coincide: non-self-intersecting margin lost", 0.0);
      const Vec2 v = target ? za[i] : za[j];
      const double il2 = 1.0 / l2;
      const double lv = lx * v.x + ly * v.y;
      const double a = c * it * il2;
      const double q = 2.0 * lv * il2;
      const double diag = a * lv + desing[n - fwd];
      row[j] = {diag + a * (q * lx * lx - 2.0 * v.x * lx), a * (q * lx * ly - v.x * ly - lx * v.y),
                a * (q * lx * ly - v.y * lx - ly * v.x), diag + a * (q * ly * ly - 2.0 * v.y * ly)};
    }
  }
  return table;
}

}  // namespace ibs
