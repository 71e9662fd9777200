#pragma once

#include <vector>

#include "ibs/geometry.hpp"
#include "ibs/vec2.hpp"

namespace ibs {

struct StokesletValue {
  Mat2 G;
  Vec2 Q;
};

// G(x) = (1/4pi)(-ln|x| Id + x(x)x/|x|^2), Q(x) = x/(2pi|x|^2).
StokesletValue fundamental_solution(Vec2 x);

// d/de G(x + e v) at e = 0.
Mat2 stokeslet_derivative(Vec2 x, Vec2 v);

// Signed torus difference alpha' - alpha mapped into [-pi, pi).
double torus_difference(double alpha, double alpha_prime);

// Pair tables are row-major over (target i, source j).
struct DividedDifferences {
  int n = 0;
  Coordinate coordinate = Coordinate::ArcLength;
  Field tau;
  VecField L, M, N;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }
};

DividedDifferences divided_differences(const CurveSamples& curve, Coordinate coordinate);

enum class KernelKind {
  TargetDerivative,  // d/d(alpha) G(z(alpha) - z(alpha'))
  SourceDerivative,  // -d/d(alpha') G(z(alpha) - z(alpha'))
};

struct KernelTable {
  int n = 0;
  Coordinate coordinate = Coordinate::ArcLength;
  KernelKind kind = KernelKind::TargetDerivative;
  std::vector<Mat2> values;

  const Mat2& at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
  // Trapezoid rule: out_i = h sum_j R(i, j) density_j.
  VecField apply(const VecField& density) const;
};

// Smooth remainder: kernel + (1/(8 pi tan((alpha - alpha')/2))) Id, with the analytic diagonal.
KernelTable remainder_kernel(const CurveSamples& curve, Coordinate coordinate, KernelKind kind);

// Diagonal limit from the first two derivatives a = z', b = z'' at the point.
Mat2 remainder_diagonal(Vec2 a, Vec2 b, KernelKind kind);

// Divided-difference form of d_v G(z(alpha) - z(alpha')) with L = (z(alpha') - z(alpha))/tau.
Mat2 kernel_from_chord(Vec2 L, double tau, Vec2 v);

// 1/(8 pi tan(d/2)) in the arc-length form and (1/4)/(2 pi tan(d/2)) in the material form.
double desingularizer(double d, Coordinate coordinate);

}  // namespace ibs
