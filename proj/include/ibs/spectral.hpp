#pragma once

#include <complex>
#include <vector>

#include "ibs/vec2.hpp"

namespace ibs {

using Field = std::vector<double>;
using Complex = std::complex<double>;
// Coefficients c_k for k = 0..n/2 of f(x) = sum_k c_k e^{ikx}; negative k follow by
// conjugate symmetry. The last entry multiplies cos(n x / 2).
using Modes = std::vector<Complex>;

enum class Coordinate { ArcLength, Material };

class PeriodicGrid {
 public:
  explicit PeriodicGrid(int n, Coordinate coordinate = Coordinate::ArcLength);

  int size() const { return n_; }
  Coordinate coordinate() const { return coordinate_; }
  double spacing() const;
  double point(int j) const;
  Field points() const;

 private:
  int n_;
  Coordinate coordinate_;
};

class SpectralField {
 public:
  SpectralField(PeriodicGrid grid, Field samples);
  static SpectralField from_modes(PeriodicGrid grid, const Modes& modes);

  const PeriodicGrid& grid() const { return grid_; }
  const Field& samples() const { return samples_; }
  Modes modes() const;
  // c_k for any |k| <= n/2.
  Complex mode(int k) const;

 private:
  PeriodicGrid grid_;
  Field samples_;
};

enum class TransformDirection { Forward, Inverse };

namespace spectral {

Modes forward(const Field& f);
Field inverse(const Modes& c, int n);
SpectralField spectral_transform(const SpectralField& field, TransformDirection direction);

Field derivative(const Field& f, int order);
Modes derivative_modes(const Modes& c, int order);
Field hilbert(const Field& f);
Modes hilbert_modes(const Modes& c);
// Zero-anchored antiderivative of the mean-free part: F(-pi) = 0.
Field antiderivative(const Field& f);
Modes antiderivative_modes(const Modes& c);
// Multiplies mode k by symbol(k) for k = 0..n/2.
template <class Symbol>
Field apply_symbol(const Field& f, Symbol symbol) {
  Modes c = forward(f);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= symbol(static_cast<int>(k));
  return inverse(c, static_cast<int>(f.size()));
}

Field product(const Field& a, const Field& b, bool dealias);
// [H, psi] f = H(psi f) - psi H(f)
Field hilbert_commutator(const Field& psi, const Field& f, bool dealias);

double sobolev_seminorm(const Field& f, double gamma);
double mean(const Field& f);
void remove_mean(Field& f);
// Trapezoid rule on the full period.
double integrate(const Field& f);

// Fourier cosine/sine coefficients a_k = int cos(kx) f, b_k = int sin(kx) f.
double cosine_coefficient(const Modes& c, int k);
double sine_coefficient(const Modes& c, int k);

enum class LinearOperator { Bending, Stretching };

// Symbol magnitude of the principal operator: |k|^3 c/(4 s^3) or |k| c/4.
double principal_rate(int k, LinearOperator op, double perimeter, double coefficient = 1.0);
double implicit_factor(int k, double dt, LinearOperator op, double perimeter, double coefficient = 1.0);
Modes implicit_linear_step(const Modes& c, double dt, LinearOperator op, double perimeter,
                           double coefficient = 1.0);

// Trigonometric interpolation at arbitrary points with precomputed exponentials.
class OffGridBasis {
 public:
  OffGridBasis(int n, const Field& points);
  Field evaluate(const Modes& c) const;
  Field evaluate_samples(const Field& f) const { return evaluate(forward(f)); }
  int size() const { return n_; }

 private:
  int n_;
  int half_;
  std::size_t npoints_;
  std::vector<Complex> table_;
};

// Value and first derivative of the interpolant at a single point.
void evaluate_point(const Modes& c, double x, double* value, double* slope);

Field components_x(const VecField& v);
Field components_y(const VecField& v);
VecField combine(const Field& x, const Field& y);

}  // namespace spectral
}  // namespace ibs
