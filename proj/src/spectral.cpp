#include "ibs/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "ibs/error.hpp"

namespace ibs {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  explicit FftPlan(int n) : n_(n) {
    real_ = fftw_alloc_real(n);
    spec_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    r2c_ = fftw_plan_dft_r2c_1d(n, real_, spec_, FFTW_ESTIMATE);
    c2r_ = fftw_plan_dft_c2r_1d(n, spec_, real_, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  Modes forward(const Field& f) {
    for (int j = 0; j < n_; ++j) real_[j] = f[j];
    fftw_execute(r2c_);
    const int half = n_ / 2;
    Modes c(half + 1);
    const double inv_n = 1.0 / n_;
    for (int k = 0; k <= half; ++k) {
      const double sign = (k % 2 == 0) ? inv_n : -inv_n;
      c[k] = Complex(spec_[k][0] * sign, spec_[k][1] * sign);
    }
    c[half] = Complex(c[half].real(), 0.0);
    return c;
  }

  Field inverse(const Modes& c) {
    const int half = n_ / 2;
    for (int k = 0; k <= half; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      spec_[k][0] = sign * c[k].real();
      spec_[k][1] = sign * c[k].imag();
    }
    spec_[0][1] = 0.0;
    spec_[half][1] = 0.0;
    fftw_execute(c2r_);
    return Field(real_, real_ + n_);
  }

 private:
  int n_;
  double* real_;
  fftw_complex* spec_;
  fftw_plan r2c_;
  fftw_plan c2r_;
};

FftPlan& plan_for(int n) {
  thread_local std::map<int, std::unique_ptr<FftPlan>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
  return *it->second;
}

void require_even(int n) {
  if (n <= 0 || n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "grid size must be even and positive");
}

int half_of(const Modes& c) { return static_cast<int>(c.size()) - 1; }

// Resamples a spectrum onto a grid of size m. The source Nyquist term is split
// evenly between +-N when padding and discarded when truncating.
Modes resize_modes(const Modes& c, int m) {
  const int half = half_of(c);
  const int mhalf = m / 2;
  Modes out(mhalf + 1, Complex(0.0, 0.0));
  if (mhalf >= half) {
    for (int k = 0; k < half; ++k) out[k] = c[k];
    if (half > 0) out[half] += (mhalf == half) ? c[half] : 0.5 * c[half];
  } else {
    for (int k = 0; k < mhalf; ++k) out[k] = c[k];
  }
  return out;
}

}  // namespace

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::WellStretchedViolation: return "well-stretched-violation";
    case ErrorKind::SelfIntersection: return "self-intersection";
    case ErrorKind::NonClosable: return "non-closable-input";
    case ErrorKind::NumericalBreakdown: return "numerical-breakdown";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    case ErrorKind::Domain: return "domain";
  }
  return "unknown";
}

PeriodicGrid::PeriodicGrid(int n, Coordinate coordinate) : n_(n), coordinate_(coordinate) { require_even(n); }

double PeriodicGrid::spacing() const { return 2.0 * kPi / n_; }

double PeriodicGrid::point(int j) const { return -kPi + j * spacing(); }

Field PeriodicGrid::points() const {
  Field x(n_);
  for (int j = 0; j < n_; ++j) x[j] = point(j);
  return x;
}

SpectralField::SpectralField(PeriodicGrid grid, Field samples) : grid_(grid), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != grid_.size())
    throw Error(ErrorKind::InvalidArgument, "sample count does not match grid");
}

SpectralField SpectralField::from_modes(PeriodicGrid grid, const Modes& modes) {
  return SpectralField(grid, spectral::inverse(modes, grid.size()));
}

Modes SpectralField::modes() const { return spectral::forward(samples_); }

Complex SpectralField::mode(int k) const {
  const Modes c = modes();
  const int half = half_of(c);
  const int a = std::abs(k);
  if (a > half) return {0.0, 0.0};
  if (a == half) return 0.5 * c[half];
  return k >= 0 ? c[a] : std::conj(c[a]);
}

namespace spectral {

Modes forward(const Field& f) {
  require_even(static_cast<int>(f.size()));
  return plan_for(static_cast<int>(f.size())).forward(f);
}

Field inverse(const Modes& c, int n) {
  require_even(n);
  if (half_of(c) != n / 2) return plan_for(n).inverse(resize_modes(c, n));
  return plan_for(n).inverse(c);
}

SpectralField spectral_transform(const SpectralField& field, TransformDirection direction) {
  if (direction == TransformDirection::Forward) return field;
  return SpectralField::from_modes(field.grid(), field.modes());
}

Modes derivative_modes(const Modes& c, int order) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "derivative order must be nonnegative");
  const int half = half_of(c);
  Modes d(c.size());
  for (int k = 0; k < half; ++k) d[k] = c[k] * std::pow(Complex(0.0, k), order);
  if (order == 0) {
    d[half] = c[half];
  } else if (order % 2 == 0) {
    d[half] = c[half] * std::pow(-static_cast<double>(half) * half, order / 2);
  } else {
    d[half] = 0.0;
  }
  if (order >= 1) d[0] = 0.0;
  return d;
}

Field derivative(const Field& f, int order) {
  return inverse(derivative_modes(forward(f), order), static_cast<int>(f.size()));
}

Modes hilbert_modes(const Modes& c) {
  const int half = half_of(c);
  Modes h(c.size(), Complex(0.0, 0.0));
  for (int k = 1; k < half; ++k) h[k] = Complex(0.0, -1.0) * c[k];
  return h;
}

Field hilbert(const Field& f) { return inverse(hilbert_modes(forward(f)), static_cast<int>(f.size())); }

Modes antiderivative_modes(const Modes& c) {
  const int half = half_of(c);
  Modes a(c.size(), Complex(0.0, 0.0));
  for (int k = 1; k < half; ++k) a[k] = c[k] / Complex(0.0, k);
  return a;
}

Field antiderivative(const Field& f) {
  Field a = inverse(antiderivative_modes(forward(f)), static_cast<int>(f.size()));
  const double a0 = a[0];
  for (double& v : a) v -= a0;
  return a;
}

Field product(const Field& a, const Field& b, bool dealias) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) throw Error(ErrorKind::InvalidArgument, "product of fields on different grids");
  if (!dealias) {
    Field p(n);
    for (int j = 0; j < n; ++j) p[j] = a[j] * b[j];
    return p;
  }
  const int m = 2 * ((3 * n + 3) / 4);
  const Field ap = inverse(forward(a), m);
  const Field bp = inverse(forward(b), m);
  Field pp(m);
  for (int j = 0; j < m; ++j) pp[j] = ap[j] * bp[j];
  Modes c = resize_modes(forward(pp), n);
  return inverse(c, n);
}

Field hilbert_commutator(const Field& psi, const Field& f, bool dealias) {
  const Field hpf = hilbert(product(psi, f, dealias));
  const Field pf = product(psi, hilbert(f), dealias);
  Field out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = hpf[j] - pf[j];
  return out;
}

double sobolev_seminorm(const Field& f, double gamma) {
  if (gamma < 0.0) throw Error(ErrorKind::InvalidArgument, "Sobolev index must be nonnegative");
  const Modes c = forward(f);
  const int half = half_of(c);
  double sum = 0.0;
  for (int k = 1; k < half; ++k) sum += 2.0 * std::pow(static_cast<double>(k), 2.0 * gamma) * std::norm(c[k]);
  sum += 2.0 * std::pow(static_cast<double>(half), 2.0 * gamma) * std::norm(0.5 * c[half]);
  return std::sqrt(2.0 * kPi * sum);
}

double mean(const Field& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s / static_cast<double>(f.size());
}

void remove_mean(Field& f) {
  const double m = mean(f);
  for (double& v : f) v -= m;
}

double integrate(const Field& f) { return 2.0 * kPi * mean(f); }

double cosine_coefficient(const Modes& c, int k) {
  const int half = half_of(c);
  if (k < 0 || k > half) return 0.0;
  if (k == 0) return 2.0 * kPi * c[0].real();
  if (k == half) return kPi * c[half].real();
  return 2.0 * kPi * c[k].real();
}

double sine_coefficient(const Modes& c, int k) {
  const int half = half_of(c);
  if (k <= 0 || k >= half) return 0.0;
  return -2.0 * kPi * c[k].imag();
}

double principal_rate(int k, LinearOperator op, double perimeter, double coefficient) {
  const double a = std::abs(static_cast<double>(k));
  if (op == LinearOperator::Bending) return coefficient * a * a * a / (4.0 * perimeter * perimeter * perimeter);
  return coefficient * a / 4.0;
}

double implicit_factor(int k, double dt, LinearOperator op, double perimeter, double coefficient) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "time step must be positive");
  if (op == LinearOperator::Bending && !(perimeter > 0.0))
    throw Error(ErrorKind::InvalidArgument, "perimeter must be positive");
  return 1.0 / (1.0 + dt * principal_rate(k, op, perimeter, coefficient));
}

Modes implicit_linear_step(const Modes& c, double dt, LinearOperator op, double perimeter, double coefficient) {
  Modes out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    out[k] = c[k] * implicit_factor(static_cast<int>(k), dt, op, perimeter, coefficient);
  return out;
}

OffGridBasis::OffGridBasis(int n, const Field& points) : n_(n), half_(n / 2), npoints_(points.size()) {
  require_even(n);
  const std::size_t width = half_ + 1;
  table_.resize(npoints_ * width);
  for (std::size_t p = 0; p < npoints_; ++p) {
    const Complex step = std::polar(1.0, points[p]);
    Complex e(1.0, 0.0);
    for (int k = 0; k <= half_; ++k) {
      if (k % 16 == 0) e = std::polar(1.0, k * points[p]);
      table_[p * width + k] = e;
      e *= step;
    }
  }
}

Field OffGridBasis::evaluate(const Modes& c) const {
  if (half_of(c) != half_) throw Error(ErrorKind::InvalidArgument, "mode count does not match basis");
  const std::size_t width = half_ + 1;
  Field out(npoints_);
  for (std::size_t p = 0; p < npoints_; ++p) {
    const Complex* e = &table_[p * width];
    double acc = 0.0;
    for (int k = 1; k < half_; ++k) acc += c[k].real() * e[k].real() - c[k].imag() * e[k].imag();
    out[p] = c[0].real() + 2.0 * acc + c[half_].real() * e[half_].real();
  }
  return out;
}

void evaluate_point(const Modes& c, double x, double* value, double* slope) {
  const int half = half_of(c);
  const Complex step = std::polar(1.0, x);
  Complex e = step;
  double v = 0.0;
  double d = 0.0;
  for (int k = 1; k < half; ++k) {
    if (k % 16 == 0) e = std::polar(1.0, k * x);
    const Complex ce = c[k] * e;
    v += ce.real();
    d -= k * ce.imag();
    e *= step;
  }
  const double cn = std::cos(half * x);
  const double sn = std::sin(half * x);
  if (value) *value = c[0].real() + 2.0 * v + c[half].real() * cn;
  if (slope) *slope = 2.0 * d - half * c[half].real() * sn;
}

Field components_x(const VecField& v) {
  Field out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j].x;
  return out;
}

Field components_y(const VecField& v) {
  Field out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j].y;
  return out;
}

VecField combine(const Field& x, const Field& y) {
  VecField out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = {x[j], y[j]};
  return out;
}

}  // namespace spectral
}  // namespace ibs
