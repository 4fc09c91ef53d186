#include "cstgeo/grid.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cstgeo/error.hpp"
#include "cstgeo/parallel.hpp"
#include "cstgeo/params.hpp"

namespace cstgeo {

namespace {

std::atomic<unsigned> g_threads{std::max(1u, std::thread::hardware_concurrency())};

template <class T>
T pairwise_impl(const T* data, std::size_t n) {
  constexpr std::size_t kBlock = 32;
  if (n <= kBlock) {
    T sum{};
    for (std::size_t k = 0; k < n; ++k) sum += data[k];
    return sum;
  }
  std::size_t half = n / 2;
  return pairwise_impl(data, half) + pairwise_impl(data + half, n - half);
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidParamsError(std::string(what) + " must be finite");
}

}  // namespace

void set_thread_count(unsigned n) { g_threads = std::max(1u, n); }
unsigned thread_count() { return g_threads; }

void ModelParams::validate() const {
  check_finite(D, "D");
  check_finite(E, "E");
  check_finite(h2, "h2");
  check_finite(h4, "h4");
  check_finite(m, "m");
  check_finite(a, "a");
  if (h4 == 0.0) throw InvalidParamsError("h4 must be non-zero");
  if (!(m > 0.0)) throw InvalidParamsError("m must be positive");
  if (a < 0.0) throw InvalidParamsError("a must be non-negative");
}

void ModelParams::validate_fiducial() const {
  validate();
  if (!(E * h4 > 0.0)) throw InvalidParamsError("fiducial vector needs E*h4 > 0");
}

symalg::Bindings ModelParams::bindings() const {
  using symalg::Var;
  return {{Var::D, D}, {Var::E, E}, {Var::h2, h2}, {Var::h4, h4}, {Var::m, m}, {Var::a, a}};
}

std::string ModelParams::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "D=" << D << ",E=" << E << ",h2=" << h2 << ",h4=" << h4 << ",m=" << m << ",a=" << a;
  return out.str();
}

void Grid1D::validate() const {
  if (n < 2) throw GridTooSmallError("1-D grid needs at least 2 nodes");
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(y0)) {
    throw ValidationError("1-D grid needs a positive finite step");
  }
}

Grid1D Grid1D::span(double lo, double hi, std::size_t n) {
  if (n < 2) throw GridTooSmallError("1-D grid needs at least 2 nodes");
  return {lo, (hi - lo) / static_cast<double>(n - 1), n};
}

double WaveFunction1D::norm() const {
  std::vector<double> sq(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) sq[k] = std::norm(values[k]);
  return std::sqrt(grid.step * pairwise_sum(sq));
}

void WaveFunction1D::validate() const {
  grid.validate();
  if (values.size() != grid.n) throw ValidationError("wave function length does not match grid");
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError("wave function has non-finite samples");
    }
  }
}

Axis Axis::span(double lo, double hi, std::size_t count) {
  if (count < 2) throw GridTooSmallError("axis needs at least 2 nodes");
  return {lo, (hi - lo) / static_cast<double>(count - 1), count};
}

void Grid3D::validate() const {
  for (const auto& ax : axes) {
    if (ax.count < 2) throw GridTooSmallError("3-D grid needs at least 2 nodes per axis");
    if (!(ax.step > 0.0) || !std::isfinite(ax.step) || !std::isfinite(ax.origin)) {
      throw ValidationError("3-D grid needs positive finite steps");
    }
  }
}

Grid3D Grid3D::shrunk(std::size_t margin) const {
  Grid3D out = *this;
  for (auto& ax : out.axes) {
    if (ax.count <= 2 * margin) throw GridTooSmallError("grid too small for the requested margin");
    ax.origin += static_cast<double>(margin) * ax.step;
    ax.count -= 2 * margin;
  }
  return out;
}

Grid3D Grid3D::coarsened() const {
  Grid3D out = *this;
  for (auto& ax : out.axes) {
    if (ax.count % 2 == 0 || ax.count < 3) {
      throw GridTooSmallError("coarsening needs an odd node count >= 3 on every axis");
    }
    ax.count = (ax.count + 1) / 2;
    ax.step *= 2.0;
  }
  return out;
}

double Field3D::norm() const {
  std::vector<double> sq(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) sq[k] = std::norm(values[k]);
  return std::sqrt(grid.cell_volume() * pairwise_sum(sq));
}

Field3D Field3D::interior(std::size_t margin) const {
  Field3D out(grid.shrunk(margin));
  const auto& ax = out.grid.axes;
  for (std::size_t i2 = 0; i2 < ax[1].count; ++i2)
    for (std::size_t i1 = 0; i1 < ax[0].count; ++i1)
      for (std::size_t i3 = 0; i3 < ax[2].count; ++i3)
        out.at(i1, i2, i3) = at(i1 + margin, i2 + margin, i3 + margin);
  return out;
}

Field3D Field3D::coarsened() const {
  Field3D out(grid.coarsened());
  const auto& ax = out.grid.axes;
  for (std::size_t i2 = 0; i2 < ax[1].count; ++i2)
    for (std::size_t i1 = 0; i1 < ax[0].count; ++i1)
      for (std::size_t i3 = 0; i3 < ax[2].count; ++i3)
        out.at(i1, i2, i3) = at(2 * i1, 2 * i2, 2 * i3);
  return out;
}

double pairwise_sum(std::span<const double> values) {
  return pairwise_impl(values.data(), values.size());
}

cplx pairwise_sum(std::span<const cplx> values) {
  return pairwise_impl(values.data(), values.size());
}

std::vector<double> simpson_weights(std::size_t n, double step) {
  if (n < 3 || n % 2 == 0) throw GridTooSmallError("Simpson quadrature needs an odd node count >= 3");
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    double c = (k == 0 || k == n - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    w[k] = c * step / 3.0;
  }
  return w;
}

std::vector<cplx> periodic_shift(std::span<const cplx> values, double shift) {
  const std::size_t n = values.size();
  std::vector<cplx> out(n);
  if (n == 0) return out;
  const double rounded = std::round(shift);
  if (std::abs(shift - rounded) < 1e-9) {
    const long s = static_cast<long>(rounded);
    const long nn = static_cast<long>(n);
    for (long j = 0; j < nn; ++j) {
      long src = ((j - s) % nn + nn) % nn;
      out[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(src)];
    }
    return out;
  }
  // Direct DFT; grids in this project are small enough for O(n²).
  const double two_pi = 2.0 * std::numbers::pi;
  const long nn = static_cast<long>(n);
  std::vector<cplx> spectrum(n);
  for (long k = 0; k < nn; ++k) {
    std::vector<cplx> terms(n);
    for (long j = 0; j < nn; ++j) terms[j] = values[j] * std::polar(1.0, -two_pi * double(j * k % nn) / double(nn));
    spectrum[k] = pairwise_sum(terms);
  }
  for (long j = 0; j < nn; ++j) {
    std::vector<cplx> terms(n);
    for (long k = 0; k < nn; ++k) {
      long freq = k <= nn / 2 ? k : k - nn;
      double arg = two_pi * double(freq) * (double(j) - shift) / double(nn);
      if (nn % 2 == 0 && k == nn / 2) {
        terms[k] = spectrum[k] * std::cos(arg);  // split Nyquist term
      } else {
        terms[k] = spectrum[k] * std::polar(1.0, arg);
      }
    }
    out[j] = pairwise_sum(terms) / double(nn);
  }
  return out;
}

}  // namespace cstgeo
