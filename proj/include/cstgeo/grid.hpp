#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cstgeo {

using cplx = std::complex<double>;

struct Grid1D {
  double y0 = 0.0;
  double step = 1.0;
  std::size_t n = 2;

  double at(std::size_t k) const { return y0 + static_cast<double>(k) * step; }
  double back() const { return at(n - 1); }
  void validate() const;

  // n nodes covering [lo, hi] inclusive.
  static Grid1D span(double lo, double hi, std::size_t n);
};

struct WaveFunction1D {
  Grid1D grid;
  std::vector<cplx> values;

  double norm() const;  // sqrt(step * Σ|v|²)
  void validate() const;
};

struct Axis {
  double origin = 0.0;
  double step = 1.0;
  std::size_t count = 2;

  double at(std::size_t k) const { return origin + static_cast<double>(k) * step; }
  static Axis span(double lo, double hi, std::size_t count);
};

// Axes are (x1, x2, x3). Storage: x3 fastest, then x1, then x2.
struct Grid3D {
  std::array<Axis, 3> axes;

  std::size_t size() const { return axes[0].count * axes[1].count * axes[2].count; }
  std::size_t flat(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return (i2 * axes[0].count + i1) * axes[2].count + i3;
  }
  double cell_volume() const { return axes[0].step * axes[1].step * axes[2].step; }
  void validate() const;
  // Drops `margin` nodes from every face.
  Grid3D shrunk(std::size_t margin) const;
  // Keeps every other node (steps double); counts must be odd.
  Grid3D coarsened() const;
};

struct Field3D {
  Grid3D grid;
  std::vector<cplx> values;

  Field3D() = default;
  explicit Field3D(const Grid3D& g) : grid(g), values(g.size()) {}

  cplx& at(std::size_t i1, std::size_t i2, std::size_t i3) { return values[grid.flat(i1, i2, i3)]; }
  const cplx& at(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return values[grid.flat(i1, i2, i3)];
  }
  double norm() const;  // sqrt(cell volume * Σ|v|²)
  // Restriction to grid.shrunk(margin).
  Field3D interior(std::size_t margin) const;
  Field3D coarsened() const;
};

// Fixed-tree pairwise summation; the result does not depend on threading.
double pairwise_sum(std::span<const double> values);
cplx pairwise_sum(std::span<const cplx> values);

// Composite Simpson weights (n odd) scaled by the step.
std::vector<double> simpson_weights(std::size_t n, double step);

// values(j - shift) for periodic samples. Integer shifts rotate exactly;
// fractional shifts use band-limited trigonometric interpolation.
std::vector<cplx> periodic_shift(std::span<const cplx> values, double shift_in_samples);

}  // namespace cstgeo
