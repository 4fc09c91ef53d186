#include "cstgeo/cst_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cstgeo/error.hpp"
#include "cstgeo/parallel.hpp"
#include "cstgeo/symalg/compiled.hpp"

namespace cstgeo {

using symalg::DiffOp;

namespace {

constexpr double kPi = std::numbers::pi;

// Plain complex product without the Annex G inf/nan recovery.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

template <class Phi>
Field3D icst_impl(const WaveFunction1D& f, const Grid3D& out, const ModelParams& p,
                  IcstReport* report, Phi&& phi_shifted) {
  f.validate();
  out.validate();
  p.validate();
  const std::size_t ny = f.grid.n;
  if (ny % 2 == 0) throw GridTooSmallError("Simpson quadrature needs an odd number of y nodes");
  const auto w = simpson_weights(ny, f.grid.step);
  const auto& ax = out.axes;
  const std::size_t n1 = ax[0].count, n2 = ax[1].count, n3 = ax[2].count;

  // e^{2πi h4 x3 y}, one row per x3 node
  std::vector<cplx> kernel(n3 * ny);
  for (std::size_t i3 = 0; i3 < n3; ++i3) {
    const double x3 = ax[2].at(i3);
    for (std::size_t k = 0; k < ny; ++k)
      kernel[i3 * ny + k] = std::polar(1.0, 2.0 * kPi * p.h4 * x3 * f.grid.at(k));
  }

  Field3D result(out);
  std::vector<double> edge(n1 * n2, 0.0), peak(n1 * n2, 0.0);
  parallel_for(n1 * n2, [&](std::size_t line) {
    const std::size_t i2 = line / n1, i1 = line % n1;
    const double x1 = ax[0].at(i1), x2 = ax[1].at(i2);
    std::vector<cplx> g(ny), prod(ny);
    for (std::size_t k = 0; k < ny; ++k) {
      const double y = f.grid.at(k);
      const cplx integrand = f.values[k] * std::conj(phi_shifted(k, i1, x1));
      peak[line] = std::max(peak[line], std::abs(integrand));
      if (k == 0 || k + 1 == ny) edge[line] = std::max(edge[line], std::abs(integrand));
      g[k] = w[k] * integrand * std::polar(1.0, -kPi * p.h4 * x2 * y * y);
    }
    const cplx pre = std::polar(1.0, -2.0 * kPi * p.h2 * x2);
    for (std::size_t i3 = 0; i3 < n3; ++i3) {
      const cplx* row = &kernel[i3 * ny];
      for (std::size_t k = 0; k < ny; ++k) prod[k] = mul(g[k], row[k]);
      result.at(i1, i2, i3) = pre * pairwise_sum(prod);
    }
  });

  if (report) {
    const double top = *std::max_element(peak.begin(), peak.end());
    const double bottom = *std::max_element(edge.begin(), edge.end());
    report->boundary_ratio = top > 0.0 ? bottom / top : 0.0;
    report->domain_too_small = report->boundary_ratio > 1e-12;
    // local frequency of the integrand phase: h4 (x2 y − x3)
    const double ymax = std::max(std::abs(f.grid.y0), std::abs(f.grid.back()));
    const double x2max = std::max(std::abs(ax[1].at(0)), std::abs(ax[1].at(n2 - 1)));
    const double x3max = std::max(std::abs(ax[2].at(0)), std::abs(ax[2].at(n3 - 1)));
    const double freq = std::abs(p.h4) * (x2max * ymax + x3max);
    report->samples_per_period = freq > 0.0 ? 1.0 / (freq * f.grid.step) : INFINITY;
    report->undersampled = report->samples_per_period < 8.0;
  }
  return result;
}

}  // namespace

Fiducial::Fiducial(const ModelParams& p)
    : cubic_(kPi * p.D * p.h4 / 3.0), quad_(-kPi * p.E * p.h4), lin_(2.0 * kPi * p.D * p.h2) {
  p.validate_fiducial();
}

cplx Fiducial::operator()(double y) const {
  return std::exp(cplx(quad_ * y * y, (cubic_ * y * y + lin_) * y));
}

WaveFunction1D fiducial(const ModelParams& p, const Grid1D& grid) {
  grid.validate();
  const Fiducial phi(p);
  WaveFunction1D out{grid, std::vector<cplx>(grid.n)};
  for (std::size_t k = 0; k < grid.n; ++k) out.values[k] = phi(grid.at(k));
  return out;
}

std::string IcstReport::warning() const {
  std::ostringstream out;
  if (domain_too_small) out << "y-domain too small: boundary/peak ratio " << boundary_ratio << " > 1e-12. ";
  if (undersampled) out << "y-grid undersampled: " << samples_per_period << " samples per period < 8.";
  return out.str();
}

Field3D icst(const WaveFunction1D& f, const Grid3D& out, const ModelParams& p, IcstReport* report) {
  const Fiducial phi(p);
  return icst_impl(f, out, p, report,
                   [&](std::size_t k, std::size_t, double x1) { return phi(f.grid.at(k) - x1); });
}

Field3D icst(const WaveFunction1D& f, const WaveFunction1D& phi, const Grid3D& out,
             const ModelParams& p, IcstReport* report) {
  phi.validate();
  if (phi.grid.n != f.grid.n || phi.grid.step != f.grid.step || phi.grid.y0 != f.grid.y0) {
    throw ValidationError("f and phi must share a grid");
  }
  const auto& ax = out.axes[0];
  std::vector<long> shift(ax.count);
  for (std::size_t i1 = 0; i1 < ax.count; ++i1) {
    const double s = ax.at(i1) / f.grid.step;
    shift[i1] = std::lround(s);
    if (std::abs(s - static_cast<double>(shift[i1])) > 1e-9) {
      throw ValidationError("sampled fiducial needs x1 nodes on multiples of the y-step");
    }
  }
  const long n = static_cast<long>(f.grid.n);
  return icst_impl(f, out, p, report, [&](std::size_t k, std::size_t i1, double) {
    const long j = static_cast<long>(k) - shift[i1];
    return (j >= 0 && j < n) ? phi.values[static_cast<std::size_t>(j)] : cplx(0.0, 0.0);
  });
}

Field3D apply_diffop_fd(const DiffOp& op, const Field3D& field, const symalg::Bindings& bindings) {
  if (op.order() > 2) throw ValidationError("finite differences support order <= 2");
  for (const auto& [idx, c] : op.terms()) {
    (void)c;
    if (idx[3] || idx[4] || idx[5]) throw ValidationError("operator must act on x1, x2, x3");
  }
  field.grid.validate();
  for (const auto& ax : field.grid.axes)
    if (ax.count < 3) throw GridTooSmallError("finite differences need 3 nodes per axis");

  const auto terms = symalg::compile(op, bindings);
  Field3D out(field.grid.shrunk(1));
  const auto& ax = field.grid.axes;
  const std::size_t n1 = out.grid.axes[0].count, n2 = out.grid.axes[1].count,
                    n3 = out.grid.axes[2].count;
  const std::array<double, 3> h = {ax[0].step, ax[1].step, ax[2].step};
  const std::array<long, 3> stride = {static_cast<long>(ax[2].count),
                                      static_cast<long>(ax[0].count * ax[2].count), 1};

  struct Stencil {
    std::vector<std::pair<long, double>> taps;
  };
  std::vector<Stencil> stencils;
  for (const auto& t : terms) {
    std::vector<int> dirs;
    for (int a = 0; a < 3; ++a)
      for (int r = 0; r < t.derivative[a]; ++r) dirs.push_back(a);
    Stencil s;
    if (dirs.empty()) {
      s.taps = {{0, 1.0}};
    } else if (dirs.size() == 1) {
      const long o = stride[dirs[0]];
      const double w = 1.0 / (2.0 * h[dirs[0]]);
      s.taps = {{o, w}, {-o, -w}};
    } else if (dirs[0] == dirs[1]) {
      const long o = stride[dirs[0]];
      const double w = 1.0 / (h[dirs[0]] * h[dirs[0]]);
      s.taps = {{o, w}, {0, -2.0 * w}, {-o, w}};
    } else {
      const long a = stride[dirs[0]], b = stride[dirs[1]];
      const double w = 1.0 / (4.0 * h[dirs[0]] * h[dirs[1]]);
      s.taps = {{a + b, w}, {a - b, -w}, {-a + b, -w}, {-a - b, w}};
    }
    stencils.push_back(std::move(s));
  }

  parallel_for(n2, [&](std::size_t j2) {
    const std::size_t i2 = j2 + 1;
    for (std::size_t i1 = 1; i1 <= n1; ++i1) {
      for (std::size_t i3 = 1; i3 <= n3; ++i3) {
        const long centre = static_cast<long>(field.grid.flat(i1, i2, i3));
        cplx acc(0.0, 0.0);
        for (std::size_t t = 0; t < terms.size(); ++t) {
          cplx d(0.0, 0.0);
          for (const auto& [o, w] : stencils[t].taps) d += w * field.values[static_cast<std::size_t>(centre + o)];
          acc += mul(terms[t].coefficient(ax[0].at(i1), ax[1].at(i2), ax[2].at(i3)), d);
        }
        out.at(i1 - 1, j2, i3 - 1) = acc;
      }
    }
  });
  return out;
}

double annihilation_residual(const Field3D& field, const DiffOp& op, const symalg::Bindings& bindings) {
  const Field3D lf = apply_diffop_fd(op, field, bindings);
  const double base = field.interior(1).norm();
  if (base == 0.0) throw NumericalContractError("residual of a zero field is undefined");
  return lf.norm() / base;
}

double slice_norm(const Field3D& field, std::size_t i2) {
  const auto& ax = field.grid.axes;
  if (i2 >= ax[1].count) throw ValidationError("x2 slice index out of range");
  std::vector<double> sq;
  sq.reserve(ax[0].count * ax[2].count);
  for (std::size_t i1 = 0; i1 < ax[0].count; ++i1)
    for (std::size_t i3 = 0; i3 < ax[2].count; ++i3) sq.push_back(std::norm(field.at(i1, i2, i3)));
  return std::sqrt(ax[0].step * ax[2].step * pairwise_sum(sq));
}

WaveFunction1D apply_diffop_fd_1d(const DiffOp& op, const WaveFunction1D& f,
                                  const symalg::Bindings& bindings) {
  f.validate();
  if (op.order() > 2) throw ValidationError("finite differences support order <= 2");
  for (const auto& [idx, c] : op.terms()) {
    (void)c;
    for (std::size_t s = 0; s < idx.size(); ++s)
      if (s != 3 && idx[s]) throw ValidationError("1-D operator must act on y only");
  }
  if (f.grid.n < 3) throw GridTooSmallError("finite differences need 3 nodes");
  const auto terms = symalg::compile(op, bindings);
  const double h = f.grid.step;
  WaveFunction1D out{Grid1D{f.grid.at(1), h, f.grid.n - 2}, std::vector<cplx>(f.grid.n - 2)};
  for (std::size_t k = 1; k + 1 < f.grid.n; ++k) {
    const double y = f.grid.at(k);
    cplx acc(0.0, 0.0);
    for (const auto& t : terms) {
      cplx d;
      switch (t.derivative[3]) {
        case 0: d = f.values[k]; break;
        case 1: d = (f.values[k + 1] - f.values[k - 1]) / (2.0 * h); break;
        default: d = (f.values[k + 1] - 2.0 * f.values[k] + f.values[k - 1]) / (h * h); break;
      }
      acc += t.coefficient(0.0, 0.0, 0.0, y) * d;
    }
    out.values[k - 1] = acc;
  }
  return out;
}

}  // namespace cstgeo
