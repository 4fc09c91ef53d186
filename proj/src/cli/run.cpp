#include <gmp.h>
#include <openssl/opensslv.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include "cstgeo/cli.hpp"
#include "cstgeo/cst_numeric.hpp"
#include "cstgeo/dynamics.hpp"
#include "cstgeo/error.hpp"
#include "cstgeo/oracle.hpp"
#include "cstgeo/parallel.hpp"
#include "cstgeo/reduction.hpp"
#include "cstgeo/svg.hpp"
#include "cstgeo/symalg/parse.hpp"

#ifndef CSTGEO_VERSION
#define CSTGEO_VERSION "unknown"
#endif

namespace cstgeo::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using symalg::Polynomial;

namespace {

constexpr double kDefaultVerifyTolerance = 1e-2;
constexpr double kDefaultCompareTolerance = 5e-2;

// Collected per run; echoed into the manifest.
struct Context {
  const RunConfig& rc;
  std::ostream& out;
  std::ostream& err;
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;
  json summary = json::object();

  fs::path input_path(const std::string& rel) {
    fs::path p(rel);
    if (p.is_relative() && rc.config_path.has_parent_path()) p = rc.config_path.parent_path() / p;
    inputs.push_back(p);
    return p;
  }
  fs::path output(const std::string& name) {
    fs::path p = rc.out_dir / name;
    outputs.push_back(p);
    return p;
  }
  void outputs_from(const std::vector<fs::path>& files) {
    outputs.insert(outputs.end(), files.begin(), files.end());
  }
  const json& cfg() const { return rc.config; }
};

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("config is missing '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw ValidationError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.is_object() && j.contains(key) ? number(j, key) : fallback;
}

ModelParams model_params(const json& cfg) {
  ModelParams p;
  if (cfg.contains("params")) {
    const json& j = cfg.at("params");
    if (!j.is_object()) throw ValidationError("'params' must be an object");
    for (const auto& [key, value] : j.items()) {
      if (!value.is_number()) throw InvalidParamsError("parameter '" + key + "' must be numeric here");
      const double v = value.get<double>();
      if (key == "D") p.D = v;
      else if (key == "E") p.E = v;
      else if (key == "h2") p.h2 = v;
      else if (key == "h4") p.h4 = v;
      else if (key == "m") p.m = v;
      else if (key == "a") p.a = v;
      else throw InvalidParamsError("unknown parameter '" + key + "'");
    }
  }
  p.validate();
  return p;
}

// Numbers become exact decimals, strings are parsed as polynomials.
Polynomial exact(const json& v) {
  if (v.is_number_integer()) return Polynomial(v.get<long>());
  if (v.is_number()) return Polynomial(symalg::rational_from_decimal(io::format_double(v.get<double>())));
  if (v.is_string()) return symalg::parse_polynomial(v.get<std::string>());
  throw ValidationError("matrix entries and parameters must be numbers or strings");
}

SymbolicParams symbolic_params(const json& cfg) {
  SymbolicParams p;
  if (!cfg.contains("params")) return p;
  for (const auto& [key, value] : cfg.at("params").items()) {
    if (key == "D") p.D = exact(value);
    else if (key == "E") p.E = exact(value);
    else if (key == "h2") p.h2 = exact(value);
    else if (key == "h4") p.h4 = exact(value);
    else if (key == "m") p.m = exact(value);
    else if (key == "a") p.a = exact(value);
    else throw InvalidParamsError("unknown parameter '" + key + "'");
  }
  return p;
}

QuadraticForm quadratic_form(const json& cfg, const SymbolicParams& sp) {
  if (cfg.contains("model")) return model_form(model_from_name(cfg.at("model").get<std::string>()), sp);
  const json& a = require(cfg, "a");
  if (!a.is_array() || a.size() != 3) throw ValidationError("'a' must be a 3x3 matrix");
  QuadraticForm q;
  for (std::size_t j = 0; j < 3; ++j) {
    if (!a[j].is_array() || a[j].size() != 3) throw ValidationError("'a' must be a 3x3 matrix");
    for (std::size_t k = 0; k < 3; ++k) q.a[j][k] = exact(a[j][k]);
  }
  return q;
}

Model model_of(const json& cfg) {
  const json& m = require(cfg, "model");
  if (!m.is_string()) throw ValidationError("'model' must be a string");
  return model_from_name(m.get<std::string>());
}

Grid1D grid1d(const json& cfg) {
  const json& g = require(cfg, "grid1d");
  const double n = number(g, "n");
  if (n < 2 || n != std::floor(n)) throw GridTooSmallError("grid1d.n must be an integer >= 2");
  return Grid1D::span(number(g, "lo"), number(g, "hi"), static_cast<std::size_t>(n));
}

Grid3D grid3d(const json& cfg) {
  const json& g = require(cfg, "grid3d");
  Grid3D out;
  for (int a = 0; a < 3; ++a) {
    const json& lo = require(g, "lo");
    const json& hi = require(g, "hi");
    const json& n = require(g, "n");
    if (!lo.is_array() || !hi.is_array() || !n.is_array() || lo.size() != 3 || hi.size() != 3 || n.size() != 3)
      throw ValidationError("grid3d.lo/hi/n must be arrays of length 3");
    const double count = n[a].get<double>();
    if (count < 2 || count != std::floor(count)) throw GridTooSmallError("grid3d.n entries must be integers >= 2");
    out.axes[a] = Axis::span(lo[a].get<double>(), hi[a].get<double>(), static_cast<std::size_t>(count));
  }
  out.validate();
  return out;
}

WaveFunction1D state(Context& ctx, const ModelParams& p) {
  const json& s = require(ctx.cfg(), "state");
  if (s.contains("file")) return io::read_wavefunction_csv(ctx.input_path(s.at("file").get<std::string>()));
  const Grid1D g = grid1d(ctx.cfg());
  const std::string kind = s.value("kind", std::string("fiducial"));
  WaveFunction1D f{g, std::vector<cplx>(g.n)};
  if (kind == "fiducial") return fiducial(p, g);
  if (kind == "gaussian") {
    const double c = number_or(s, "center", 0.0), w = number_or(s, "width", 1.0), k = number_or(s, "momentum", 0.0);
    for (std::size_t j = 0; j < g.n; ++j) {
      const double y = g.at(j);
      f.values[j] = std::exp(cplx(-(y - c) * (y - c) / (2.0 * w * w), k * y));
    }
    return f;
  }
  if (kind == "random") {
    std::mt19937_64 rng(ctx.cfg().value("seed", 0ull));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int packets = static_cast<int>(number_or(s, "packets", 3));
    for (int n = 0; n < packets; ++n) {
      const double c = unit(rng), w = 0.75 + 0.25 * unit(rng), k = unit(rng);
      const cplx amp(unit(rng), unit(rng));
      for (std::size_t j = 0; j < g.n; ++j) {
        const double y = g.at(j);
        f.values[j] += amp * std::exp(cplx(-(y - c) * (y - c) / (2.0 * w * w), k * y));
      }
    }
    return f;
  }
  throw ValidationError("unknown state kind '" + kind + "'");
}

SpectralDensity density(Context& ctx) {
  const json& d = require(ctx.cfg(), "density");
  if (d.contains("file")) return io::read_density_csv(ctx.input_path(d.at("file").get<std::string>()));
  const std::string kind = d.value("kind", std::string("gaussian"));
  if (kind != "gaussian") throw ValidationError("unknown density kind '" + kind + "'");
  const double c = number_or(d, "center", 0.0), w = number_or(d, "width", 1.0), k = number_or(d, "phase", 0.0);
  const double n = number_or(d, "n", 81);
  if (n < 3 || std::fmod(n, 2.0) != 1.0) throw GridTooSmallError("density.n must be odd and >= 3");
  return SpectralDensity::quadrature(
      [&](double s) { return std::exp(cplx(-(s - c) * (s - c) / (w * w), k * s)); },
      number_or(d, "lo", c - 6.0 * w), number_or(d, "hi", c + 6.0 * w), static_cast<std::size_t>(n));
}

double tolerance(const Context& ctx, double fallback) {
  if (ctx.rc.tolerance) return *ctx.rc.tolerance;
  return number_or(ctx.cfg(), "tolerance", fallback);
}

json terms_json(const symalg::DiffOp& op) {
  static constexpr const char* markers[] = {"d1", "d2", "d3", "dy", "du1", "du2"};
  json out = json::object();
  for (const auto& [idx, c] : op.terms()) {
    std::string key;
    for (std::size_t s = 0; s < idx.size(); ++s)
      for (int r = 0; r < idx[s]; ++r) key += (key.empty() ? "" : "*") + std::string(markers[s]);
    out[key.empty() ? "1" : key] = c.to_string();
  }
  return out;
}

// --- commands -------------------------------------------------------------

int cmd_classify(Context& ctx) {
  const auto sp = symbolic_params(ctx.cfg());
  const auto cls = classify(quadratic_form(ctx.cfg(), sp), sp.D);
  json report = {{"geometrisable", cls.geometrisable}, {"violations", json::array()}};
  ctx.out << "geometrisable: " << (cls.geometrisable ? "true" : "false") << '\n';
  for (const auto& v : cls.violations) {
    report["violations"].push_back({{"constraint", v.constraint}, {"residual", v.residual.to_string()}});
    ctx.out << "  violated: " << v.constraint << " (residual " << v.residual.to_string() << ")\n";
  }
  std::ofstream(ctx.output("classification.json")) << report.dump(2) << '\n';
  ctx.summary = report;
  return 0;
}

int cmd_reduce(Context& ctx) {
  const auto sp = symbolic_params(ctx.cfg());
  const auto r = build_Hr(quadratic_form(ctx.cfg(), sp), sp);
  json report = {{"order", r.hr.order()},
                 {"hr", r.hr.to_string()},
                 {"terms", terms_json(r.hr)},
                 {"coefficients",
                  {{"A", r.coeffs.A.to_string()},
                   {"B", r.coeffs.B.to_string()},
                   {"C", r.coeffs.C.to_string()},
                   {"K", r.coeffs.K.to_string()},
                   {"F", r.coeffs.F.to_string()}}}};
  try {
    const auto push = pushforward_to_analytic(r.hr, sp);
    report["pushforward"] = push.to_string();
    report["pushforward_terms"] = terms_json(push);
  } catch (const NotAPushforwardError& e) {
    report["pushforward"] = nullptr;
    report["pushforward_error"] = e.what();
  }
  std::ofstream(ctx.output("hr.txt")) << r.hr.to_string() << '\n';
  std::ofstream(ctx.output("reduction.json")) << report.dump(2) << '\n';
  ctx.out << "order: " << r.hr.order() << "\nH_r = " << r.hr.to_string() << '\n';
  if (report["pushforward"].is_string())
    ctx.out << "analytic form = " << report["pushforward"].get<std::string>() << '\n';
  ctx.summary = {{"order", r.hr.order()}};
  return 0;
}

int cmd_fiducial(Context& ctx) {
  const ModelParams p = model_params(ctx.cfg());
  const Grid1D g = grid1d(ctx.cfg());
  const auto phi = fiducial(p, g);
  io::write_wavefunction_csv(ctx.output("fiducial.csv"), phi, p);
  std::vector<std::vector<double>> rows;
  svg::Series mag{"|phi|", {}, {}}, re{"Re phi", {}, {}}, gauss{"exp(-pi E h4 y^2)", {}, {}};
  double dev = 0.0;
  for (std::size_t k = 0; k < g.n; ++k) {
    const double y = g.at(k), env = std::exp(-std::numbers::pi * p.E * p.h4 * y * y);
    dev = std::max(dev, std::abs(std::abs(phi.values[k]) - env));
    rows.push_back({y, phi.values[k].real(), phi.values[k].imag(), std::abs(phi.values[k]), env});
    mag.x.push_back(y), mag.y.push_back(std::abs(phi.values[k]));
    re.x.push_back(y), re.y.push_back(phi.values[k].real());
    gauss.x.push_back(y), gauss.y.push_back(env);
  }
  io::write_table_csv(ctx.output("fiducial_profile.csv"), {"y", "re", "im", "abs", "gaussian"}, rows);
  svg::write_line_plot(ctx.output("fiducial.svg"), "fiducial vector", "y", "", {re, mag, gauss});
  ctx.out << "max ||phi| - gaussian| = " << dev << '\n';
  ctx.summary = {{"max_envelope_deviation", dev}};
  return 0;
}

int cmd_transform(Context& ctx) {
  const ModelParams p = model_params(ctx.cfg());
  const auto f = state(ctx, p);
  const Grid3D g = grid3d(ctx.cfg());
  IcstReport report;
  const Field3D field = icst(f, g, p, &report);
  if (report.domain_too_small || report.undersampled) ctx.err << "warning: " << report.warning() << '\n';
  ctx.outputs_from(io::write_field(ctx.rc.out_dir / "field.json", field, p, ctx.rc.format));
  ctx.summary = {{"boundary_ratio", report.boundary_ratio},
                 {"samples_per_period", report.samples_per_period},
                 {"state_norm", f.norm()}};
  ctx.out << "transformed " << f.grid.n << " samples onto " << g.size() << " nodes\n";
  return 0;
}

int cmd_verify(Context& ctx) {
  const ModelParams p = model_params(ctx.cfg());
  const Field3D field = io::read_field(ctx.input_path(require(ctx.cfg(), "field").get<std::string>()));
  const auto sp = SymbolicParams::from(p);
  const auto b = p.bindings();
  const double tol = tolerance(ctx, kDefaultVerifyTolerance);
  const auto c_op = analytic_operator(sp), s_op = structural_operator(sp);
  json report = {{"tolerance", tol},
                 {"analytic_residual", annihilation_residual(field, c_op, b)},
                 {"structural_residual", annihilation_residual(field, s_op, b)}};
  bool coarse_ok = true;
  for (const auto& ax : field.grid.axes) coarse_ok = coarse_ok && ax.count % 2 == 1 && ax.count >= 5;
  if (coarse_ok) {
    const Field3D coarse = field.coarsened();
    const double rc = annihilation_residual(coarse, c_op, b), rs = annihilation_residual(coarse, s_op, b);
    report["analytic_ratio"] = rc / report["analytic_residual"].get<double>();
    report["structural_ratio"] = rs / report["structural_residual"].get<double>();
  }
  std::ofstream(ctx.output("verify.json")) << report.dump(2) << '\n';
  ctx.out << "analytic residual " << report["analytic_residual"] << ", structural residual "
          << report["structural_residual"] << '\n';
  if (coarse_ok)
    ctx.out << "convergence ratios " << report["analytic_ratio"] << ", " << report["structural_ratio"] << '\n';
  ctx.summary = report;
  const bool pass = report["analytic_residual"].get<double>() <= tol &&
                    report["structural_residual"].get<double>() <= tol;
  if (!pass) {
    ctx.err << "residual above tolerance " << tol << '\n';
    return 3;
  }
  return 0;
}

int cmd_evolve(Context& ctx) {
  const ModelParams p = model_params(ctx.cfg());
  const Model model = model_of(ctx.cfg());
  const auto dens = density(ctx);
  const Grid3D g = grid3d(ctx.cfg());
  const json& times = require(ctx.cfg(), "times");
  if (!times.is_array() || times.empty()) throw ValidationError("'times' must be a non-empty array");
  io::write_density_csv(ctx.output("density.csv"), dens);
  const auto b = p.bindings();
  const auto sp = SymbolicParams::from(p);
  json report = json::array();
  const double dt = number_or(ctx.cfg(), "dt", 0.0);
  const auto hr = reduced_hamiltonian(model);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k].get<double>();
    const Field3D f = reconstruct_field(t, g, model, dens, p);
    ctx.outputs_from(io::write_field(ctx.rc.out_dir / ("field_t" + std::to_string(k) + ".json"), f, p, ctx.rc.format));
    json row = {{"t", t},
                {"analytic_residual", annihilation_residual(f, analytic_operator(sp), b)},
                {"structural_residual", annihilation_residual(f, structural_operator(sp), b)}};
    if (dt > 0.0)
      row["schrodinger_residual"] = schrodinger_residual(hr, reconstruct_field(t - dt, g, model, dens, p), f,
                                                         reconstruct_field(t + dt, g, model, dens, p), dt, p);
    ctx.out << "t=" << t << " " << row.dump() << '\n';
    report.push_back(row);
  }
  std::ofstream(ctx.output("evolve.json")) << report.dump(2) << '\n';
  ctx.summary = {{"slices", report}};
  return 0;
}

int cmd_oracle(Context& ctx) {
  const ModelParams p = model_params(ctx.cfg());
  const Model model = model_of(ctx.cfg());
  const auto psi0 = state(ctx, p);
  const double t = number(ctx.cfg(), "t"), dt = number(ctx.cfg(), "dt");
  const auto every = static_cast<std::size_t>(number_or(ctx.cfg(), "record_every", 1));
  const Propagator1D prop(quantize_1d(model), psi0.grid, p, dt);
  const auto run = prop.propagate(psi0, t, std::max<std::size_t>(every, 1));
  std::vector<std::vector<double>> rows;
  for (const auto& r : run.trajectory) rows.push_back({r.t, r.norm, r.energy});
  io::write_table_csv(ctx.output("trajectory.csv"), {"t", "norm", "energy"}, rows);
  io::write_wavefunction_csv(ctx.output("psi_final.csv"), run.psi, p);
  const double drift = run.trajectory.back().norm / run.trajectory.front().norm - 1.0;
  if (run.boundary_warning)
    ctx.err << "warning: boundary contamination, edge/max ratio " << run.max_edge_ratio << '\n';
  ctx.out << "steps " << run.trajectory.back().t / dt << ", norm drift " << drift << '\n';
  ctx.summary = {{"norm_drift", drift}, {"max_edge_ratio", run.max_edge_ratio},
                 {"boundary_warning", run.boundary_warning}};
  return 0;
}

int cmd_compare(Context& ctx) {
  const ModelParams p = model_params(ctx.cfg());
  const Model model = model_of(ctx.cfg());
  const auto psi0 = state(ctx, p);
  const Grid3D g = grid3d(ctx.cfg());
  IntertwiningOptions o;
  o.delta = number_or(ctx.cfg(), "delta", o.delta);
  o.cn_dt = number_or(ctx.cfg(), "cn_dt", o.cn_dt);
  const double t = number(ctx.cfg(), "t");
  const double tol = tolerance(ctx, kDefaultCompareTolerance);
  const double res = intertwining_check(psi0, model, p, g, t, o);
  o.sign = -kDynamicalSign;
  const double wrong = intertwining_check(psi0, model, p, g, t, o);
  json report = {{"residual", res}, {"wrong_sign_residual", wrong}, {"tolerance", tol}};
  std::ofstream(ctx.output("compare.json")) << report.dump(2) << '\n';
  ctx.out << "intertwining residual " << res << " (wrong sign " << wrong << ")\n";
  ctx.summary = report;
  if (res > tol) {
    ctx.err << "residual above tolerance " << tol << '\n';
    return 3;
  }
  return 0;
}

int cmd_orbits(Context& ctx) {
  const ModelParams p = model_params(ctx.cfg());
  const Model model = model_of(ctx.cfg());
  const json& o = require(ctx.cfg(), "orbits");
  const double t_end = number(o, "t_end"), dt = number(o, "dt");
  const json& initial = require(o, "initial");
  std::vector<svg::Series> plot;
  json report = json::array();
  for (std::size_t k = 0; k < initial.size(); ++k) {
    const PhasePoint x0{initial[k].at(0).get<double>(), initial[k].at(1).get<double>(), 0.0};
    const auto orbit = classical_orbit(x0, model, p, t_end, dt);
    std::vector<std::vector<double>> rows;
    svg::Series s{"(" + io::format_double(x0.q) + ", " + io::format_double(x0.p) + ")", {}, {}};
    double dev = 0.0, drift = 0.0;
    const double e0 = energy_of(x0, model, p);
    for (const auto& x : orbit) {
      rows.push_back({x.t, x.q, x.p});
      s.x.push_back(x.q);
      s.y.push_back(x.p);
      const auto c = classical_closed_form(x0, model, p, x.t);
      dev = std::max({dev, std::abs(c.q - x.q), std::abs(c.p - x.p)});
      if (e0 != 0.0) drift = std::max(drift, std::abs(energy_of(x, model, p) / e0 - 1.0));
    }
    io::write_table_csv(ctx.output("orbit_" + std::to_string(k) + ".csv"), {"t", "q", "p"}, rows);
    plot.push_back(std::move(s));
    report.push_back({{"q0", x0.q}, {"p0", x0.p}, {"closed_form_deviation", dev}, {"energy_drift", drift}});
  }
  svg::write_line_plot(ctx.output("orbits.svg"), model_name(model) + " phase-space orbits", "q", "p", plot);
  std::ofstream(ctx.output("orbits.json")) << report.dump(2) << '\n';
  ctx.out << report.dump(2) << '\n';
  ctx.summary = {{"orbits", report}};
  return 0;
}

int cmd_interference(Context& ctx) {
  const ModelParams p = model_params(ctx.cfg());
  const Grid1D g = grid1d(ctx.cfg());
  const double delta = number(ctx.cfg(), "delta");
  const auto prof = interference_profile(delta, g, p);
  const Fiducial phi(p);
  std::vector<std::vector<double>> rows;
  svg::Series a{"|phi(y-d) + phi(y+d)|", {}, {}}, b{"|phi(y-d)| + |phi(y+d)|", {}, {}};
  double min_gap = INFINITY;
  for (std::size_t k = 0; k < g.n; ++k) {
    const double y = g.at(k), sum = std::abs(phi(y - delta)) + std::abs(phi(y + delta));
    rows.push_back({y, prof[k], sum});
    a.x.push_back(y), a.y.push_back(prof[k]);
    b.x.push_back(y), b.y.push_back(sum);
    min_gap = std::min(min_gap, prof[k] - sum);
  }
  io::write_table_csv(ctx.output("interference.csv"), {"y", "profile", "magnitude_sum"}, rows);
  svg::write_line_plot(ctx.output("interference.svg"), "interference of displaced states", "y", "", {a, b});
  ctx.out << "largest dip below the magnitude sum: " << -min_gap << '\n';
  ctx.summary = {{"max_dip", -min_gap}};
  return 0;
}

void write_manifest(Context& ctx, double seconds, int status) {
  json m;
  m["command"] = ctx.rc.command;
  m["config"] = ctx.cfg();
  m["config_path"] = ctx.rc.config_path.string();
  m["status"] = status;
  m["versions"] = {{"cstgeo", CSTGEO_VERSION}, {"gmp", gmp_version}, {"openssl", OPENSSL_VERSION_TEXT}};
  m["threads"] = thread_count();
  m["format"] = ctx.rc.format == io::FieldFormat::Binary ? "binary" : "csv";
  m["wall_time_seconds"] = seconds;
  m["summary"] = ctx.summary;
  auto files = [](const std::vector<fs::path>& paths) {
    json arr = json::array();
    for (const auto& p : paths)
      if (fs::exists(p)) arr.push_back({{"path", p.string()}, {"sha256", io::sha256_file(p)}});
    return arr;
  };
  std::vector<fs::path> inputs = ctx.inputs;
  if (!ctx.rc.config_path.empty()) inputs.insert(inputs.begin(), ctx.rc.config_path);
  m["inputs"] = files(inputs);
  m["outputs"] = files(ctx.outputs);
  std::ofstream(ctx.rc.out_dir / "manifest.json") << m.dump(2) << '\n';
}

}  // namespace

int run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  using Handler = int (*)(Context&);
  static const std::map<std::string, Handler> commands = {
      {"classify", cmd_classify}, {"reduce", cmd_reduce},   {"fiducial", cmd_fiducial},
      {"transform", cmd_transform}, {"verify", cmd_verify}, {"evolve", cmd_evolve},
      {"oracle", cmd_oracle},     {"compare", cmd_compare}, {"orbits", cmd_orbits},
      {"interference", cmd_interference}};
  Context ctx{rc, out, err, {}, {}};
  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  try {
    const auto it = commands.find(rc.command);
    if (it == commands.end()) throw ValidationError("unknown command '" + rc.command + "'");
    if (rc.threads) set_thread_count(rc.threads);
    fs::create_directories(rc.out_dir);
    status = it->second(ctx);
  } catch (const ClassificationFailedError& e) {
    err << "error: quadratic form is not geometrisable\n";
    for (const auto& v : e.violations())
      err << "  violated: " << v.constraint << " (residual " << v.residual.to_string() << ")\n";
    status = 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    status = 2;
  } catch (const NumericalContractError& e) {
    err << "numerical contract failure: " << e.what() << '\n';
    status = 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad config value: " << e.what() << '\n';
    status = 2;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    status = 2;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (fs::is_directory(rc.out_dir)) {
    try {
      write_manifest(ctx, seconds, status);
    } catch (const std::exception& e) {
      err << "warning: manifest not written: " << e.what() << '\n';
    }
  }
  return status;
}

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state order reduction toolkit"};
  app.set_version_flag("--version", CSTGEO_VERSION);
  std::string command, config_path, out_dir = ".", format = "binary";
  double tol = 0.0;
  unsigned threads = 0;
  app.add_option("command", command,
                 "classify | reduce | fiducial | transform | verify | evolve | oracle | compare | orbits | interference");
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "field format")->check(CLI::IsMember({"csv", "binary"}));
  auto* tol_opt = app.add_option("--tolerance", tol, "residual threshold for verify/compare");
  app.add_option("--threads", threads, "worker thread cap");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig rc;
  rc.config_path = config_path;
  rc.out_dir = out_dir;
  rc.threads = threads;
  try {
    std::ifstream in(config_path);
    if (!in) throw ValidationError("cannot read config " + config_path);
    rc.config = nlohmann::json::parse(in);
    rc.format = io::field_format_from_name(format);
    if (!rc.config.is_object()) throw ValidationError("config must be a JSON object");
    if (command.empty()) command = rc.config.value("command", std::string());
    if (command.empty()) throw ValidationError("no command given on the command line or in the config");
    if (rc.config.contains("command") && rc.config.at("command") != command)
      throw ValidationError("command line and config disagree on the command");
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config is not valid JSON: " << e.what() << '\n';
    return 2;
  }
  rc.command = command;
  if (*tol_opt) rc.tolerance = tol;
  return run(rc, std::cout, std::cerr);
}

}  // namespace cstgeo::cli
