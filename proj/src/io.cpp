#include "cstgeo/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "cstgeo/error.hpp"

namespace cstgeo::io {

using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw ValidationError("cannot read " + path.string());
  return in;
}

double parse_double(const std::string& text, const fs::path& path) {
  double v = 0.0;
  const char* b = text.data();
  while (*b == ' ') ++b;
  const auto [ptr, ec] = std::from_chars(b, text.data() + text.size(), v);
  if (ec != std::errc() || (ptr != text.data() + text.size() && *ptr != ' ' && *ptr != '\r'))
    throw ValidationError("malformed number '" + text + "' in " + path.string());
  return v;
}

std::vector<std::vector<double>> read_rows(const fs::path& path, std::size_t columns,
                                           std::string* comment) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (comment) *comment = line;
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell, path));
    if (row.size() != columns) throw ValidationError("wrong column count in " + path.string());
    rows.push_back(std::move(row));
  }
  return rows;
}

json axes_json(const Grid3D& g) {
  json j;
  j["axes"] = {"x1", "x2", "x3"};
  j["counts"] = {g.axes[0].count, g.axes[1].count, g.axes[2].count};
  j["origins"] = {g.axes[0].origin, g.axes[1].origin, g.axes[2].origin};
  j["steps"] = {g.axes[0].step, g.axes[1].step, g.axes[2].step};
  return j;
}

}  // namespace

FieldFormat field_format_from_name(const std::string& name) {
  if (name == "binary") return FieldFormat::Binary;
  if (name == "csv") return FieldFormat::Csv;
  throw ValidationError("unknown format '" + name + "' (expected csv or binary)");
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

void write_wavefunction_csv(const fs::path& path, const WaveFunction1D& f, const ModelParams& p) {
  f.validate();
  auto out = open_out(path);
  out << "# params: " << p.describe() << "\n";
  out << "y,re,im\n";
  for (std::size_t k = 0; k < f.grid.n; ++k)
    out << format_double(f.grid.at(k)) << ',' << format_double(f.values[k].real()) << ','
        << format_double(f.values[k].imag()) << '\n';
}

WaveFunction1D read_wavefunction_csv(const fs::path& path) {
  const auto rows = read_rows(path, 3, nullptr);
  if (rows.size() < 2) throw GridTooSmallError("wave function file needs at least 2 rows");
  const double y0 = rows.front()[0];
  const double step = (rows.back()[0] - y0) / static_cast<double>(rows.size() - 1);
  WaveFunction1D f{Grid1D{y0, step, rows.size()}, {}};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (std::abs(rows[k][0] - f.grid.at(k)) > 1e-9 * std::max(1.0, std::abs(step) * rows.size()))
      throw ValidationError("wave function grid is not uniform in " + path.string());
    f.values.emplace_back(rows[k][1], rows[k][2]);
  }
  f.validate();
  return f;
}

std::vector<fs::path> write_field(const fs::path& path, const Field3D& field, const ModelParams& p,
                                  FieldFormat format) {
  field.grid.validate();
  json meta = axes_json(field.grid);
  meta["params"] = {{"D", p.D}, {"E", p.E}, {"h2", p.h2}, {"h4", p.h4}, {"m", p.m}, {"a", p.a}};
  meta["layout"] = "x3 fastest, then x1, then x2";
  fs::path data = path;
  if (format == FieldFormat::Binary) {
    data.replace_extension(".bin");
    meta["format"] = "binary";
    meta["encoding"] = "float64 little-endian, interleaved re,im";
    auto out = open_out(data, std::ios::binary);
    std::vector<unsigned char> buf(field.values.size() * 16);
    for (std::size_t k = 0; k < field.values.size(); ++k) {
      const std::array<double, 2> v = {field.values[k].real(), field.values[k].imag()};
      for (int c = 0; c < 2; ++c) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(v[c]);
        for (int b = 0; b < 8; ++b) buf[k * 16 + c * 8 + b] = static_cast<unsigned char>(bits >> (8 * b));
      }
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  } else {
    data.replace_extension(".csv");
    meta["format"] = "csv";
    auto out = open_out(data);
    out << "x1,x2,x3,re,im\n";
    const auto& ax = field.grid.axes;
    for (std::size_t i2 = 0; i2 < ax[1].count; ++i2)
      for (std::size_t i1 = 0; i1 < ax[0].count; ++i1)
        for (std::size_t i3 = 0; i3 < ax[2].count; ++i3) {
          const cplx v = field.at(i1, i2, i3);
          out << format_double(ax[0].at(i1)) << ',' << format_double(ax[1].at(i2)) << ','
              << format_double(ax[2].at(i3)) << ',' << format_double(v.real()) << ','
              << format_double(v.imag()) << '\n';
        }
  }
  meta["data"] = data.filename().string();
  auto out = open_out(path);
  out << meta.dump(2) << '\n';
  return {path, data};
}

Field3D read_field(const fs::path& path) {
  json meta;
  try {
    meta = json::parse(open_in(path));
  } catch (const json::exception& e) {
    throw ValidationError("field sidecar " + path.string() + ": " + e.what());
  }
  Grid3D g;
  try {
    for (int a = 0; a < 3; ++a) {
      g.axes[a].count = meta.at("counts").at(a).get<std::size_t>();
      g.axes[a].origin = meta.at("origins").at(a).get<double>();
      g.axes[a].step = meta.at("steps").at(a).get<double>();
    }
  } catch (const json::exception& e) {
    throw ValidationError("field sidecar " + path.string() + ": " + e.what());
  }
  g.validate();
  Field3D f(g);
  const fs::path data = path.parent_path() / meta.value("data", std::string());
  const std::string format = meta.value("format", std::string("binary"));
  if (format == "binary") {
    auto in = open_in(data, std::ios::binary);
    std::vector<unsigned char> buf(f.values.size() * 16);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size()))
      throw ValidationError("field data " + data.string() + " is truncated");
    for (std::size_t k = 0; k < f.values.size(); ++k) {
      std::array<double, 2> v{};
      for (int c = 0; c < 2; ++c) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[k * 16 + c * 8 + b]) << (8 * b);
        v[c] = std::bit_cast<double>(bits);
      }
      f.values[k] = {v[0], v[1]};
    }
  } else if (format == "csv") {
    const auto rows = read_rows(data, 5, nullptr);
    if (rows.size() != f.values.size()) throw ValidationError("field CSV has the wrong row count");
    for (std::size_t k = 0; k < rows.size(); ++k) f.values[k] = {rows[k][3], rows[k][4]};
  } else {
    throw ValidationError("unknown field format '" + format + "'");
  }
  return f;
}

void write_density_csv(const fs::path& path, const SpectralDensity& d) {
  d.validate();
  auto out = open_out(path);
  out << "s,re,im\n";
  for (std::size_t k = 0; k < d.nodes.size(); ++k)
    out << format_double(d.nodes[k]) << ',' << format_double(d.weights[k].real()) << ','
        << format_double(d.weights[k].imag()) << '\n';
}

SpectralDensity read_density_csv(const fs::path& path) {
  SpectralDensity d;
  for (const auto& r : read_rows(path, 3, nullptr)) {
    d.nodes.push_back(r[0]);
    d.weights.emplace_back(r[1], r[2]);
  }
  d.validate();
  return d;
}

void write_table_csv(const fs::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

std::string sha256_file(const fs::path& path) {
  auto in = open_in(path, std::ios::binary);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 unavailable");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int k = 0; k < len; ++k) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[k]);
  return hex.str();
}

}  // namespace cstgeo::io
