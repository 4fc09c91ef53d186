#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cstgeo/dynamics.hpp"
#include "cstgeo/grid.hpp"
#include "cstgeo/params.hpp"

namespace cstgeo::io {

namespace fs = std::filesystem;

enum class FieldFormat { Binary, Csv };

FieldFormat field_format_from_name(const std::string& name);

// Shortest round-trip decimal form.
std::string format_double(double v);

// "# params: ..." header, then y,re,im.
void write_wavefunction_csv(const fs::path& path, const WaveFunction1D& f, const ModelParams& p);
WaveFunction1D read_wavefunction_csv(const fs::path& path);

// JSON sidecar at `path`; data in path with extension .bin (little-endian
// float64 pairs, x3 fastest, then x1, then x2) or .csv (x1,x2,x3,re,im).
// Returns every file written.
std::vector<fs::path> write_field(const fs::path& path, const Field3D& field, const ModelParams& p,
                                  FieldFormat format);
Field3D read_field(const fs::path& path);

void write_density_csv(const fs::path& path, const SpectralDensity& d);
SpectralDensity read_density_csv(const fs::path& path);

// Plain CSV with a header row; each row is formatted with format_double.
void write_table_csv(const fs::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

std::string sha256_file(const fs::path& path);

}  // namespace cstgeo::io
