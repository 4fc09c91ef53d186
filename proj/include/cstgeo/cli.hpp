#pragma once

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>

#include "cstgeo/io.hpp"

namespace cstgeo::cli {

struct RunConfig {
  std::string command;
  nlohmann::json config;
  std::filesystem::path config_path;
  std::filesystem::path out_dir = ".";
  io::FieldFormat format = io::FieldFormat::Binary;
  std::optional<double> tolerance;
  unsigned threads = 0;  // 0 keeps the current setting
};

// Executes one command and writes its outputs plus manifest.json into
// out_dir. Returns 0, 2 (validation error) or 3 (numerical contract failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Flag parsing front end: cstgeo [command] --config PATH [--out DIR] ...
int main(int argc, char** argv);

}  // namespace cstgeo::cli
