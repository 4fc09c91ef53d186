#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cstgeo::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal line plot with axes and a legend.
void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series);

}  // namespace cstgeo::svg
