#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qaoa {

struct SvgSeries {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

// Static line chart with axes, ticks, and a legend. Output is deterministic
// for identical input.
void svg_line_chart(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series);

}  // namespace qaoa
