#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bingham {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Log-log line chart with markers and a reference-slope triangle. Non-positive
/// or non-finite samples are skipped.
void write_loglog_svg(std::ostream& os, const std::string& title, const std::string& xlabel,
                      const std::vector<PlotSeries>& series, double ref_slope);

}  // namespace bingham
