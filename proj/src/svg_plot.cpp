#include "bingham/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bingham {

namespace {

constexpr double kWidth = 640, kHeight = 480, kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

bool usable(double v) { return std::isfinite(v) && v > 0.0; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void write_loglog_svg(std::ostream& os, const std::string& title, const std::string& xlabel,
                      const std::vector<PlotSeries>& series, double ref_slope) {
  double lx0 = INFINITY, lx1 = -INFINITY, ly0 = INFINITY, ly1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i]) || !usable(s.y[i])) continue;
      lx0 = std::min(lx0, std::log10(s.x[i]));
      lx1 = std::max(lx1, std::log10(s.x[i]));
      ly0 = std::min(ly0, std::log10(s.y[i]));
      ly1 = std::max(ly1, std::log10(s.y[i]));
    }
  if (!(lx0 <= lx1)) lx0 = 0, lx1 = 1, ly0 = 0, ly1 = 1;
  lx0 = std::floor(lx0), lx1 = std::ceil(lx1 + 1e-12);
  ly0 = std::floor(ly0), ly1 = std::ceil(ly1 + 1e-12);
  if (lx1 == lx0) lx1 += 1;
  if (ly1 == ly0) ly1 += 1;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - lx0) / (lx1 - lx0) * pw; };
  auto py = [&](double ly) { return kTop + (ly1 - ly) / (ly1 - ly0) * ph; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = lx0; d <= lx1 + 1e-9; d += 1) {
    os << "<line x1=\"" << px(d) << "\" y1=\"" << kTop << "\" x2=\"" << px(d) << "\" y2=\"" << kTop + ph
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << px(d) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">1e" << fmt(d)
       << "</text>\n";
  }
  for (double d = ly0; d <= ly1 + 1e-9; d += 1) {
    os << "<line x1=\"" << kLeft << "\" y1=\"" << py(d) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << py(d)
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(d) + 4 << "\" text-anchor=\"end\">1e" << fmt(d)
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">" << escape(xlabel)
     << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % (sizeof kColors / sizeof *kColors)];
    std::string pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i]) || !usable(s.y[i])) continue;
      const double X = px(std::log10(s.x[i])), Y = py(std::log10(s.y[i]));
      pts += std::to_string(X) + "," + std::to_string(Y) + " ";
      os << "<circle cx=\"" << X << "\" cy=\"" << Y << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    if (!pts.empty())
      os << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
    const double ly = kTop + 16 + 18.0 * k;
    os << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + pw + 30 << "\" y2=\""
       << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kLeft + pw + 36 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
  }

  if (ref_slope != 0.0) {
    // Slope triangle spanning a fifth of the x range, near the lower right.
    const double ax = lx0 + 0.65 * (lx1 - lx0), bx = ax + 0.2 * (lx1 - lx0);
    const double yb = ly0 + 0.1 * (ly1 - ly0), yt = yb + std::abs(ref_slope) * (bx - ax);
    const double cx = ref_slope > 0 ? bx : ax;
    os << "<polygon points=\"" << px(ax) << "," << py(yb) << " " << px(bx) << "," << py(yb) << " " << px(cx)
       << "," << py(yt) << "\" fill=\"none\" stroke=\"gray\"/>\n";
    os << "<text x=\"" << px(bx) + 4 << "\" y=\"" << py(0.5 * (yb + yt)) << "\" fill=\"gray\">"
       << fmt(std::abs(ref_slope)) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace bingham
