#include "chancomp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "chancomp/errors.hpp"

namespace chancomp {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 80, kRight = 160, kTop = 40, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string decade_label(int k) {
  if (k >= 0 && k <= 4) return std::to_string(static_cast<long>(std::lround(std::pow(10.0, k))));
  return "1e" + std::to_string(k);
}

bool parse_positive(const std::string& s, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size() && std::isfinite(out) && out > 0.0;
  } catch (const std::logic_error&) {
    return false;
  }
}

struct Range {
  double lo, hi;
};

Range log_range(double mn, double mx) {
  double lo = std::floor(std::log10(mn)), hi = std::ceil(std::log10(mx));
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi};
}

// Label every decade up to 8 of them, otherwise every 2nd, 3rd, ...
int label_step(const Range& r) { return std::max(1, static_cast<int>(std::ceil((r.hi - r.lo) / 8.0))); }

}  // namespace

std::string render_svg(const CsvTable& table, const std::string& x_col, const std::string& y_col,
                       const std::vector<std::string>& group_cols, const std::string& title) {
  const std::size_t xi = table.column(x_col), yi = table.column(y_col);
  std::vector<std::size_t> gi;
  for (const auto& g : group_cols) gi.push_back(table.column(g));
  if (table.rows.empty()) throw ParseError("CSV has a header but no data rows");

  // group label -> (x -> (sum y, count)), groups kept in first-seen order.
  std::vector<std::string> order;
  std::map<std::string, std::map<double, std::pair<double, int>>> groups;
  for (const auto& row : table.rows) {
    std::string label;
    for (std::size_t k = 0; k < gi.size(); ++k) label += (k ? "/" : "") + row[gi[k]];
    double x = 0, y = 0;
    if (!parse_positive(row[xi], x) || !parse_positive(row[yi], y)) continue;
    if (!groups.count(label)) order.push_back(label);
    auto& cell = groups[label][x];
    cell.first += y;
    cell.second += 1;
  }
  if (order.empty()) throw ParseError("no row has positive finite '" + x_col + "' and '" + y_col + "' values");

  double xmin = INFINITY, xmax = 0, ymin = INFINITY, ymax = 0;
  for (const auto& [label, pts] : groups)
    for (const auto& [x, acc] : pts) {
      const double y = acc.first / acc.second;
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
  const Range xr = log_range(xmin, xmax), yr = log_range(ymin, ymax);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (std::log10(x) - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (std::log10(y) - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(kWidth) + "\" height=\"" +
       fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\" font-family=\"sans-serif\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    s += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">" +
         xml_escape(title) + "</text>\n";
  }
  s += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int k = static_cast<int>(std::ceil(xr.lo)); k <= static_cast<int>(std::floor(xr.hi)); ++k) {
    const double x = kLeft + (k - xr.lo) / (xr.hi - xr.lo) * pw;
    s += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(kTop + ph) + "\"/>\n";
  }
  for (int k = static_cast<int>(std::ceil(yr.lo)); k <= static_cast<int>(std::floor(yr.hi)); ++k) {
    const double y = kTop + ph - (k - yr.lo) / (yr.hi - yr.lo) * ph;
    s += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft + pw) + "\" y2=\"" + fmt(y) + "\"/>\n";
  }
  s += "</g>\n";
  s += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<g font-size=\"11\">\n";
  for (int k = static_cast<int>(std::ceil(xr.lo)); k <= static_cast<int>(std::floor(xr.hi)); ++k) {
    if (k % label_step(xr) != 0) continue;
    const double x = kLeft + (k - xr.lo) / (xr.hi - xr.lo) * pw;
    s += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kTop + ph + 16) + "\" text-anchor=\"middle\">" + decade_label(k) +
         "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(yr.lo)); k <= static_cast<int>(std::floor(yr.hi)); ++k) {
    if (k % label_step(yr) != 0) continue;
    const double y = kTop + ph - (k - yr.lo) / (yr.hi - yr.lo) * ph;
    s += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(y + 4) + "\" text-anchor=\"end\">" + decade_label(k) +
         "</text>\n";
  }
  s += "</g>\n";
  s += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 18) +
       "\" font-size=\"12\" text-anchor=\"middle\">" + xml_escape(x_col) + " (log)</text>\n";
  s += "<text x=\"18\" y=\"" + fmt(kTop + ph / 2) + "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       fmt(kTop + ph / 2) + ")\">" + xml_escape(y_col) + " (log)</text>\n";

  for (std::size_t g = 0; g < order.size(); ++g) {
    const std::string color = kPalette[g % std::size(kPalette)];
    std::string pts;
    for (const auto& [x, acc] : groups[order[g]]) {
      pts += (pts.empty() ? "" : " ") + fmt(px(x)) + "," + fmt(py(acc.first / acc.second));
    }
    s += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    const double ly = kTop + 10 + 18 * static_cast<double>(g);
    const double lx = kLeft + pw + 14;
    s += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(lx + 20) + "\" y2=\"" + fmt(ly) +
         "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text class=\"legend\" x=\"" + fmt(lx + 26) + "\" y=\"" + fmt(ly + 4) + "\" font-size=\"11\">" +
         xml_escape(order[g].empty() ? y_col : order[g]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

void emit_svg(const std::string& csv_path, const std::string& x_col, const std::string& y_col,
              const std::vector<std::string>& group_cols, const std::string& out_path) {
  const std::string svg = render_svg(read_csv(csv_path), x_col, y_col, group_cols);
  write_text_file(out_path, svg);
}

}  // namespace chancomp
