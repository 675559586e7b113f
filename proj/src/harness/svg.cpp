#include "siolab/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "siolab/error.hpp"

namespace siolab::harness::svg {

namespace {

constexpr double kW = 640, kH = 420, kL = 70, kR = 170, kT = 40, kB = 50;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
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

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;
  double map(double v) const {
    const double a = log ? std::log10(v) : v;
    return (a - lo) / (hi - lo);
  }
};

Axis make_axis(std::vector<double> v, bool log) {
  Axis a;
  a.log = log;
  for (auto& x : v) x = log ? std::log10(x) : x;
  a.lo = *std::min_element(v.begin(), v.end());
  a.hi = *std::max_element(v.begin(), v.end());
  if (log) {
    a.lo = std::floor(a.lo);
    a.hi = std::ceil(a.hi);
  }
  if (a.hi - a.lo < 1e-12) {
    a.lo -= 0.5;
    a.hi += 0.5;
  }
  return a;
}

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW
     << ' ' << kH << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kW / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
}

void frame(std::ostringstream& os, const Axis& ax, const Axis& ay, const std::string& xl, const std::string& yl) {
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto ticks = [](const Axis& a) {
    std::vector<double> t;
    if (a.log) {
      const int step = std::max(1, static_cast<int>(std::ceil((a.hi - a.lo) / 8)));
      for (double e = a.lo; e <= a.hi + 1e-9; e += step) t.push_back(std::pow(10.0, e));
    } else {
      for (int k = 0; k <= 5; ++k) t.push_back(a.lo + (a.hi - a.lo) * k / 5.0);
    }
    return t;
  };
  for (double v : ticks(ax)) {
    const double x = kL + pw * ax.map(v);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(kT + ph) << "\" x2=\"" << num(x) << "\" y2=\"" << num(kT + ph + 4)
       << "\" stroke=\"black\"/>\n<text x=\"" << num(x) << "\" y=\"" << num(kT + ph + 16)
       << "\" text-anchor=\"middle\">" << tick(v) << "</text>\n";
  }
  for (double v : ticks(ay)) {
    const double y = kT + ph * (1.0 - ay.map(v));
    os << "<line x1=\"" << num(kL - 4) << "\" y1=\"" << num(y) << "\" x2=\"" << kL << "\" y2=\"" << num(y)
       << "\" stroke=\"black\"/>\n<text x=\"" << num(kL - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
       << tick(v) << "</text>\n";
  }
  os << "<text x=\"" << num(kL + pw / 2) << "\" y=\"" << num(kH - 10) << "\" text-anchor=\"middle\">" << escape(xl)
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << num(kT + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num(kT + ph / 2) << ")\">" << escape(yl) << "</text>\n";
}

}  // namespace

std::string render(const LinePlot& plot) {
  std::vector<double> xs, ys;
  std::vector<Series> kept;
  for (const auto& s : plot.series) {
    Series k = s;
    k.x.clear();
    k.y.clear();
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if ((plot.logx && s.x[i] <= 0) || (plot.logy && s.y[i] <= 0)) continue;
      k.x.push_back(s.x[i]);
      k.y.push_back(s.y[i]);
    }
    if (k.x.empty()) continue;
    xs.insert(xs.end(), k.x.begin(), k.x.end());
    ys.insert(ys.end(), k.y.begin(), k.y.end());
    kept.push_back(std::move(k));
  }
  if (kept.empty()) throw Error("empty", "plot '" + plot.title + "' has no data");
  const Axis ax = make_axis(xs, plot.logx), ay = make_axis(ys, plot.logy);
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  std::ostringstream os;
  header(os, plot.title);
  frame(os, ax, ay, plot.xlabel, plot.ylabel);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const auto& s = kept[k];
    const char* colour = kPalette[k % 10];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
    if (s.dashed) os << " stroke-dasharray=\"5,3\"";
    os << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << num(kL + pw * ax.map(s.x[i])) << ',' << num(kT + ph * (1.0 - ay.map(s.y[i]))) << ' ';
    os << "\"/>\n";
    if (s.markers)
      for (std::size_t i = 0; i < s.x.size(); ++i)
        os << "<circle cx=\"" << num(kL + pw * ax.map(s.x[i])) << "\" cy=\"" << num(kT + ph * (1.0 - ay.map(s.y[i])))
           << "\" r=\"2.5\" fill=\"" << colour << "\"/>\n";
    const double ly = kT + 14 + 16 * k;
    os << "<line x1=\"" << num(kW - kR + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(kW - kR + 30)
       << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(kW - kR + 34) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render(const Heatmap& map) {
  if (map.x.empty()) throw Error("empty", "heatmap '" + map.title + "' has no data");
  Axis ax = make_axis(map.x, false), ay = make_axis(map.y, false);
  // equal aspect ratio
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  const double sx = (ax.hi - ax.lo) / pw, sy = (ay.hi - ay.lo) / ph;
  if (sx > sy) {
    const double c = 0.5 * (ay.lo + ay.hi), half = 0.5 * sx * ph;
    ay.lo = c - half, ay.hi = c + half;
  } else {
    const double c = 0.5 * (ax.lo + ax.hi), half = 0.5 * sy * pw;
    ax.lo = c - half, ax.hi = c + half;
  }
  const double vmax = *std::max_element(map.value.begin(), map.value.end());
  const double vmin = *std::min_element(map.value.begin(), map.value.end());
  std::ostringstream os;
  header(os, map.title);
  frame(os, ax, ay, "x", "y");
  for (std::size_t i = 0; i < map.x.size(); ++i) {
    const double u = vmax > vmin ? (map.value[i] - vmin) / (vmax - vmin) : 0.5;
    const int shade = static_cast<int>(std::lround(40 + 200 * (1.0 - u)));
    const int b = map.band.empty() ? 0 : map.band[i];
    os << "<circle cx=\"" << num(kL + pw * ax.map(map.x[i])) << "\" cy=\"" << num(kT + ph * (1.0 - ay.map(map.y[i])))
       << "\" r=\"3\" fill=\"rgb(" << shade << ',' << shade << ",255)\" stroke=\"" << kPalette[b % 10]
       << "\" stroke-width=\"1\"/>\n";
  }
  for (std::size_t k = 0; k < map.band_labels.size(); ++k) {
    const double ly = kT + 14 + 16 * k;
    os << "<circle cx=\"" << num(kW - kR + 20) << "\" cy=\"" << num(ly - 4) << "\" r=\"4\" fill=\"white\" stroke=\""
       << kPalette[k % 10] << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(kW - kR + 30) << "\" y=\"" << num(ly) << "\">" << escape(map.band_labels[k]) << "</text>\n";
  }
  os << "<text x=\"" << num(kW - kR + 10) << "\" y=\"" << num(kT + 20 + 16 * map.band_labels.size()) << "\">fill: "
     << tick(vmin) << " (light) to " << tick(vmax) << " (dark)</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace siolab::harness::svg
