#pragma once

#include <string>
#include <vector>

namespace siolab::harness::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
  bool dashed = false;
  bool markers = true;
};

struct LinePlot {
  std::string title;
  std::string xlabel, ylabel;
  bool logx = true, logy = true;
  std::vector<Series> series;
};

// Non-positive values are dropped on log axes. Throws Error("empty") when no
// series has a plottable point.
std::string render(const LinePlot& plot);

struct Heatmap {
  std::string title;
  std::vector<double> x, y, value;  // scattered samples
  std::vector<int> band;            // colour band per sample
  std::vector<std::string> band_labels;
};

std::string render(const Heatmap& map);

}  // namespace siolab::harness::svg
