#include "fracdiff/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracdiff/error.hpp"

namespace fracdiff {

Grid::Grid(int width, int height, double fill, double h)
    : width_(width), height_(height), h_(h) {
  if (width <= 0 || height <= 0) throw InvalidArgument("grid dimensions must be positive");
  if (!(h > 0.0)) throw InvalidArgument("spatial step must be positive");
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Grid::Grid(int width, int height, std::vector<double> data, double h)
    : width_(width), height_(height), h_(h), data_(std::move(data)) {
  if (width <= 0 || height <= 0) throw InvalidArgument("grid dimensions must be positive");
  if (!(h > 0.0)) throw InvalidArgument("spatial step must be positive");
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw InvalidArgument("grid data has " + std::to_string(data_.size()) +
                          " values, expected " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

Grid transpose(const Grid& u) {
  Grid t(u.height(), u.width(), 0.0, u.h());
  for (int y = 0; y < u.height(); ++y)
    for (int x = 0; x < u.width(); ++x) t.at(y, x) = u.at(x, y);
  return t;
}

Grid crop(const Grid& u, int x0, int y0, int w, int h) {
  if (x0 < 0 || y0 < 0 || w <= 0 || h <= 0 || x0 + w > u.width() || y0 + h > u.height()) {
    throw InvalidArgument("crop rectangle lies outside the grid");
  }
  Grid out(w, h, 0.0, u.h());
  for (int y = 0; y < h; ++y) {
    const auto src = u.row(y0 + y).subspan(static_cast<std::size_t>(x0), static_cast<std::size_t>(w));
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

Grid clamp(Grid u, double lo, double hi) {
  for (double& v : u.values()) v = std::clamp(v, lo, hi);
  return u;
}

double max_abs(const Grid& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace fracdiff
