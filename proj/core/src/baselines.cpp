#include "fracdiff/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "fracdiff/error.hpp"
#include "fracdiff/field.hpp"

namespace fracdiff {

std::vector<double> gaussian_weights(int radius, double sigma) {
  if (radius < 1) throw InvalidArgument("filter radius must be at least 1");
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian sigma must be positive");
  std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    w[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += w[i + radius];
  }
  for (double& v : w) v /= sum;
  return w;
}

Grid gaussian_filter(const Grid& u, const FilterSpec& spec) {
  if (spec.kind != FilterKind::gaussian) throw InvalidArgument("filter spec is not gaussian");
  const auto w = gaussian_weights(spec.radius, spec.sigma);
  const int r = spec.radius;
  const int width = u.width();
  const int height = u.height();

  Grid rows(width, height, 0.0, u.h());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) acc += w[i + r] * u.at(reflect_index(x + i, width), y);
      rows.at(x, y) = acc;
    }
  }
  Grid out(width, height, 0.0, u.h());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) acc += w[i + r] * rows.at(x, reflect_index(y + i, height));
      out.at(x, y) = acc;
    }
  }
  return out;
}

Grid median_filter(const Grid& u, const FilterSpec& spec) {
  if (spec.kind != FilterKind::median) throw InvalidArgument("filter spec is not median");
  if (spec.radius < 1) throw InvalidArgument("filter radius must be at least 1");
  const int r = spec.radius;
  const int width = u.width();
  const int height = u.height();
  std::vector<double> window(static_cast<std::size_t>((2 * r + 1) * (2 * r + 1)));
  const auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);

  Grid out(width, height, 0.0, u.h());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::size_t n = 0;
      for (int dy = -r; dy <= r; ++dy) {
        const int sy = reflect_index(y + dy, height);
        for (int dx = -r; dx <= r; ++dx) window[n++] = u.at(reflect_index(x + dx, width), sy);
      }
      std::nth_element(window.begin(), mid, window.end());
      out.at(x, y) = *mid;
    }
  }
  return out;
}

Grid apply_filter(const Grid& u, const FilterSpec& spec) {
  return spec.kind == FilterKind::gaussian ? gaussian_filter(u, spec) : median_filter(u, spec);
}

}  // namespace fracdiff
