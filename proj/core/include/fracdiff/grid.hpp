#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracdiff {

/// Row-major 2D scalar field. x runs along a row (width), y down a column
/// (height). `h` is the spatial step shared by both axes.
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, double fill = 0.0, double h = 1.0);
  Grid(int width, int height, std::vector<double> data, double h = 1.0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double h() const noexcept { return h_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& at(int x, int y) { return data_[index(x, y)]; }
  double at(int x, int y) const { return data_[index(x, y)]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> row(int y) {
    return {data_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<const double> row(int y) const {
    return {data_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool same_shape(const Grid& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  double h_ = 1.0;
  std::vector<double> data_;
};

Grid transpose(const Grid& u);

/// Copy of the w x h rectangle at (x0, y0).
Grid crop(const Grid& u, int x0, int y0, int w, int h);

/// Clamp every value to [lo, hi].
Grid clamp(Grid u, double lo, double hi);

double max_abs(const Grid& u);

/// Worker count for row/column-parallel passes. Every output element is
/// computed by the same arithmetic whatever the worker count, so results are
/// bitwise independent of it.
struct Exec {
  int workers = 1;
};

}  // namespace fracdiff
