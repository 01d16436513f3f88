#pragma once

#include <vector>

#include "fracdiff/grid.hpp"

namespace fracdiff {

enum class FilterKind { gaussian, median };

struct FilterSpec {
  FilterKind kind = FilterKind::gaussian;
  int radius = 2;
  double sigma = 1.0;  // gaussian only

  static FilterSpec gaussian(int radius = 2, double sigma = 1.0) {
    return {FilterKind::gaussian, radius, sigma};
  }
  static FilterSpec median(int radius = 1) { return {FilterKind::median, radius, 0.0}; }
};

/// Normalized 1D weights exp(-i^2 / (2 sigma^2)), i in [-radius, radius].
std::vector<double> gaussian_weights(int radius, double sigma);

/// Separable convolution with reflect padding.
Grid gaussian_filter(const Grid& u, const FilterSpec& spec);

/// Median of the (2r+1)^2 reflect-padded neighbourhood.
Grid median_filter(const Grid& u, const FilterSpec& spec);

Grid apply_filter(const Grid& u, const FilterSpec& spec);

}  // namespace fracdiff
