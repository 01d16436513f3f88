#pragma once

#include <cstdint>

#include "fracdiff/grid.hpp"

namespace fracdiff {

enum class SsimMode {
  global,    // one set of image-wide means, variances and covariance
  windowed,  // mean over all 8x8 windows (stride 1)
};

struct QualityReport {
  double mse = 0.0;
  double psnr_db = 0.0;  // +inf when mse == 0
  double ssim = 1.0;
};

double mse(const Grid& u, const Grid& u_star);

/// 10 log10(255^2 / mse); +infinity for identical images.
double psnr(const Grid& u, const Grid& u_star);
double psnr_from_mse(double mse);

/// SSIM with k1 = 0.01, k2 = 0.03 and dynamic range 255.
double ssim(const Grid& u, const Grid& u_star, SsimMode mode = SsimMode::global);

QualityReport evaluate(const Grid& u, const Grid& u_star,
                       SsimMode mode = SsimMode::global);

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Standard normal deviate for pixel `index` under `seed`.
///
/// Counter-based: two SplitMix64 outputs keyed on (seed, index) feed a
/// Box-Muller transform, so each pixel's draw is independent of traversal
/// order and of how pixels are split across workers.
double gaussian_deviate(std::uint64_t seed, std::uint64_t index);

/// u + N(0, sigma^2) per pixel. Not clamped.
Grid add_gaussian_noise(const Grid& u, const NoiseSpec& spec);

}  // namespace fracdiff
