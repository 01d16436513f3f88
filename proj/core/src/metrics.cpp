#include "fracdiff/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fracdiff/error.hpp"

namespace fracdiff {
namespace {

constexpr double kPeak = 255.0;  // 2^8 - 1
constexpr double kC1 = (0.01 * kPeak) * (0.01 * kPeak);
constexpr double kC2 = (0.03 * kPeak) * (0.03 * kPeak);

void check_shapes(const Grid& u, const Grid& v) {
  if (!u.same_shape(v)) throw InvalidArgument("images have different dimensions");
}

// SSIM over the w x h block at (x0, y0).
double block_ssim(const Grid& u, const Grid& v, int x0, int y0, int w, int h) {
  const double n = static_cast<double>(w) * h;
  double su = 0.0;
  double sv = 0.0;
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) {
      su += u.at(x, y);
      sv += v.at(x, y);
    }
  const double mu = su / n;
  const double mv = sv / n;
  double vu = 0.0;
  double vv = 0.0;
  double cov = 0.0;
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) {
      const double du = u.at(x, y) - mu;
      const double dv = v.at(x, y) - mv;
      vu += du * du;
      vv += dv * dv;
      cov += du * dv;
    }
  vu /= n;
  vv /= n;
  cov /= n;
  return ((2.0 * mu * mv + kC1) * (2.0 * cov + kC2)) /
         ((mu * mu + mv * mv + kC1) * (vu + vv + kC2));
}

std::uint64_t splitmix_output(std::uint64_t state) {
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double mse(const Grid& u, const Grid& u_star) {
  check_shapes(u, u_star);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - u_star[i];
    sum += d * d;
  }
  return sum / static_cast<double>(u.size());
}

double psnr_from_mse(double m) {
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeak * kPeak / m);
}

double psnr(const Grid& u, const Grid& u_star) { return psnr_from_mse(mse(u, u_star)); }

double ssim(const Grid& u, const Grid& u_star, SsimMode mode) {
  check_shapes(u, u_star);
  constexpr int kWindow = 8;
  if (mode == SsimMode::global || u.width() < kWindow || u.height() < kWindow) {
    return block_ssim(u, u_star, 0, 0, u.width(), u.height());
  }
  double sum = 0.0;
  long count = 0;
  for (int y = 0; y + kWindow <= u.height(); ++y)
    for (int x = 0; x + kWindow <= u.width(); ++x) {
      sum += block_ssim(u, u_star, x, y, kWindow, kWindow);
      ++count;
    }
  return sum / static_cast<double>(count);
}

QualityReport evaluate(const Grid& u, const Grid& u_star, SsimMode mode) {
  const double m = mse(u, u_star);
  return {m, psnr_from_mse(m), ssim(u, u_star, mode)};
}

double gaussian_deviate(std::uint64_t seed, std::uint64_t index) {
  // Outputs 2i+1 and 2i+2 of the SplitMix64 stream started at `seed`.
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  const std::uint64_t a = splitmix_output(seed + (2 * index + 1) * kGolden);
  const std::uint64_t b = splitmix_output(seed + (2 * index + 2) * kGolden);
  constexpr double kUnit = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = static_cast<double>((a >> 11) + 1) * kUnit;  // (0, 1]
  const double u2 = static_cast<double>(b >> 11) * kUnit;        // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Grid add_gaussian_noise(const Grid& u, const NoiseSpec& spec) {
  if (!(spec.sigma >= 0.0)) throw InvalidArgument("noise sigma must be non-negative");
  Grid out = u;
  if (spec.sigma == 0.0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += spec.sigma * gaussian_deviate(spec.seed, i);
  return out;
}

}  // namespace fracdiff
