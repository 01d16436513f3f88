#include "fracdiff/field.hpp"

#include <cmath>
#include <vector>

#include "fracdiff/error.hpp"
#include "parallel.hpp"

namespace fracdiff {
namespace {

void check_step(const Grid& u, const TwoSidedKernel& kernel) {
  if (u.h() != kernel.h()) {
    throw InvalidArgument("grid spacing and kernel spacing differ");
  }
}

// Applies the kernel along one line of length n. `load(i)` reads sample i of
// the line for i in [0, n); `store(i, v)` writes the result.
template <class Load, class Store>
void derivative_line(int n, const TwoSidedKernel& kernel, std::vector<double>& padded,
                     std::vector<double>& out, Load&& load, Store&& store) {
  const int m = kernel.margin();
  padded.resize(static_cast<std::size_t>(n + 2 * m));
  out.resize(static_cast<std::size_t>(n));
  for (int i = -m; i < n + m; ++i) padded[i + m] = load(reflect_index(i, n));
  apply_frac_derivative_1d(padded, kernel, out);
  for (int i = 0; i < n; ++i) store(i, out[i]);
}

}  // namespace

int reflect_index(int i, int n) noexcept {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

Grid pad_reflect(const Grid& u, int margin) {
  if (margin < 1) throw InvalidArgument("padding margin must be at least 1");
  const int w = u.width();
  const int h = u.height();
  Grid out(w + 2 * margin, h + 2 * margin, 0.0, u.h());
  for (int y = 0; y < out.height(); ++y) {
    const int sy = reflect_index(y - margin, h);
    for (int x = 0; x < out.width(); ++x) out.at(x, y) = u.at(reflect_index(x - margin, w), sy);
  }
  return out;
}

Grid frac_derivative_x(const Grid& u, const TwoSidedKernel& kernel, Exec exec) {
  check_step(u, kernel);
  Grid out(u.width(), u.height(), 0.0, u.h());
  detail::parallel_for(u.height(), exec.workers, [&](int y) {
    thread_local std::vector<double> padded, line;
    const auto src = u.row(y);
    auto dst = out.row(y);
    derivative_line(
        u.width(), kernel, padded, line, [&](int i) { return src[i]; },
        [&](int i, double v) { dst[i] = v; });
  });
  return out;
}

Grid frac_derivative_y(const Grid& u, const TwoSidedKernel& kernel, Exec exec) {
  check_step(u, kernel);
  Grid out(u.width(), u.height(), 0.0, u.h());
  detail::parallel_for(u.width(), exec.workers, [&](int x) {
    thread_local std::vector<double> padded, line;
    derivative_line(
        u.height(), kernel, padded, line, [&](int i) { return u.at(x, i); },
        [&](int i, double v) { out.at(x, i) = v; });
  });
  return out;
}

VectorField frac_gradient(const Grid& u, const TwoSidedKernel& kernel, Exec exec) {
  return {frac_derivative_x(u, kernel, exec), frac_derivative_y(u, kernel, exec)};
}

Grid frac_divergence(const VectorField& v, const TwoSidedKernel& kernel, Exec exec) {
  if (!v.fx.same_shape(v.fy)) {
    throw InvalidArgument("vector field components have different dimensions");
  }
  Grid out = frac_derivative_x(v.fx, kernel, exec);
  const Grid dy = frac_derivative_y(v.fy, kernel, exec);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += dy[i];
  return out;
}

Grid magnitude(const VectorField& v) {
  if (!v.fx.same_shape(v.fy)) {
    throw InvalidArgument("vector field components have different dimensions");
  }
  Grid out(v.fx.width(), v.fx.height(), 0.0, v.fx.h());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(v.fx[i] * v.fx[i] + v.fy[i] * v.fy[i]);
  return out;
}

Grid gradient_magnitude(const Grid& u, const TwoSidedKernel& kernel, Exec exec) {
  return magnitude(frac_gradient(u, kernel, exec));
}

Grid central_gradient_magnitude(const Grid& u) {
  const int w = u.width();
  const int h = u.height();
  const double inv = 1.0 / (2.0 * u.h());
  Grid out(w, h, 0.0, u.h());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (u.at(reflect_index(x + 1, w), y) - u.at(reflect_index(x - 1, w), y)) * inv;
      const double gy = (u.at(x, reflect_index(y + 1, h)) - u.at(x, reflect_index(y - 1, h))) * inv;
      out.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

}  // namespace fracdiff
