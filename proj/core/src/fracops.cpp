#include "fracdiff/fracops.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fracdiff/error.hpp"
#include "numfmt.hpp"

namespace fracdiff {
namespace {

bool is_integer(double v) { return std::isfinite(v) && v == std::round(v); }

// Sign of Gamma(x) for x not a non-positive integer.
double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
}

// Gamma(k - alpha) / (Gamma(k + 1) Gamma(-alpha)), the GL weight written as a
// Gamma ratio. At integer alpha = n the poles cancel to (-1)^k binom(n, k).
double gamma_ratio(int k, double alpha) {
  if (is_integer(alpha)) {
    const int n = static_cast<int>(alpha);
    if (k > n) return 0.0;
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) binom = binom * (n - i + 1) / i;
    return (k % 2 == 0) ? binom : -binom;
  }
  const double log_mag =
      std::lgamma(k - alpha) - std::lgamma(k + 1.0) - std::lgamma(-alpha);
  return gamma_sign(k - alpha) * gamma_sign(-alpha) * std::exp(log_mag);
}

void check_kernel_args(double alpha, int n_mem) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw InvalidArgument("two-sided kernel order must lie in (0, 2], got " +
                          std::to_string(alpha));
  }
  if (n_mem < 5) {
    throw InvalidArgument("memory length must be at least 5, got " + std::to_string(n_mem));
  }
}

}  // namespace

GLKernel gl_coefficients(double alpha, std::size_t count) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("GL order must be positive");
  }
  if (count == 0) throw InvalidArgument("GL coefficient count must be positive");
  GLKernel kernel{alpha, std::vector<double>(count)};
  kernel.weights[0] = 1.0;
  for (std::size_t k = 1; k < count; ++k) {
    const double kd = static_cast<double>(k);
    kernel.weights[k] = kernel.weights[k - 1] * (kd - 1.0 - alpha) / kd;
  }
  return kernel;
}

std::vector<double> one_sided_g2(std::span<const double> signal, double alpha,
                                 int n_terms, Side side, double h) {
  if (!(alpha > 0.0)) throw InvalidArgument("G2 order must be positive");
  if (n_terms < 3) throw InvalidArgument("G2 needs at least 3 terms");
  if (!(h > 0.0)) throw InvalidArgument("spatial step must be positive");

  const auto w = gl_coefficients(alpha, static_cast<std::size_t>(n_terms)).weights;
  const long n = static_cast<long>(signal.size());
  const int dir = side == Side::left ? -1 : 1;
  auto f = [&](long i) { return (i >= 0 && i < n) ? signal[static_cast<std::size_t>(i)] : 0.0; };

  std::vector<double> out(signal.size(), 0.0);
  const double scale = std::pow(h, -alpha);
  for (long i = 0; i < n; ++i) {
    double acc = 0.0;
    for (long k = 0; k < n_terms; ++k) {
      // f(x -+ kh), f(x -+ (k-1)h), f(x -+ (k+1)h)
      const double at = f(i + dir * k);
      const double nearer = f(i + dir * (k - 1));
      const double farther = f(i + dir * (k + 1));
      acc += w[k] * (at + alpha / 4.0 * (nearer - farther) +
                     alpha * alpha / 8.0 * (nearer - 2.0 * at + farther));
    }
    out[i] = scale * acc;
  }
  return out;
}

std::vector<double> closed_form_coefficients(double alpha, int n_mem) {
  check_kernel_args(alpha, n_mem);
  const double a = alpha;
  const double a2 = a * a;
  const double up = a / 4.0 + a2 / 8.0;   // weight of f(x-(k-1)h)
  const double mid = 1.0 - a2 / 4.0;      // weight of f(x-kh)
  const double down = a2 / 8.0 - a / 4.0; // weight of f(x-(k+1)h)
  auto r = [a](int k) { return gamma_ratio(k, a); };

  std::vector<double> c(static_cast<std::size_t>(n_mem - 1));
  const int last = n_mem - 2;
  c[0] = 1.0 - a2 / 2.0 - a2 * a / 8.0;
  c[1] = a / 8.0 + a2 / 16.0 + 0.5 * (r(2) * up + r(1) * mid + r(0) * down);
  for (int j = 2; j <= n_mem - 4; ++j) {
    c[j] = 0.5 * (r(j + 1) * up + r(j) * mid + r(j - 1) * down);
  }
  c[last - 1] = 0.5 * (r(n_mem - 3) * mid + r(n_mem - 4) * down);
  c[last] = 0.5 * r(n_mem - 3) * down;
  return c;
}

std::vector<double> g2_impulse_coefficients(double alpha, int n_mem) {
  check_kernel_args(alpha, n_mem);
  const int center = n_mem + 1;
  std::vector<double> delta(static_cast<std::size_t>(2 * center + 1), 0.0);
  delta[center] = 1.0;
  const int terms = n_mem - 2;
  const auto left = one_sided_g2(delta, alpha, terms, Side::left);
  const auto right = one_sided_g2(delta, alpha, terms, Side::right);

  std::vector<double> c(static_cast<std::size_t>(n_mem - 1));
  for (int j = 0; j < n_mem - 1; ++j) {
    c[j] = 0.5 * (left[center + j] + right[center + j]);
  }
  return c;
}

TwoSidedKernel::TwoSidedKernel(double alpha, int n_mem, double h)
    : alpha_(alpha), n_mem_(n_mem), h_(h) {
  check_kernel_args(alpha, n_mem);
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("spatial step must be positive");
  scale_ = std::pow(h, -alpha);
  coeffs_ = closed_form_coefficients(alpha, n_mem);

  const auto oracle = g2_impulse_coefficients(alpha, n_mem);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (!(std::abs(coeffs_[j] - oracle[j]) <= 1e-9)) {
      std::ostringstream msg;
      msg << "closed-form C_" << j << " = " << coeffs_[j]
          << " disagrees with the G2 impulse response " << oracle[j]
          << " (alpha=" << alpha << ", N=" << n_mem << ")";
      throw ConsistencyError(msg.str(), j);
    }
  }
}

std::vector<double> TwoSidedKernel::stencil() const {
  const int r = radius();
  std::vector<double> s(static_cast<std::size_t>(2 * r + 1));
  for (int j = -r; j <= r; ++j) s[j + r] = coeffs_[std::abs(j)];
  return s;
}

double TwoSidedKernel::dc_response() const noexcept {
  double sum = coeffs_[0];
  for (std::size_t j = 1; j < coeffs_.size(); ++j) sum += 2.0 * coeffs_[j];
  return scale_ * sum;
}

double TwoSidedKernel::l1_norm() const noexcept {
  double sum = std::abs(coeffs_[0]);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) sum += 2.0 * std::abs(coeffs_[j]);
  return scale_ * sum;
}

TwoSidedKernel build_two_sided_kernel(double alpha, int n_mem, double h) {
  return TwoSidedKernel(alpha, n_mem, h);
}

void apply_frac_derivative_1d(std::span<const double> signal, const TwoSidedKernel& kernel,
                              std::span<double> out) {
  const std::size_t m = static_cast<std::size_t>(kernel.margin());
  if (signal.size() < 2 * m + 1) {
    throw InvalidArgument("signal of length " + std::to_string(signal.size()) +
                          " is shorter than the stencil support " +
                          std::to_string(2 * m + 1));
  }
  if (out.size() != signal.size() - 2 * m) {
    throw InvalidArgument("output length must equal the unpadded signal length");
  }
  const auto c = kernel.coeffs();
  const std::size_t r = static_cast<std::size_t>(kernel.radius());
  const double scale = kernel.scale();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double* s = signal.data() + i + m;
    double acc = c[0] * s[0];
    for (std::size_t j = 1; j <= r; ++j) acc += c[j] * (s[-static_cast<std::ptrdiff_t>(j)] + s[j]);
    out[i] = scale * acc;
  }
}

std::vector<double> apply_frac_derivative_1d(std::span<const double> signal,
                                             const TwoSidedKernel& kernel) {
  const std::size_t m = static_cast<std::size_t>(kernel.margin());
  if (signal.size() < 2 * m + 1) {
    throw InvalidArgument("signal of length " + std::to_string(signal.size()) +
                          " is shorter than the stencil support " +
                          std::to_string(2 * m + 1));
  }
  std::vector<double> out(signal.size() - 2 * m);
  apply_frac_derivative_1d(signal, kernel, out);
  return out;
}

double short_memory_bound(double sup_f, double mem_len, double alpha) {
  if (!(sup_f >= 0.0)) throw InvalidArgument("sup |f| must be non-negative");
  if (!(mem_len > 0.0)) throw InvalidArgument("memory length must be positive");
  if (!(alpha > 0.0)) throw InvalidArgument("order must be positive");
  if (is_integer(alpha)) {
    throw InvalidArgument("short-memory bound is undefined at integer order (Gamma(1-alpha) pole)");
  }
  return sup_f * std::pow(mem_len, -alpha) / std::abs(std::tgamma(1.0 - alpha));
}

double amplitude_response(double alpha, double omega) {
  if (!(omega >= 0.0)) throw InvalidArgument("frequency must be non-negative");
  return std::pow(omega, alpha);
}

void write_kernel_dump(std::ostream& os, const TwoSidedKernel& kernel) {
  os << "# alpha=" << detail::format_shortest(kernel.alpha()) << " N=" << kernel.n_mem()
     << " h=" << detail::format_shortest(kernel.h()) << '\n';
  for (double c : kernel.coeffs()) os << detail::format_17g(c) << '\n';
}

void write_gl_dump(std::ostream& os, const GLKernel& kernel) {
  os << "# gl alpha=" << detail::format_shortest(kernel.alpha) << " count=" << kernel.size()
     << '\n';
  for (double w : kernel.weights) os << detail::format_17g(w) << '\n';
}

KernelDump read_kernel_dump(std::istream& is) {
  KernelDump dump;
  std::string line;
  std::size_t offset = 0;
  if (!std::getline(is, line)) throw ParseError("empty kernel dump", 0);
  {
    std::istringstream header(line);
    std::string hash, a, n, h;
    header >> hash >> a >> n >> h;
    auto value = [&](const std::string& field, const std::string& key) {
      if (field.rfind(key, 0) != 0) throw ParseError("expected '" + key + "' in header", 0);
      return field.substr(key.size());
    };
    if (hash != "#") throw ParseError("kernel dump header must start with '#'", 0);
    try {
      dump.alpha = std::stod(value(a, "alpha="));
      dump.n_mem = std::stoi(value(n, "N="));
      dump.h = std::stod(value(h, "h="));
    } catch (const std::logic_error&) {
      throw ParseError("unreadable kernel dump header", 0);
    }
  }
  offset += line.size() + 1;
  while (std::getline(is, line)) {
    if (!line.empty()) {
      std::size_t used = 0;
      try {
        dump.coeffs.push_back(std::stod(line, &used));
      } catch (const std::logic_error&) {
        throw ParseError("bad coefficient '" + line + "'", offset);
      }
      if (used != line.size()) throw ParseError("trailing text after coefficient", offset + used);
    }
    offset += line.size() + 1;
  }
  if (dump.n_mem < 1 || dump.coeffs.size() != static_cast<std::size_t>(dump.n_mem - 1)) {
    throw ParseError("coefficient count does not match N - 1", offset);
  }
  return dump;
}

}  // namespace fracdiff
