#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

// Grünwald-Letnikov machinery: one-sided coefficients, the second-order
// shifted (G2) sums, and the symmetric two-sided stencil built from them.

namespace fracdiff {

/// One-sided Grünwald-Letnikov weights w_k = (-1)^k binom(alpha, k).
struct GLKernel {
  double alpha = 0.0;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Weights w_0..w_{count-1} from the recurrence w_0 = 1,
/// w_k = w_{k-1} (k - 1 - alpha) / k.
GLKernel gl_coefficients(double alpha, std::size_t count);

enum class Side { left, right };

/// G2 approximation of the one-sided derivative, truncated to `n_terms`
/// history terms:
///
///   h^-a sum_{k<n} w_k { f(x-kh) + a/4 (f(x-(k-1)h) - f(x-(k+1)h))
///                        + a^2/8 (f(x-(k-1)h) - 2 f(x-kh) + f(x-(k+1)h)) }
///
/// with x-kh replaced by x+kh for the right side. Samples outside the signal
/// are taken as zero, so the output has the input's length.
std::vector<double> one_sided_g2(std::span<const double> signal, double alpha,
                                 int n_terms, Side side, double h = 1.0);

/// Symmetric stencil {C_0, ..., C_{N-2}} of the truncated two-sided
/// derivative, (left G2 + right G2) / 2, for memory length N.
///
/// The one-sided sums behind a kernel of memory N carry N - 2 history terms;
/// that is the truncation under which the closed-form coefficients are exact.
/// Construction evaluates the closed forms and cross-checks every entry
/// against the G2 impulse response, throwing ConsistencyError on mismatch.
class TwoSidedKernel {
 public:
  TwoSidedKernel(double alpha, int n_mem, double h = 1.0);

  double alpha() const noexcept { return alpha_; }
  int n_mem() const noexcept { return n_mem_; }
  double h() const noexcept { return h_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// h^-alpha.
  double scale() const noexcept { return scale_; }
  /// Nonzero reach of the stencil, N - 2.
  int radius() const noexcept { return n_mem_ - 2; }
  /// Padding each side of a signal must carry for apply_frac_derivative_1d.
  int margin() const noexcept { return n_mem_ - 1; }
  /// Number of G2 history terms per side.
  int g2_terms() const noexcept { return n_mem_ - 2; }

  /// Full stencil of 2*radius()+1 weights (unscaled), offset -radius first.
  std::vector<double> stencil() const;
  /// Sum of the scaled stencil: the operator's response to a constant.
  double dc_response() const noexcept;
  /// Sum of |scaled stencil weights|; bounds the operator's infinity norm.
  double l1_norm() const noexcept;

 private:
  double alpha_;
  int n_mem_;
  double h_;
  double scale_;
  std::vector<double> coeffs_;
};

TwoSidedKernel build_two_sided_kernel(double alpha, int n_mem, double h = 1.0);

/// C_0..C_{N-2} from the closed-form Gamma expressions. Non-integer alpha is
/// evaluated through log-Gamma; integer alpha uses the Gamma-ratio limits.
std::vector<double> closed_form_coefficients(double alpha, int n_mem);

/// C_0..C_{N-2} read off the averaged left/right G2 responses to a unit
/// impulse, each truncated to N - 2 terms.
std::vector<double> g2_impulse_coefficients(double alpha, int n_mem);

/// out[i] = h^-a (C_0 s[i+m] + sum_j C_j (s[i+m-j] + s[i+m+j])) with
/// m = kernel.margin(). `signal` carries m padded samples on each side, so
/// the output is signal.size() - 2m long.
std::vector<double> apply_frac_derivative_1d(std::span<const double> signal,
                                             const TwoSidedKernel& kernel);

/// Same, writing into `out` (size signal.size() - 2 * kernel.margin()).
void apply_frac_derivative_1d(std::span<const double> signal,
                              const TwoSidedKernel& kernel,
                              std::span<double> out);

/// Short Memory Principle error bound M a^-alpha / |Gamma(1 - alpha)|.
double short_memory_bound(double sup_f, double mem_len, double alpha);

/// |(i omega)^alpha| = omega^alpha.
double amplitude_response(double alpha, double omega);

/// Kernel dump: `# alpha=<a> N=<n> h=<h>` then C_0..C_{N-2}, one per line,
/// 17 significant digits.
void write_kernel_dump(std::ostream& os, const TwoSidedKernel& kernel);
/// GL dump: `# gl alpha=<a> count=<n>` then w_0..w_{n-1}.
void write_gl_dump(std::ostream& os, const GLKernel& kernel);

struct KernelDump {
  double alpha = 0.0;
  int n_mem = 0;
  double h = 0.0;
  std::vector<double> coeffs;
};

/// Inverse of write_kernel_dump; throws ParseError on malformed text.
KernelDump read_kernel_dump(std::istream& is);

}  // namespace fracdiff
