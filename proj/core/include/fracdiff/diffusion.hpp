#pragma once

#include <functional>
#include <optional>

#include "fracdiff/field.hpp"
#include "fracdiff/fracops.hpp"
#include "fracdiff/grid.hpp"

namespace fracdiff {

enum class EdgeForm {
  rational,     // 1 / (1 + (r/K)^gamma)
  exponential,  // exp(-(r/K)^gamma)
  blocking,     // g == 0, the K -> 0 limit; every grid is a fixed point
};

enum class KPolicy {
  fixed,       // use k_threshold as given
  percentile,  // K = nearest-rank percentile of the nonzero gradient magnitudes
};

struct EdgeStopping {
  EdgeForm form = EdgeForm::rational;
  double k_threshold = 1.0;
  int gamma = 2;
  KPolicy k_policy = KPolicy::percentile;
  double percentile = 90.0;

  void validate() const;
};

/// g(r) for the configured form, using cfg.k_threshold as K.
double edge_stop(double r, const EdgeStopping& cfg);

/// Nearest-rank p-th percentile of the nonzero entries of `magnitudes`.
/// Returns 1 when every entry is zero (K is then irrelevant since r == 0).
double nonzero_percentile(const Grid& magnitudes, double p);

/// K to use for a gradient-magnitude map under cfg's policy.
double resolve_threshold(const EdgeStopping& cfg, const Grid& magnitudes);

/// Pointwise g over a magnitude map with a resolved K.
Grid edge_stop_map(const Grid& magnitudes, const EdgeStopping& cfg, double k);

struct SolverConfig {
  double alpha = 1.67;  // flux order
  double beta = 1.55;   // edge-detection order
  double h = 1.0;
  double dt = 0.5;
  int n_mem = 15;
  int n_steps = 20;
  EdgeStopping edge{};
  bool clamp_output = true;
  Exec exec{};

  void validate() const;
};

/// Kernels for one solver configuration, built once and shared across steps.
struct SolverKernels {
  TwoSidedKernel flux;    // order alpha
  TwoSidedKernel detect;  // order beta

  explicit SolverKernels(const SolverConfig& cfg);
};

/// One explicit Euler step u - dt * div^a( g(|grad^b u|) grad^a u ).
/// Throws NumericalFailure naming the first non-finite pixel; `step` is only
/// used in that message.
Grid diffusion_step(const Grid& u, const SolverConfig& cfg,
                    const TwoSidedKernel& k_alpha, const TwoSidedKernel& k_beta,
                    int step = 0);

/// Called synchronously after each step with the 1-based step index and the
/// current (unclamped) iterate.
using StepObserver = std::function<void(int step, const Grid& u)>;

/// Runs cfg.n_steps diffusion steps from u0, clamping the result to [0, 255]
/// when cfg.clamp_output is set.
Grid denoise(const Grid& u0, const SolverConfig& cfg, const StepObserver& observer = {});

/// Classical Perona-Malik step u + dt * div(g(|grad u|) grad u): g is taken
/// per pixel from central-difference gradients, each half-edge flux uses the
/// mean g of its two pixels, and differences are nearest-neighbour. With
/// g == 1 this is the 5-point Laplacian update.
Grid pm_baseline_step(const Grid& u, const EdgeStopping& edge, double dt, int step = 0);

Grid pm_denoise(const Grid& u0, const EdgeStopping& edge, double dt, int n_steps,
                bool clamp_output = true, const StepObserver& observer = {});

}  // namespace fracdiff
