#include "fracdiff/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "fracdiff/error.hpp"

namespace fracdiff {
namespace {

void check_finite(const Grid& u, int step) {
  for (int y = 0; y < u.height(); ++y) {
    for (int x = 0; x < u.width(); ++x) {
      if (!std::isfinite(u.at(x, y))) {
        std::ostringstream msg;
        msg << "non-finite value " << u.at(x, y) << " at pixel (" << x << ", " << y
            << ") after step " << step;
        throw NumericalFailure(msg.str(), x, y, step);
      }
    }
  }
}

}  // namespace

void EdgeStopping::validate() const {
  if (gamma != 1 && gamma != 2) throw InvalidArgument("edge-stopping exponent must be 1 or 2");
  if (form == EdgeForm::blocking) return;
  if (k_policy == KPolicy::fixed && !(k_threshold > 0.0)) {
    throw InvalidArgument("edge-stopping threshold K must be positive");
  }
  if (k_policy == KPolicy::percentile && !(percentile > 0.0 && percentile <= 100.0)) {
    throw InvalidArgument("K percentile must lie in (0, 100]");
  }
}

double edge_stop(double r, const EdgeStopping& cfg) {
  if (!(r >= 0.0)) throw InvalidArgument("edge-stopping argument must be non-negative");
  if (cfg.form == EdgeForm::blocking) return 0.0;
  if (!(cfg.k_threshold > 0.0)) throw InvalidArgument("edge-stopping threshold K must be positive");
  const double t = r / cfg.k_threshold;
  const double p = cfg.gamma == 1 ? t : t * t;
  return cfg.form == EdgeForm::rational ? 1.0 / (1.0 + p) : std::exp(-p);
}

double nonzero_percentile(const Grid& magnitudes, double p) {
  std::vector<double> nz;
  nz.reserve(magnitudes.size());
  for (double v : magnitudes.values())
    if (v != 0.0) nz.push_back(v);
  if (nz.empty()) return 1.0;
  const auto n = static_cast<double>(nz.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, nz.size());
  auto nth = nz.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(nz.begin(), nth, nz.end());
  return *nth;
}

double resolve_threshold(const EdgeStopping& cfg, const Grid& magnitudes) {
  if (cfg.k_policy == KPolicy::fixed) return cfg.k_threshold;
  return nonzero_percentile(magnitudes, cfg.percentile);
}

Grid edge_stop_map(const Grid& magnitudes, const EdgeStopping& cfg, double k) {
  EdgeStopping resolved = cfg;
  resolved.k_threshold = k;
  Grid g(magnitudes.width(), magnitudes.height(), 0.0, magnitudes.h());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = edge_stop(magnitudes[i], resolved);
  return g;
}

void SolverConfig::validate() const {
  if (!(alpha > 1.25 && alpha < 1.75)) throw InvalidArgument("alpha must lie in (1.25, 1.75)");
  if (!(beta > 1.0 && beta < 2.0)) throw InvalidArgument("beta must lie in (1, 2)");
  if (!(h > 0.0)) throw InvalidArgument("spatial step must be positive");
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  if (n_steps < 0) throw InvalidArgument("step count must be non-negative");
  if (n_mem < 5) throw InvalidArgument("memory length must be at least 5");
  if (exec.workers < 1) throw InvalidArgument("worker count must be positive");
  edge.validate();
}

SolverKernels::SolverKernels(const SolverConfig& cfg)
    : flux(cfg.alpha, cfg.n_mem, cfg.h), detect(cfg.beta, cfg.n_mem, cfg.h) {}

Grid diffusion_step(const Grid& u, const SolverConfig& cfg, const TwoSidedKernel& k_alpha,
                    const TwoSidedKernel& k_beta, int step) {
  cfg.validate();
  if (k_alpha.alpha() != cfg.alpha || k_beta.alpha() != cfg.beta ||
      k_alpha.n_mem() != cfg.n_mem || k_beta.n_mem() != cfg.n_mem) {
    throw InvalidArgument("kernels were not built from this solver configuration");
  }

  const Grid detect = gradient_magnitude(u, k_beta, cfg.exec);
  check_finite(detect, step);
  const double k = resolve_threshold(cfg.edge, detect);
  const Grid g = edge_stop_map(detect, cfg.edge, k);

  VectorField flux = frac_gradient(u, k_alpha, cfg.exec);
  for (std::size_t i = 0; i < g.size(); ++i) {
    flux.fx[i] *= g[i];
    flux.fy[i] *= g[i];
  }
  const Grid div = frac_divergence(flux, k_alpha, cfg.exec);

  Grid out = u;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= cfg.dt * div[i];
  check_finite(out, step);
  return out;
}

Grid denoise(const Grid& u0, const SolverConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  if (cfg.n_steps == 0) return u0;
  const SolverKernels kernels(cfg);
  Grid u = u0;
  for (int n = 1; n <= cfg.n_steps; ++n) {
    u = diffusion_step(u, cfg, kernels.flux, kernels.detect, n);
    if (observer) observer(n, u);
  }
  return cfg.clamp_output ? clamp(std::move(u), 0.0, 255.0) : u;
}

Grid pm_baseline_step(const Grid& u, const EdgeStopping& edge, double dt, int step) {
  edge.validate();
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const int w = u.width();
  const int h = u.height();
  const Grid detect = central_gradient_magnitude(u);
  check_finite(detect, step);
  const Grid g = edge_stop_map(detect, edge, resolve_threshold(edge, detect));

  const double rate = dt / (u.h() * u.h());
  Grid out(w, h, 0.0, u.h());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double c = u.at(x, y);
      const double gc = g.at(x, y);
      double flow = 0.0;
      auto edge_flux = [&](int nx, int ny) {
        nx = reflect_index(nx, w);
        ny = reflect_index(ny, h);
        flow += 0.5 * (gc + g.at(nx, ny)) * (u.at(nx, ny) - c);
      };
      edge_flux(x + 1, y);
      edge_flux(x - 1, y);
      edge_flux(x, y + 1);
      edge_flux(x, y - 1);
      out.at(x, y) = c + rate * flow;
    }
  }
  check_finite(out, step);
  return out;
}

Grid pm_denoise(const Grid& u0, const EdgeStopping& edge, double dt, int n_steps,
                bool clamp_output, const StepObserver& observer) {
  if (n_steps < 0) throw InvalidArgument("step count must be non-negative");
  if (n_steps == 0) return u0;
  Grid u = u0;
  for (int n = 1; n <= n_steps; ++n) {
    u = pm_baseline_step(u, edge, dt, n);
    if (observer) observer(n, u);
  }
  return clamp_output ? clamp(std::move(u), 0.0, 255.0) : u;
}

}  // namespace fracdiff
