// fracdiff command-line entry point.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracdiff/app/commands.hpp"

namespace {

using fracdiff::app::Command;
using fracdiff::app::RunManifest;

struct SolverFlags {
  std::optional<double> k_fixed;
  std::optional<double> k_percentile;
  std::string edge = "rational";
  std::string ssim = "global";
  std::string crop;
  bool ascii = false;
};

void add_solver_flags(CLI::App* cmd, RunManifest& m, SolverFlags& f) {
  cmd->add_option("--alpha", m.solver.alpha, "Flux order in (1.25, 1.75)")->capture_default_str();
  cmd->add_option("--beta", m.solver.beta, "Edge-detection order in (1, 2)")->capture_default_str();
  cmd->add_option("--dt", m.solver.dt, "Time step")->capture_default_str();
  cmd->add_option("--steps", m.solver.n_steps, "Number of explicit steps")->capture_default_str();
  cmd->add_option("--mem", m.solver.n_mem, "Memory length N (>= 5)")->capture_default_str();
  cmd->add_option("--edge", f.edge, "Edge-stopping form")
      ->check(CLI::IsMember({"rational", "exponential"}))
      ->capture_default_str();
  cmd->add_option("--gamma", m.solver.edge.gamma, "Edge-stopping exponent")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  auto* k = cmd->add_option("--K", f.k_fixed, "Fixed edge threshold K");
  auto* kp = cmd->add_option("--K-percentile", f.k_percentile,
                             "Re-estimate K each step as this percentile of |grad^beta u| (default 90)");
  k->excludes(kp);
  kp->excludes(k);
  cmd->add_option("--ssim", f.ssim, "SSIM form")
      ->check(CLI::IsMember({"global", "windowed"}))
      ->capture_default_str();
  cmd->add_option("--crop", f.crop, "Crop rectangle x,y,w,h applied to every input");
  cmd->add_option("--threads", m.solver.exec.workers, "Row-parallel workers per operator pass")
      ->capture_default_str();
  cmd->add_flag("--ascii", f.ascii, "Write P2 instead of P5");
}

void apply_solver_flags(RunManifest& m, const SolverFlags& f) {
  m.solver.edge.form = f.edge == "exponential" ? fracdiff::EdgeForm::exponential
                                               : fracdiff::EdgeForm::rational;
  if (f.k_fixed) {
    m.solver.edge.k_policy = fracdiff::KPolicy::fixed;
    m.solver.edge.k_threshold = *f.k_fixed;
  } else if (f.k_percentile) {
    m.solver.edge.k_policy = fracdiff::KPolicy::percentile;
    m.solver.edge.percentile = *f.k_percentile;
  }
  m.ssim_mode = f.ssim == "windowed" ? fracdiff::SsimMode::windowed : fracdiff::SsimMode::global;
  m.pgm_mode = f.ascii ? fracdiff::app::PgmMode::ascii : fracdiff::app::PgmMode::binary;
  if (!f.crop.empty()) {
    fracdiff::app::CropRect r;
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream in(f.crop);
    if (!(in >> r.x >> c1 >> r.y >> c2 >> r.width >> c3 >> r.height) || c1 != ',' || c2 != ',' ||
        c3 != ',') {
      throw CLI::ValidationError("--crop", "expected x,y,w,h");
    }
    m.crop = r;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sided fractional anisotropic diffusion denoiser"};
  app.require_subcommand(1);

  RunManifest m;
  SolverFlags flags;
  std::optional<double> sigma;
  std::string reference;

  auto* denoise = app.add_subcommand("denoise", "Denoise one PGM image");
  denoise->add_option("input", m.inputs, "Input PGM")->required();
  denoise->add_option("--sigma", sigma, "Add seeded Gaussian noise first and score against the input");
  denoise->add_option("--reference", reference, "Clean image to score against");
  denoise->add_option("--seed", m.seed, "Noise seed")->capture_default_str();
  denoise->add_option("--out", m.out_dir, "Output directory")->capture_default_str();
  denoise->add_option("--csv", m.csv_path, "Append a result row to this CSV");
  add_solver_flags(denoise, m, flags);

  auto* bench = app.add_subcommand("benchmark", "Compare filters, PM and the fractional solver");
  bench->add_option("inputs", m.inputs, "Clean PGM images")->required();
  bench->add_option("--sigma", m.sigmas, "Noise levels")->capture_default_str();
  bench->add_option("--seed", m.seed, "Noise seed")->capture_default_str();
  bench->add_option("--out", m.out_dir, "Output directory")->capture_default_str();
  bench->add_option("--csv", m.csv_path, "Result CSV (default <out>/benchmark.csv)");
  bench->add_option("--pm-dt", m.pm_dt, "Perona-Malik time step")->capture_default_str();
  bench->add_option("--pm-steps", m.pm_steps, "Perona-Malik step budget")->capture_default_str();
  bench->add_option("--workers", m.workers, "Concurrent (image, sigma) cells")->capture_default_str();
  bool no_images = false;
  bench->add_flag("--no-images", no_images, "Skip writing best-step images");
  add_solver_flags(bench, m, flags);

  auto* feature = app.add_subcommand("feature-map", "Write |grad u| and |grad^beta u| maps");
  feature->add_option("inputs", m.inputs, "Input PGM images")->required();
  feature->add_option("--out", m.out_dir, "Output directory")->capture_default_str();
  add_solver_flags(feature, m, flags);

  auto* response = app.add_subcommand("response", "Emit omega^alpha amplitude curves as CSV");
  response->add_option("--alphas", m.response_alphas, "Orders")->capture_default_str();
  response->add_option("--points", m.response_points, "Log-spaced samples over [0.01, 10]")
      ->capture_default_str();
  response->add_option("--csv", m.csv_path, "Output CSV (default stdout)");

  auto* kernel = app.add_subcommand("kernel", "Dump two-sided (and optionally GL) coefficients");
  kernel->add_option("--alpha", m.kernel_alpha, "Order in (0, 2]")->capture_default_str();
  kernel->add_option("--mem", m.solver.n_mem, "Memory length N (>= 5)")->capture_default_str();
  kernel->add_option("--step", m.solver.h, "Spatial step h")->capture_default_str();
  kernel->add_option("--gl", m.gl_count, "Also dump this many one-sided GL weights");
  kernel->add_option("--out", m.output_file, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
    apply_solver_flags(m, flags);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? fracdiff::app::kExitOk : fracdiff::app::kExitUsage;
  }

  if (*denoise) {
    m.command = Command::denoise;
    if (sigma) m.sigmas = {*sigma};
    if (!reference.empty()) m.reference = reference;
  } else if (*bench) {
    m.command = Command::benchmark;
    if (m.sigmas.empty()) m.sigmas = {10, 15, 20, 25};
    m.gaussian_sweep = fracdiff::app::default_gaussian_sweep();
    m.median_sweep = fracdiff::app::default_median_sweep();
    m.write_images = !no_images;
  } else if (*feature) {
    m.command = Command::feature_map;
  } else if (*response) {
    m.command = Command::response;
  } else {
    m.command = Command::kernel;
  }
  return fracdiff::app::run(m);
}
