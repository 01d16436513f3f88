#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracdiff/app/csv.hpp"
#include "fracdiff/app/pgm.hpp"
#include "fracdiff/baselines.hpp"
#include "fracdiff/diffusion.hpp"
#include "fracdiff/metrics.hpp"

namespace fracdiff::app {

enum class Command { denoise, benchmark, feature_map, kernel, response };

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitNumerical = 3,
};

struct CropRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

struct RunManifest {
  Command command = Command::denoise;
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::string csv_path;      // empty: no CSV (denoise/benchmark) or stdout (response)
  std::string output_file;   // kernel dump target; empty: stdout
  std::optional<std::string> reference;  // clean image for denoise scoring
  std::optional<CropRect> crop;

  SolverConfig solver{};
  SsimMode ssim_mode = SsimMode::global;
  PgmMode pgm_mode = PgmMode::binary;

  // Noise: denoise uses sigmas.front() when non-empty; benchmark runs each.
  std::vector<double> sigmas;
  std::uint64_t seed = 0;

  // Benchmark baselines.
  std::vector<FilterSpec> gaussian_sweep;
  std::vector<FilterSpec> median_sweep;
  double pm_dt = 0.25;
  int pm_steps = 50;
  int workers = 1;  // concurrent (image, sigma) cells
  bool write_images = true;

  // kernel / response
  double kernel_alpha = 1.67;
  int gl_count = 0;  // 0: skip the one-sided dump
  std::vector<double> response_alphas{0.5, 1.0, 1.5};
  int response_points = 200;
};

/// Defaults from the benchmark protocol: gaussian radius {1,2,3} x sigma
/// {0.5,1,1.5,2} and median radius {1,2,3}.
std::vector<FilterSpec> default_gaussian_sweep();
std::vector<FilterSpec> default_median_sweep();

/// Checks input paths and parameters before any computation. Throws
/// InvalidArgument (usage) or IoError (unreadable input, unusable out dir).
void validate(const RunManifest& manifest);

struct MethodResult {
  std::string method;
  std::string param_note;
  int best_step = 0;
  QualityReport quality;
  Grid best;  // clamped image that scored `quality`
};

struct CellResult {
  std::string image;  // file stem
  double sigma = 0.0;
  Grid noisy;
  std::vector<MethodResult> methods;  // noisy, gaussian, median, pm, proposed

  const MethodResult& method(const std::string& name) const;
};

/// Loads inputs (cropped when requested) and scores every method on every
/// (image, sigma) cell. Gaussian and median report the best sweep entry; PM
/// and the proposed solver report their PSNR-best step (ties keep the earliest).
/// Cells run on up to manifest.workers threads; results are in input order.
std::vector<CellResult> run_benchmark(const RunManifest& manifest);

/// Rows = image x {PSNR, SSIM}, columns = methods, one table per sigma.
void write_benchmark_table(std::ostream& os, const std::vector<CellResult>& cells, double sigma);

std::vector<ResultRow> to_rows(const std::vector<CellResult>& cells);

int cmd_denoise(const RunManifest& manifest);
int cmd_benchmark(const RunManifest& manifest);
int cmd_feature_map(const RunManifest& manifest);
int cmd_response(const RunManifest& manifest);
int cmd_kernel(const RunManifest& manifest);

/// Dispatches on manifest.command and maps exceptions to exit codes.
int run(const RunManifest& manifest);

/// Min-max normalization to [0, 255]; a constant map becomes all zeros.
Grid normalize_to_8bit(const Grid& u);

std::string file_stem(const std::string& path);

}  // namespace fracdiff::app
