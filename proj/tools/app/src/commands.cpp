#include "fracdiff/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "fracdiff/error.hpp"
#include "fracdiff/field.hpp"
#include "fracdiff/fracops.hpp"

namespace fs = std::filesystem;

namespace fracdiff::app {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string k_note(const EdgeStopping& edge) {
  if (edge.form == EdgeForm::blocking) return "g=0";
  const std::string form = edge.form == EdgeForm::rational ? "rational" : "exponential";
  const std::string k = edge.k_policy == KPolicy::fixed ? "K=" + num(edge.k_threshold)
                                                        : "K=p" + num(edge.percentile);
  return form + ";gamma=" + std::to_string(edge.gamma) + ";" + k;
}

std::string filter_note(const FilterSpec& spec) {
  if (spec.kind == FilterKind::gaussian) {
    return "radius=" + std::to_string(spec.radius) + ";sigma=" + num(spec.sigma);
  }
  return "radius=" + std::to_string(spec.radius);
}

std::string method_note(const SolverConfig& cfg) {
  return "alpha=" + num(cfg.alpha) + ";beta=" + num(cfg.beta) + ";dt=" + num(cfg.dt) +
         ";N=" + std::to_string(cfg.n_mem) + ";" + k_note(cfg.edge) +
         ";steps<=" + std::to_string(cfg.n_steps);
}

Grid load_input(const RunManifest& manifest, const std::string& path) {
  Grid u = read_pgm(path);
  if (manifest.crop) {
    const auto& c = *manifest.crop;
    u = crop(u, c.x, c.y, c.width, c.height);
  }
  if (u.h() != manifest.solver.h) {
    u = Grid(u.width(), u.height(), {u.values().begin(), u.values().end()}, manifest.solver.h);
  }
  return u;
}

void require_readable(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError("input '" + path + "' is not a readable file");
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("cannot open '" + path + "' for reading");
}

// Tracks the PSNR-best clamped iterate of an iterative method.
struct BestTracker {
  const Grid& clean;
  SsimMode mode;
  MethodResult result;

  void offer(int step, const Grid& u) {
    Grid shown = clamp(u, 0.0, 255.0);
    const double m = mse(shown, clean);
    if (result.best.empty() || m < result.quality.mse) {
      result.best_step = step;
      result.quality = {m, psnr_from_mse(m), ssim(shown, clean, mode)};
      result.best = std::move(shown);
    }
  }
};

MethodResult best_filter(const Grid& noisy, const Grid& clean, const std::vector<FilterSpec>& sweep,
                         const std::string& name, SsimMode mode) {
  MethodResult best;
  best.method = name;
  for (const auto& spec : sweep) {
    Grid out = clamp(apply_filter(noisy, spec), 0.0, 255.0);
    const double m = mse(out, clean);
    if (best.best.empty() || m < best.quality.mse) {
      best.param_note = filter_note(spec);
      best.quality = {m, psnr_from_mse(m), ssim(out, clean, mode)};
      best.best = std::move(out);
    }
  }
  return best;
}

CellResult run_cell(const RunManifest& manifest, const std::string& stem, const Grid& clean,
                    double sigma) {
  CellResult cell;
  cell.image = stem;
  cell.sigma = sigma;
  cell.noisy = add_gaussian_noise(clean, {sigma, manifest.seed});
  const SsimMode mode = manifest.ssim_mode;

  MethodResult noisy;
  noisy.method = "noisy";
  noisy.best = clamp(cell.noisy, 0.0, 255.0);
  noisy.quality = evaluate(noisy.best, clean, mode);
  cell.methods.push_back(std::move(noisy));

  if (!manifest.gaussian_sweep.empty()) {
    cell.methods.push_back(best_filter(cell.noisy, clean, manifest.gaussian_sweep, "gaussian", mode));
  }
  if (!manifest.median_sweep.empty()) {
    cell.methods.push_back(best_filter(cell.noisy, clean, manifest.median_sweep, "median", mode));
  }

  BestTracker pm{clean, mode, {}};
  pm.result.method = "pm";
  pm.result.param_note = "dt=" + num(manifest.pm_dt) + ";" + k_note(manifest.solver.edge) +
                         ";steps<=" + std::to_string(manifest.pm_steps);
  pm_denoise(cell.noisy, manifest.solver.edge, manifest.pm_dt, manifest.pm_steps, false,
             [&](int step, const Grid& u) { pm.offer(step, u); });
  cell.methods.push_back(std::move(pm.result));

  BestTracker proposed{clean, mode, {}};
  proposed.result.method = "proposed";
  proposed.result.param_note = method_note(manifest.solver);
  SolverConfig cfg = manifest.solver;
  cfg.clamp_output = false;
  denoise(cell.noisy, cfg, [&](int step, const Grid& u) { proposed.offer(step, u); });
  if (proposed.result.best.empty()) proposed.offer(0, cell.noisy);
  cell.methods.push_back(std::move(proposed.result));
  return cell;
}

std::string sigma_tag(double sigma) { return num(sigma); }

}  // namespace

std::vector<FilterSpec> default_gaussian_sweep() {
  std::vector<FilterSpec> sweep;
  for (int r : {1, 2, 3})
    for (double s : {0.5, 1.0, 1.5, 2.0}) sweep.push_back(FilterSpec::gaussian(r, s));
  return sweep;
}

std::vector<FilterSpec> default_median_sweep() {
  return {FilterSpec::median(1), FilterSpec::median(2), FilterSpec::median(3)};
}

const MethodResult& CellResult::method(const std::string& name) const {
  for (const auto& m : methods)
    if (m.method == name) return m;
  throw InvalidArgument("no method '" + name + "' in benchmark cell");
}

std::string file_stem(const std::string& path) { return fs::path(path).stem().string(); }

void validate(const RunManifest& manifest) {
  const bool needs_images = manifest.command == Command::denoise ||
                            manifest.command == Command::benchmark ||
                            manifest.command == Command::feature_map;
  if (needs_images) {
    if (manifest.inputs.empty()) throw InvalidArgument("no input images given");
    if (manifest.command == Command::denoise && manifest.inputs.size() != 1) {
      throw InvalidArgument("denoise takes exactly one input image");
    }
    for (const auto& path : manifest.inputs) require_readable(path);
    if (manifest.reference) require_readable(*manifest.reference);
    manifest.solver.validate();
  }
  for (double s : manifest.sigmas)
    if (!(s >= 0.0)) throw InvalidArgument("noise sigma must be non-negative");
  if (manifest.command == Command::benchmark && manifest.sigmas.empty()) {
    throw InvalidArgument("benchmark needs at least one noise sigma");
  }
  if (manifest.workers < 1) throw InvalidArgument("worker count must be positive");
  if (!(manifest.pm_dt > 0.0)) throw InvalidArgument("PM time step must be positive");
  if (manifest.pm_steps < 1) throw InvalidArgument("PM step count must be positive");
  if (manifest.crop) {
    const auto& c = *manifest.crop;
    if (c.x < 0 || c.y < 0 || c.width <= 0 || c.height <= 0) {
      throw InvalidArgument("crop rectangle must have a non-negative origin and positive size");
    }
  }
  if (manifest.command == Command::kernel) {
    if (!(manifest.kernel_alpha > 0.0 && manifest.kernel_alpha <= 2.0)) {
      throw InvalidArgument("kernel order must lie in (0, 2]");
    }
    if (manifest.solver.n_mem < 5) throw InvalidArgument("memory length must be at least 5");
    if (manifest.gl_count < 0) throw InvalidArgument("GL count must be non-negative");
  }
  if (manifest.command == Command::response) {
    if (manifest.response_alphas.empty()) throw InvalidArgument("no orders given");
    for (double a : manifest.response_alphas)
      if (!(a > 0.0)) throw InvalidArgument("orders must be positive");
    if (manifest.response_points < 2) throw InvalidArgument("need at least 2 frequency samples");
  }
  const bool writes_dir = needs_images;
  if (writes_dir) {
    std::error_code ec;
    fs::create_directories(manifest.out_dir, ec);
    if (!fs::is_directory(manifest.out_dir, ec)) {
      throw IoError("output directory '" + manifest.out_dir + "' is not usable");
    }
  }
}

std::vector<CellResult> run_benchmark(const RunManifest& manifest) {
  std::vector<std::pair<std::string, Grid>> images;
  for (const auto& path : manifest.inputs) images.emplace_back(file_stem(path), load_input(manifest, path));

  struct Job {
    std::size_t image;
    double sigma;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (double s : manifest.sigmas) jobs.push_back({i, s});

  std::vector<CellResult> cells(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const int workers = std::min<int>(manifest.workers, static_cast<int>(jobs.size()));
  std::vector<std::thread> threads;
  for (int w = 0; w < std::max(workers, 1); ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t j = static_cast<std::size_t>(w); j < jobs.size();
           j += static_cast<std::size_t>(std::max(workers, 1))) {
        try {
          const auto& [stem, clean] = images[jobs[j].image];
          cells[j] = run_cell(manifest, stem, clean, jobs[j].sigma);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return cells;
}

std::vector<ResultRow> to_rows(const std::vector<CellResult>& cells) {
  std::vector<ResultRow> rows;
  for (const auto& cell : cells)
    for (const auto& m : cell.methods)
      rows.push_back({cell.image, m.method, cell.sigma, m.param_note, m.best_step, m.quality});
  return rows;
}

void write_benchmark_table(std::ostream& os, const std::vector<CellResult>& cells, double sigma) {
  std::vector<std::string> methods;
  for (const auto& cell : cells) {
    if (cell.sigma != sigma) continue;
    for (const auto& m : cell.methods)
      if (std::find(methods.begin(), methods.end(), m.method) == methods.end()) {
        methods.push_back(m.method);
      }
  }
  os << "image,index";
  for (const auto& m : methods) os << ',' << m;
  os << '\n';
  char buf[64];
  for (const auto& cell : cells) {
    if (cell.sigma != sigma) continue;
    for (const bool is_psnr : {true, false}) {
      os << csv_field(cell.image) << ',' << (is_psnr ? "PSNR" : "SSIM");
      for (const auto& name : methods) {
        const auto& q = cell.method(name).quality;
        std::snprintf(buf, sizeof buf, is_psnr ? "%.2f" : "%.4f", is_psnr ? q.psnr_db : q.ssim);
        os << ',' << buf;
      }
      os << '\n';
    }
  }
}

int cmd_denoise(const RunManifest& manifest) {
  validate(manifest);
  const std::string& path = manifest.inputs.front();
  const std::string stem = file_stem(path);
  const Grid input = load_input(manifest, path);

  std::optional<Grid> reference;
  Grid start = input;
  const double sigma = manifest.sigmas.empty() ? 0.0 : manifest.sigmas.front();
  if (sigma > 0.0) {
    reference = input;
    start = add_gaussian_noise(input, {sigma, manifest.seed});
    write_pgm(start, (fs::path(manifest.out_dir) / (stem + "_noisy.pgm")).string(), manifest.pgm_mode);
  } else if (manifest.reference) {
    reference = load_input(manifest, *manifest.reference);
  }

  const Grid result = denoise(start, manifest.solver);
  const auto out_path = (fs::path(manifest.out_dir) / (stem + "_denoised.pgm")).string();
  write_pgm(result, out_path, manifest.pgm_mode);
  std::cout << "wrote " << out_path << '\n';

  if (reference) {
    const QualityReport q = evaluate(result, *reference, manifest.ssim_mode);
    std::cout << "psnr_db=" << q.psnr_db << " ssim=" << q.ssim << " mse=" << q.mse << '\n';
    if (!manifest.csv_path.empty()) {
      append_rows(manifest.csv_path, {{stem, "proposed", sigma, method_note(manifest.solver),
                                       manifest.solver.n_steps, q}});
    }
  }
  return kExitOk;
}

int cmd_benchmark(const RunManifest& manifest) {
  validate(manifest);
  const auto cells = run_benchmark(manifest);
  const fs::path out(manifest.out_dir);

  const std::string csv =
      manifest.csv_path.empty() ? (out / "benchmark.csv").string() : manifest.csv_path;
  append_rows(csv, to_rows(cells));

  std::vector<double> sigmas;
  for (const auto& cell : cells)
    if (std::find(sigmas.begin(), sigmas.end(), cell.sigma) == sigmas.end()) sigmas.push_back(cell.sigma);
  for (double s : sigmas) {
    const auto path = out / ("table_sigma" + sigma_tag(s) + ".csv");
    std::ofstream table(path);
    if (!table) throw IoError("cannot open '" + path.string() + "' for writing");
    write_benchmark_table(table, cells, s);
    if (!table) throw IoError("error writing '" + path.string() + "'");
  }

  if (manifest.write_images) {
    for (const auto& cell : cells)
      for (const auto& m : cell.methods) {
        const auto name = cell.image + "_s" + sigma_tag(cell.sigma) + "_" + m.method + ".pgm";
        write_pgm(m.best, (out / name).string(), manifest.pgm_mode);
      }
  }

  for (const auto& cell : cells) {
    std::cout << cell.image << " sigma=" << cell.sigma << '\n';
    for (const auto& m : cell.methods) {
      char line[96];
      std::snprintf(line, sizeof line, "  %-9s psnr=%8.4f ssim=%.4f step=%d ", m.method.c_str(),
                    m.quality.psnr_db, m.quality.ssim, m.best_step);
      std::cout << line << m.param_note << '\n';
    }
  }
  std::cout.flush();
  return kExitOk;
}

Grid normalize_to_8bit(const Grid& u) {
  const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
  const double min = *lo;
  const double range = *hi - *lo;
  Grid out(u.width(), u.height(), 0.0, u.h());
  if (range <= 0.0) return out;
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = 255.0 * (u[i] - min) / range;
  return out;
}

int cmd_feature_map(const RunManifest& manifest) {
  validate(manifest);
  const TwoSidedKernel kernel(manifest.solver.beta, manifest.solver.n_mem, manifest.solver.h);
  for (const auto& path : manifest.inputs) {
    const Grid u = load_input(manifest, path);
    const std::string stem = file_stem(path);
    const fs::path out(manifest.out_dir);
    const auto integer_path = (out / (stem + "_grad.pgm")).string();
    const auto frac_path = (out / (stem + "_fracgrad_b" + num(manifest.solver.beta) + ".pgm")).string();
    write_pgm(normalize_to_8bit(central_gradient_magnitude(u)), integer_path, manifest.pgm_mode);
    write_pgm(normalize_to_8bit(gradient_magnitude(u, kernel, manifest.solver.exec)), frac_path,
              manifest.pgm_mode);
    std::cout << "wrote " << integer_path << "\nwrote " << frac_path << '\n';
  }
  return kExitOk;
}

int cmd_response(const RunManifest& manifest) {
  validate(manifest);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!manifest.csv_path.empty()) {
    file.open(manifest.csv_path, std::ios::trunc);
    if (!file) throw IoError("cannot open '" + manifest.csv_path + "' for writing");
    os = &file;
  }
  const int n = manifest.response_points;
  const double lo = std::log10(0.01);
  const double hi = std::log10(10.0);
  *os << "alpha,omega,response\n";
  char buf[96];
  for (double alpha : manifest.response_alphas) {
    for (int i = 0; i < n; ++i) {
      const double omega = std::pow(10.0, lo + (hi - lo) * i / (n - 1));
      std::snprintf(buf, sizeof buf, "%g,%.10g,%.10g\n", alpha, omega, amplitude_response(alpha, omega));
      *os << buf;
    }
  }
  if (!*os) throw IoError("error writing frequency response");
  return kExitOk;
}

int cmd_kernel(const RunManifest& manifest) {
  validate(manifest);
  const TwoSidedKernel kernel(manifest.kernel_alpha, manifest.solver.n_mem, manifest.solver.h);
  std::ostringstream text;
  write_kernel_dump(text, kernel);
  if (manifest.gl_count > 0) {
    write_gl_dump(text, gl_coefficients(manifest.kernel_alpha, static_cast<std::size_t>(manifest.gl_count)));
  }
  if (manifest.output_file.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream file(manifest.output_file, std::ios::trunc);
    if (!file || !(file << text.str())) {
      throw IoError("cannot write '" + manifest.output_file + "'");
    }
  }
  return kExitOk;
}

int run(const RunManifest& manifest) {
  try {
    switch (manifest.command) {
      case Command::denoise: return cmd_denoise(manifest);
      case Command::benchmark: return cmd_benchmark(manifest);
      case Command::feature_map: return cmd_feature_map(manifest);
      case Command::response: return cmd_response(manifest);
      case Command::kernel: return cmd_kernel(manifest);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace fracdiff::app
