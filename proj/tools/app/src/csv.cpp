#include "fracdiff/app/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fracdiff/error.hpp"

namespace fracdiff::app {
namespace {

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string shortest(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string format_row(const ResultRow& row) {
  return csv_field(row.image) + ',' + csv_field(row.method) + ',' + shortest(row.sigma) + ',' +
         csv_field(row.param_note) + ',' + std::to_string(row.best_step) + ',' +
         fixed(row.quality.psnr_db, 4) + ',' + fixed(row.quality.ssim, 6) + ',' +
         fixed(row.quality.mse, 4);
}

void append_rows(const std::string& path, const std::vector<ResultRow>& rows) {
  std::error_code ec;
  const bool need_header =
      !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream file(path, std::ios::app);
  if (!file) throw IoError("cannot open '" + path + "' for appending");
  if (need_header) file << kResultHeader << '\n';
  for (const auto& row : rows) file << format_row(row) << '\n';
  if (!file) throw IoError("error writing '" + path + "'");
}

}  // namespace fracdiff::app
