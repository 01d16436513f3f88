#pragma once

#include <string>
#include <vector>

#include "fracdiff/metrics.hpp"

namespace fracdiff::app {

/// One result row: image, method, sigma, param_note, best_step, psnr_db, ssim, mse.
struct ResultRow {
  std::string image;
  std::string method;
  double sigma = 0.0;
  std::string param_note;
  int best_step = 0;
  QualityReport quality;
};

inline constexpr const char* kResultHeader =
    "image,method,sigma,param_note,best_step,psnr_db,ssim,mse";

/// RFC 4180 quoting when the field holds a comma, quote or newline.
std::string csv_field(const std::string& s);
std::string format_row(const ResultRow& row);

/// Appends rows to `path`, writing the header first only if the file is
/// missing or empty. Throws IoError.
void append_rows(const std::string& path, const std::vector<ResultRow>& rows);

}  // namespace fracdiff::app
