#pragma once

#include <string>
#include <string_view>

#include "fracdiff/grid.hpp"

namespace fracdiff::app {

enum class PgmMode { binary /* P5 */, ascii /* P2 */ };

/// Parses a P2 or P5 image with maxval <= 255. Pixel values are kept as
/// stored (no rescaling by maxval). Throws ParseError with the byte offset.
Grid parse_pgm(std::string_view bytes);
Grid read_pgm(const std::string& path);

/// Values are rounded half away from zero and clamped to [0, 255].
std::string encode_pgm(const Grid& grid, PgmMode mode = PgmMode::binary);
void write_pgm(const Grid& grid, const std::string& path, PgmMode mode = PgmMode::binary);

}  // namespace fracdiff::app
