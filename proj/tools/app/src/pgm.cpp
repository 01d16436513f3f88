#include "fracdiff/app/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include "fracdiff/error.hpp"

namespace fracdiff::app {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Non-negative decimal integer preceded by whitespace/comments.
  long number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) throw ParseError(std::string(what) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= bytes_.size()) throw ParseError(std::string("truncated before ") + what, pos_);
      throw ParseError(std::string("expected ") + what, pos_);
    }
    return value;
  }

  void expect_single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw ParseError("expected whitespace after maxval", pos_);
    }
    ++pos_;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Grid parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw ParseError("not a P2/P5 PGM file", 0);
  }
  const bool binary = bytes[1] == '5';
  HeaderReader in(bytes.substr(2));
  const long width = in.number("width");
  const long height = in.number("height");
  const long maxval = in.number("maxval");
  if (width <= 0 || height <= 0) throw ParseError("image dimensions must be positive", 2 + in.offset());
  if (maxval <= 0 || maxval > 255) {
    throw ParseError("maxval " + std::to_string(maxval) + " is outside 1..255", 2 + in.offset());
  }

  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> data(count);
  if (binary) {
    in.expect_single_whitespace();
    const std::size_t start = 2 + in.offset();
    if (bytes.size() - start < count) {
      throw ParseError("truncated P5 payload: expected " + std::to_string(count) + " bytes, found " +
                           std::to_string(bytes.size() - start),
                       bytes.size());
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = static_cast<unsigned char>(bytes[start + i]);
      if (v > maxval) throw ParseError("pixel value exceeds maxval", start + i);
      data[i] = v;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = in.number("pixel value");
      if (v > maxval) throw ParseError("pixel value exceeds maxval", 2 + in.offset());
      data[i] = static_cast<double>(v);
    }
  }
  return Grid(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

Grid read_pgm(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for reading");
  const std::string bytes{std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
  if (file.bad()) throw IoError("error reading '" + path + "'");
  try {
    return parse_pgm(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.offset());
  }
}

std::string encode_pgm(const Grid& grid, PgmMode mode) {
  auto quantize = [](double v) {
    return static_cast<int>(std::clamp(std::round(v), 0.0, 255.0));
  };
  std::ostringstream os;
  os << (mode == PgmMode::binary ? "P5" : "P2") << '\n'
     << grid.width() << ' ' << grid.height() << "\n255\n";
  if (mode == PgmMode::binary) {
    std::string payload(grid.size(), '\0');
    for (std::size_t i = 0; i < grid.size(); ++i) payload[i] = static_cast<char>(quantize(grid[i]));
    os << payload;
  } else {
    for (int y = 0; y < grid.height(); ++y) {
      for (int x = 0; x < grid.width(); ++x) {
        if (x > 0) os << ((x % 16 == 0) ? '\n' : ' ');
        os << quantize(grid.at(x, y));
      }
      os << '\n';
    }
  }
  return os.str();
}

void write_pgm(const Grid& grid, const std::string& path, PgmMode mode) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  const std::string bytes = encode_pgm(grid, mode);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw IoError("error writing '" + path + "'");
}

}  // namespace fracdiff::app
