#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracdiff {

/// Bad caller input: out-of-range parameters, mismatched dimensions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two independent derivations of the same quantity disagree.
class ConsistencyError : public std::logic_error {
 public:
  ConsistencyError(const std::string& what, std::size_t index)
      : std::logic_error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A solver produced a NaN or infinity.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, int x, int y, int step)
      : std::runtime_error(what), x_(x), y_(y), step_(step) {}

  int x() const noexcept { return x_; }
  int y() const noexcept { return y_; }
  int step() const noexcept { return step_; }

 private:
  int x_;
  int y_;
  int step_;
};

/// Malformed input file. `offset` is the byte position where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracdiff
