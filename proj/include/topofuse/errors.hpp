#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topofuse {

/// Raised when an argument violates an operation's precondition.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for vertex or element indices outside the valid range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Raised when tensor shapes do not chain through a network.
class ShapeError : public std::runtime_error {
 public:
  ShapeError(std::size_t layer_position, const std::string& what)
      : std::runtime_error("layer " + std::to_string(layer_position) + ": " + what),
        layer_position_(layer_position) {}

  std::size_t layer_position() const noexcept { return layer_position_; }

 private:
  std::size_t layer_position_;
};

/// Raised when training diverges.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(int epoch, const std::string& what)
      : std::runtime_error("epoch " + std::to_string(epoch) + ": " + what), epoch_(epoch) {}

  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

/// Raised when a file cannot be read or written. Carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Raised when a serialized artifact (model file) is malformed or incompatible.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace topofuse
