#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace topofuse {

/// A single-channel 2-d grid of finite intensities stored row-major.
///
/// Construction validates the invariants (non-zero extent, matching value
/// count, finite values), so every live ImageTensor is well formed.
class ImageTensor {
 public:
  ImageTensor(std::size_t height, std::size_t width, std::vector<double> values);

  /// Convenience for 1-d signals, represented as a 1 x N image.
  static ImageTensor row(std::vector<double> values);
  static ImageTensor constant(std::size_t height, std::size_t width, double value);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  double at(std::size_t index) const;
  double at(std::size_t row, std::size_t col) const { return at(row * width_ + col); }

  std::size_t index(std::size_t row, std::size_t col) const noexcept { return row * width_ + col; }

  double min_value() const;
  double max_value() const;

  ImageTensor transposed() const;
  ImageTensor rotated180() const;
  ImageTensor rotated90() const;
  ImageTensor mirrored() const;
  ImageTensor shifted(double offset) const;
  ImageTensor scaled(double factor) const;

  friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<double> values_;
};

}  // namespace topofuse
