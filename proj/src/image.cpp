#include "topofuse/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topofuse/errors.hpp"

namespace topofuse {

ImageTensor::ImageTensor(std::size_t height, std::size_t width, std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
  if (height_ == 0 || width_ == 0) {
    throw ArgumentError("image extent must be at least 1x1");
  }
  if (values_.size() != height_ * width_) {
    throw ArgumentError("image has " + std::to_string(values_.size()) + " values, expected " +
                        std::to_string(height_ * width_));
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw ArgumentError("image contains non-finite values");
  }
}

ImageTensor ImageTensor::row(std::vector<double> values) {
  const std::size_t n = values.size();
  return ImageTensor(1, n, std::move(values));
}

ImageTensor ImageTensor::constant(std::size_t height, std::size_t width, double value) {
  return ImageTensor(height, width, std::vector<double>(height * width, value));
}

double ImageTensor::at(std::size_t index) const {
  if (index >= values_.size()) {
    throw IndexError("pixel index " + std::to_string(index) + " out of range for " +
                     std::to_string(height_) + "x" + std::to_string(width_) + " image");
  }
  return values_[index];
}

double ImageTensor::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double ImageTensor::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

ImageTensor ImageTensor::transposed() const {
  std::vector<double> out(values_.size());
  for (std::size_t r = 0; r < height_; ++r) {
    for (std::size_t c = 0; c < width_; ++c) {
      out[c * height_ + r] = values_[r * width_ + c];
    }
  }
  return ImageTensor(width_, height_, std::move(out));
}

ImageTensor ImageTensor::rotated180() const {
  std::vector<double> out(values_.rbegin(), values_.rend());
  return ImageTensor(height_, width_, std::move(out));
}

ImageTensor ImageTensor::rotated90() const {
  // Clockwise: new(r, c) = old(H-1-c, r); result is W x H.
  std::vector<double> out(values_.size());
  for (std::size_t r = 0; r < width_; ++r) {
    for (std::size_t c = 0; c < height_; ++c) {
      out[r * height_ + c] = values_[(height_ - 1 - c) * width_ + r];
    }
  }
  return ImageTensor(width_, height_, std::move(out));
}

ImageTensor ImageTensor::mirrored() const {
  std::vector<double> out(values_.size());
  for (std::size_t r = 0; r < height_; ++r) {
    for (std::size_t c = 0; c < width_; ++c) {
      out[r * width_ + (width_ - 1 - c)] = values_[r * width_ + c];
    }
  }
  return ImageTensor(height_, width_, std::move(out));
}

ImageTensor ImageTensor::shifted(double offset) const {
  std::vector<double> out(values_);
  for (double& v : out) v += offset;
  return ImageTensor(height_, width_, std::move(out));
}

ImageTensor ImageTensor::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return ImageTensor(height_, width_, std::move(out));
}

}  // namespace topofuse
