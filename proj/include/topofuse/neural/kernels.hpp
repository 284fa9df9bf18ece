#pragma once

// Per-sample layer kernels on raw CHW buffers. Backward kernels accumulate
// into their gradient outputs; callers zero them first.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace topofuse::neural::kernels {

/// Dot product with eight independent partial sums so the compiler can
/// vectorise it without reassociation flags. Summation order is fixed.
template <class T>
inline T dot(const T* a, const T* b, std::ptrdiff_t n) {
  T lane[8] = {};
  std::ptrdiff_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (int k = 0; k < 8; ++k) lane[k] += a[i + k] * b[i + k];
  }
  T tail = 0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return ((lane[0] + lane[4]) + (lane[1] + lane[5])) + ((lane[2] + lane[6]) + (lane[3] + lane[7])) + tail;
}

/// Unfolds the same-padded KxK neighbourhoods of a CxHxW input into a
/// (C*K*K) x (H*W) matrix; out-of-image taps are zero.
template <class T>
void im2col(const T* in, std::size_t channels, std::size_t height, std::size_t width, std::size_t kernel,
            std::vector<T>& cols) {
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(kernel / 2);
  const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(height);
  const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(width);
  const std::size_t plane = height * width;
  cols.assign(channels * kernel * kernel * plane, T{0});
  for (std::size_t c = 0; c < channels; ++c) {
    const T* x = in + c * plane;
    for (std::size_t ky = 0; ky < kernel; ++ky) {
      const std::ptrdiff_t dy = static_cast<std::ptrdiff_t>(ky) - pad;
      const std::ptrdiff_t y0 = std::max<std::ptrdiff_t>(0, -dy);
      const std::ptrdiff_t y1 = std::min(h, h - dy);
      for (std::size_t kx = 0; kx < kernel; ++kx) {
        const std::ptrdiff_t dx = static_cast<std::ptrdiff_t>(kx) - pad;
        const std::ptrdiff_t x0 = std::max<std::ptrdiff_t>(0, -dx);
        const std::ptrdiff_t x1 = std::min(w, w - dx);
        T* row = cols.data() + ((c * kernel + ky) * kernel + kx) * plane;
        for (std::ptrdiff_t y = y0; y < y1; ++y) {
          std::copy(x + (y + dy) * w + dx + x0, x + (y + dy) * w + dx + x1, row + y * w + x0);
        }
      }
    }
  }
}

/// Adjoint of im2col: scatters column gradients back onto the input grid.
template <class T>
void col2im_add(const std::vector<T>& cols, std::size_t channels, std::size_t height, std::size_t width,
                std::size_t kernel, T* grad_in) {
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(kernel / 2);
  const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(height);
  const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(width);
  const std::size_t plane = height * width;
  for (std::size_t c = 0; c < channels; ++c) {
    T* gx = grad_in + c * plane;
    for (std::size_t ky = 0; ky < kernel; ++ky) {
      const std::ptrdiff_t dy = static_cast<std::ptrdiff_t>(ky) - pad;
      const std::ptrdiff_t y0 = std::max<std::ptrdiff_t>(0, -dy);
      const std::ptrdiff_t y1 = std::min(h, h - dy);
      for (std::size_t kx = 0; kx < kernel; ++kx) {
        const std::ptrdiff_t dx = static_cast<std::ptrdiff_t>(kx) - pad;
        const std::ptrdiff_t x0 = std::max<std::ptrdiff_t>(0, -dx);
        const std::ptrdiff_t x1 = std::min(w, w - dx);
        const T* row = cols.data() + ((c * kernel + ky) * kernel + kx) * plane;
        for (std::ptrdiff_t y = y0; y < y1; ++y) {
          T* dst = gx + (y + dy) * w + dx;
          const T* src = row + y * w;
          for (std::ptrdiff_t xi = x0; xi < x1; ++xi) dst[xi] += src[xi];
        }
      }
    }
  }
}

/// Same-padded, stride-1 convolution. weight is [F][C][K][K]. cols is
/// scratch space for the unfolded input.
template <class T>
void conv2d_forward(const T* in, std::size_t channels, std::size_t height, std::size_t width, const T* weight,
                    const T* bias, std::size_t filters, std::size_t kernel, T* out, std::vector<T>& cols) {
  const std::size_t plane = height * width;
  const std::size_t taps = channels * kernel * kernel;
  im2col(in, channels, height, width, kernel, cols);
  for (std::size_t f = 0; f < filters; ++f) {
    T* o = out + f * plane;
    std::fill(o, o + plane, bias[f]);
    const T* wf = weight + f * taps;
    for (std::size_t k = 0; k < taps; ++k) {
      const T coef = wf[k];
      const T* col = cols.data() + k * plane;
      for (std::size_t i = 0; i < plane; ++i) o[i] += coef * col[i];
    }
  }
}

/// grad_in may be null when the input gradient is not needed. cols and
/// grad_cols are scratch space.
template <class T>
void conv2d_backward(const T* in, std::size_t channels, std::size_t height, std::size_t width, const T* weight,
                     std::size_t filters, std::size_t kernel, const T* grad_out, T* grad_in, T* grad_weight,
                     T* grad_bias, std::vector<T>& cols, std::vector<T>& grad_cols) {
  const std::size_t plane = height * width;
  const std::size_t taps = channels * kernel * kernel;
  const auto n = static_cast<std::ptrdiff_t>(plane);
  im2col(in, channels, height, width, kernel, cols);
  if (grad_in != nullptr) grad_cols.assign(taps * plane, T{0});
  for (std::size_t f = 0; f < filters; ++f) {
    const T* go = grad_out + f * plane;
    T bsum = 0;
    for (std::size_t i = 0; i < plane; ++i) bsum += go[i];
    grad_bias[f] += bsum;
    const T* wf = weight + f * taps;
    T* gwf = grad_weight + f * taps;
    for (std::size_t k = 0; k < taps; ++k) {
      gwf[k] += dot(go, cols.data() + k * plane, n);
      if (grad_in != nullptr) {
        const T coef = wf[k];
        T* gcol = grad_cols.data() + k * plane;
        for (std::size_t i = 0; i < plane; ++i) gcol[i] += coef * go[i];
      }
    }
  }
  if (grad_in != nullptr) col2im_add(grad_cols, channels, height, width, kernel, grad_in);
}

/// 2x2 max pool, stride 2, floor semantics. argmax records the flat input
/// index of each winner; ties go to the first element in row-major order.
template <class T>
void maxpool2_forward(const T* in, std::size_t channels, std::size_t height, std::size_t width, T* out,
                      std::uint32_t* argmax) {
  const std::size_t oh = height / 2;
  const std::size_t ow = width / 2;
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        std::size_t best = (c * height + 2 * y) * width + 2 * x;
        for (std::size_t dy = 0; dy < 2; ++dy) {
          for (std::size_t dx = 0; dx < 2; ++dx) {
            const std::size_t idx = (c * height + 2 * y + dy) * width + 2 * x + dx;
            if (in[idx] > in[best]) best = idx;
          }
        }
        const std::size_t o = (c * oh + y) * ow + x;
        out[o] = in[best];
        argmax[o] = static_cast<std::uint32_t>(best);
      }
    }
  }
}

template <class T>
void maxpool2_backward(const T* grad_out, const std::uint32_t* argmax, std::size_t out_size, T* grad_in) {
  for (std::size_t o = 0; o < out_size; ++o) grad_in[argmax[o]] += grad_out[o];
}

/// weight is [units][inputs].
template <class T>
void dense_forward(const T* in, std::size_t inputs, const T* weight, const T* bias, std::size_t units, T* out) {
  for (std::size_t u = 0; u < units; ++u) {
    const T* row = weight + u * inputs;
    out[u] = bias[u] + dot(row, in, static_cast<std::ptrdiff_t>(inputs));
  }
}

template <class T>
void dense_backward(const T* in, std::size_t inputs, const T* weight, std::size_t units, const T* grad_out,
                    T* grad_in, T* grad_weight, T* grad_bias) {
  for (std::size_t u = 0; u < units; ++u) {
    const T g = grad_out[u];
    grad_bias[u] += g;
    T* grow = grad_weight + u * inputs;
    for (std::size_t i = 0; i < inputs; ++i) grow[i] += g * in[i];
    if (grad_in != nullptr) {
      const T* row = weight + u * inputs;
      for (std::size_t i = 0; i < inputs; ++i) grad_in[i] += row[i] * g;
    }
  }
}

}  // namespace topofuse::neural::kernels
