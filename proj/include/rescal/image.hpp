// Copyright 2026 The rescal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RESCAL_IMAGE_HPP_
#define RESCAL_IMAGE_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rescal/error.hpp"

namespace rescal {

struct ImageDims {
  int height = 1;
  int width = 1;

  bool valid() const noexcept { return height >= 1 && width >= 1; }
  long long area() const noexcept { return static_cast<long long>(height) * width; }
  friend bool operator==(const ImageDims&, const ImageDims&) = default;
};

inline void validate(const ImageDims& d) {
  detail::require(d.valid(), "image dims must be at least 1x1, got " +
                                 std::to_string(d.height) + "x" + std::to_string(d.width));
}

/// Row-major, channel-interleaved image with intensities in [0, 1].
class ImageBuffer {
 public:
  ImageBuffer() = default;

  ImageBuffer(ImageDims dims, int channels, float fill = 0.0f)
      : dims_(dims), channels_(channels) {
    validate(dims);
    detail::require(channels == 1 || channels == 3, "image channels must be 1 or 3");
    pixels_.assign(static_cast<std::size_t>(dims.area()) * channels, fill);
  }

  ImageBuffer(ImageDims dims, int channels, std::vector<float> pixels)
      : dims_(dims), channels_(channels), pixels_(std::move(pixels)) {
    validate(dims);
    detail::require(channels == 1 || channels == 3, "image channels must be 1 or 3");
    detail::require(pixels_.size() == static_cast<std::size_t>(dims.area()) * channels,
                    "image pixel count does not match height*width*channels");
    for (float v : pixels_) {
      detail::require(v >= 0.0f && v <= 1.0f, "image intensities must lie in [0,1]");
    }
  }

  const ImageDims& dims() const noexcept { return dims_; }
  int height() const noexcept { return dims_.height; }
  int width() const noexcept { return dims_.width; }
  int channels() const noexcept { return channels_; }
  const std::vector<float>& pixels() const noexcept { return pixels_; }
  std::vector<float>& pixels() noexcept { return pixels_; }

  float at(int y, int x, int c = 0) const { return pixels_[index(y, x, c)]; }
  float& at(int y, int x, int c = 0) { return pixels_[index(y, x, c)]; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t index(int y, int x, int c) const {
    return (static_cast<std::size_t>(y) * dims_.width + x) * channels_ + c;
  }

  ImageDims dims_;
  int channels_ = 1;
  std::vector<float> pixels_ = std::vector<float>(1, 0.0f);
};

}  // namespace rescal

#endif  // RESCAL_IMAGE_HPP_
