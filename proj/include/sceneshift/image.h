// Copyright 2026 The SceneShift Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCENESHIFT_IMAGE_H_
#define SCENESHIFT_IMAGE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sceneshift {

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Size {
  int width = 0;
  int height = 0;

  friend bool operator==(const Size&, const Size&) = default;
};

std::string ToString(Size size);  // "WxH"

// Row-major interleaved 8-bit RGB raster. Width and height are at least 1.
class RasterImage {
 public:
  static constexpr int kChannels = 3;

  // Black image. Throws DimensionError for non-positive sizes.
  RasterImage(int width, int height);
  RasterImage(int width, int height, Rgb fill);
  // Adopts `pixels`, which must hold exactly width * height * 3 bytes.
  RasterImage(int width, int height, std::vector<uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  Size size() const { return {width_, height_}; }
  size_t pixel_count() const { return static_cast<size_t>(width_) * height_; }

  std::span<const uint8_t> bytes() const { return pixels_; }
  std::span<uint8_t> mutable_bytes() { return pixels_; }

  std::span<const uint8_t> Row(int y) const {
    return bytes().subspan(RowOffset(y), RowStride());
  }
  std::span<uint8_t> MutableRow(int y) {
    return mutable_bytes().subspan(RowOffset(y), RowStride());
  }

  Rgb At(int x, int y) const {
    const uint8_t* p = &pixels_[RowOffset(y) + kChannels * size_t(x)];
    return {p[0], p[1], p[2]};
  }
  void Set(int x, int y, Rgb c) {
    uint8_t* p = &pixels_[RowOffset(y) + kChannels * size_t(x)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  size_t RowStride() const { return kChannels * size_t(width_); }
  size_t RowOffset(int y) const { return RowStride() * size_t(y); }

  int width_;
  int height_;
  std::vector<uint8_t> pixels_;
};

}  // namespace sceneshift

#endif  // SCENESHIFT_IMAGE_H_
