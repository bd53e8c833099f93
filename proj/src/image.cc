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

#include "sceneshift/image.h"

#include <string>
#include <utility>

#include "sceneshift/error.h"

namespace sceneshift {
namespace {

size_t CheckedByteCount(int width, int height) {
  if (width < 1 || height < 1) {
    throw DimensionError("image dimensions must be positive, got " +
                         ToString(Size{width, height}));
  }
  return size_t(width) * size_t(height) * RasterImage::kChannels;
}

}  // namespace

std::string ToString(Size size) {
  return std::to_string(size.width) + "x" + std::to_string(size.height);
}

RasterImage::RasterImage(int width, int height)
    : width_(width),
      height_(height),
      pixels_(CheckedByteCount(width, height), 0) {}

RasterImage::RasterImage(int width, int height, Rgb fill)
    : RasterImage(width, height) {
  for (size_t i = 0; i < pixels_.size(); i += kChannels) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

RasterImage::RasterImage(int width, int height, std::vector<uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  const size_t expected = CheckedByteCount(width, height);
  if (pixels_.size() != expected) {
    throw DimensionError("pixel buffer holds " + std::to_string(pixels_.size()) +
                         " bytes, a " + ToString(size()) + " RGB image needs " +
                         std::to_string(expected));
  }
}

}  // namespace sceneshift
