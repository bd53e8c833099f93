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

#ifndef SCENESHIFT_MASK_H_
#define SCENESHIFT_MASK_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sceneshift/image.h"

namespace sceneshift {

// Per-pixel membership of one object instance. Stored row-major, one byte
// per pixel holding 0 or 1.
class BinaryMask {
 public:
  // All-zero mask. Throws DimensionError for non-positive sizes.
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, bool fill);
  // `bits` must hold width * height values; any non-zero value counts as set.
  BinaryMask(int width, int height, std::vector<uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  Size size() const { return {width_, height_}; }
  size_t pixel_count() const { return bits_.size(); }

  bool Get(int x, int y) const { return bits_[Index(x, y)] != 0; }
  void Set(int x, int y, bool value) { bits_[Index(x, y)] = value ? 1 : 0; }

  std::span<const uint8_t> bits() const { return bits_; }
  std::span<uint8_t> mutable_bits() { return bits_; }

  size_t CountSet() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  size_t Index(int x, int y) const { return size_t(y) * width_ + x; }

  int width_;
  int height_;
  std::vector<uint8_t> bits_;
};

// Uncompressed COCO-style run lengths. Runs alternate 0, 1, 0, ... starting
// with the count of leading zeros (possibly 0), walking the mask in
// column-major order: every row of column 0, then column 1, and so on.
struct RleCounts {
  int height = 0;
  int width = 0;
  std::vector<uint32_t> counts;

  friend bool operator==(const RleCounts&, const RleCounts&) = default;
};

// Throws FormatError unless the dimensions are positive and the counts sum
// to height * width.
void ValidateRle(const RleCounts& rle);

// Number of set pixels, computed from the runs without decoding.
uint64_t RleForegroundCount(const RleCounts& rle);

// Throws FormatError naming expected and actual totals on a sum mismatch.
BinaryMask RleDecode(const RleCounts& rle);

// Canonical form: no empty interior runs, and a leading zero count only when
// the first pixel is set.
RleCounts RleEncode(const BinaryMask& mask);

// Per-pixel OR. An empty list yields an all-zero mask of `size`, which is then
// required. Throws DimensionError naming the first mask whose shape differs
// from the first one (or from `size`, when given).
BinaryMask MaskUnion(std::span<const BinaryMask> masks,
                     std::optional<Size> size = std::nullopt);

}  // namespace sceneshift

#endif  // SCENESHIFT_MASK_H_
