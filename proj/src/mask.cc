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

#include "sceneshift/mask.h"

#include <algorithm>
#include <string>
#include <utility>

#include "sceneshift/error.h"

namespace sceneshift {
namespace {

size_t CheckedPixelCount(int width, int height) {
  if (width < 1 || height < 1) {
    throw DimensionError("mask dimensions must be positive, got " +
                         ToString(Size{width, height}));
  }
  return size_t(width) * size_t(height);
}

}  // namespace

BinaryMask::BinaryMask(int width, int height)
    : BinaryMask(width, height, false) {}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width),
      height_(height),
      bits_(CheckedPixelCount(width, height), fill ? 1 : 0) {}

BinaryMask::BinaryMask(int width, int height, std::vector<uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  const size_t expected = CheckedPixelCount(width, height);
  if (bits_.size() != expected) {
    throw DimensionError("mask buffer holds " + std::to_string(bits_.size()) +
                         " values, a " + ToString(size()) + " mask needs " +
                         std::to_string(expected));
  }
  for (uint8_t& b : bits_) b = b != 0 ? 1 : 0;
}

size_t BinaryMask::CountSet() const {
  return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

void ValidateRle(const RleCounts& rle) {
  if (rle.height < 1 || rle.width < 1) {
    throw FormatError("RLE size must be positive, got [" +
                      std::to_string(rle.height) + ", " +
                      std::to_string(rle.width) + "]");
  }
  uint64_t total = 0;
  for (uint32_t c : rle.counts) total += c;
  const uint64_t expected = uint64_t(rle.height) * uint64_t(rle.width);
  if (total != expected) {
    throw FormatError("malformed RLE: counts sum to " + std::to_string(total) +
                      ", expected height * width = " +
                      std::to_string(expected));
  }
}

uint64_t RleForegroundCount(const RleCounts& rle) {
  uint64_t set = 0;
  for (size_t i = 1; i < rle.counts.size(); i += 2) set += rle.counts[i];
  return set;
}

BinaryMask RleDecode(const RleCounts& rle) {
  ValidateRle(rle);
  BinaryMask mask(rle.width, rle.height);
  std::span<uint8_t> bits = mask.mutable_bits();
  const size_t w = size_t(rle.width);
  const size_t h = size_t(rle.height);
  // Column-major position p maps to row p % h, column p / h.
  size_t pos = 0;
  uint8_t value = 0;
  for (uint32_t run : rle.counts) {
    if (value) {
      for (size_t end = pos + run; pos < end; ++pos) {
        bits[(pos % h) * w + pos / h] = 1;
      }
    } else {
      pos += run;
    }
    value ^= 1;
  }
  return mask;
}

RleCounts RleEncode(const BinaryMask& mask) {
  RleCounts rle;
  rle.height = mask.height();
  rle.width = mask.width();
  std::span<const uint8_t> bits = mask.bits();
  const size_t w = size_t(mask.width());
  uint8_t current = 0;
  uint32_t run = 0;
  for (size_t x = 0; x < w; ++x) {
    for (size_t y = 0; y < size_t(mask.height()); ++y) {
      const uint8_t v = bits[y * w + x];
      if (v != current) {
        rle.counts.push_back(run);
        run = 0;
        current = v;
      }
      ++run;
    }
  }
  rle.counts.push_back(run);
  return rle;
}

BinaryMask MaskUnion(std::span<const BinaryMask> masks,
                     std::optional<Size> size) {
  if (masks.empty()) {
    if (!size) {
      throw DimensionError("union of an empty mask list needs a target size");
    }
    return BinaryMask(size->width, size->height);
  }
  const Size expected = size.value_or(masks.front().size());
  for (size_t i = 0; i < masks.size(); ++i) {
    if (masks[i].size() != expected) {
      throw DimensionError("mask " + std::to_string(i) + " is " +
                           ToString(masks[i].size()) + ", expected " +
                           ToString(expected));
    }
  }
  BinaryMask out = masks.front();
  std::span<uint8_t> dst = out.mutable_bits();
  for (size_t i = 1; i < masks.size(); ++i) {
    std::span<const uint8_t> src = masks[i].bits();
    for (size_t p = 0; p < dst.size(); ++p) dst[p] |= src[p];
  }
  return out;
}

}  // namespace sceneshift
