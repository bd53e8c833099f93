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

#include "sceneshift/compositor.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "sceneshift/error.h"

namespace sceneshift {
namespace {

// Bilinear weights are fixed point so that results do not depend on
// floating-point evaluation order, and constant regions stay constant.
constexpr int kWeightBits = 11;
constexpr int64_t kWeightOne = int64_t{1} << kWeightBits;

struct Tap {
  int i0;
  int i1;
  int64_t w1;  // weight of i1, in [0, kWeightOne]
};

// Pixel-center aligned sampling positions: source coordinate
// (d + 0.5) * src / dst - 0.5, clamped to the source extent.
std::vector<Tap> BilinearTaps(int src, int dst) {
  std::vector<Tap> taps(dst);
  const int64_t den = 2 * int64_t(dst);
  for (int d = 0; d < dst; ++d) {
    const int64_t num = (2 * int64_t(d) + 1) * src - dst;
    Tap& t = taps[d];
    if (num <= 0) {
      t = {0, 0, 0};
      continue;
    }
    t.i0 = int(num / den);
    t.w1 = ((num % den) * kWeightOne + den / 2) / den;
    if (t.i0 >= src - 1) {
      t = {src - 1, src - 1, 0};
    } else {
      t.i1 = t.i0 + 1;
    }
  }
  return taps;
}

std::vector<int> NearestTaps(int src, int dst) {
  std::vector<int> taps(dst);
  for (int d = 0; d < dst; ++d) {
    const int64_t s = ((2 * int64_t(d) + 1) * src) / (2 * int64_t(dst));
    taps[d] = int(std::min<int64_t>(s, src - 1));
  }
  return taps;
}

void CheckTarget(int width, int height) {
  if (width < 1 || height < 1) {
    throw DimensionError("resize target must be positive, got " +
                         ToString(Size{width, height}));
  }
}

RasterImage ResizeNearest(const RasterImage& image, int width, int height) {
  const std::vector<int> xs = NearestTaps(image.width(), width);
  const std::vector<int> ys = NearestTaps(image.height(), height);
  RasterImage out(width, height);
  for (int y = 0; y < height; ++y) {
    std::span<const uint8_t> src = image.Row(ys[y]);
    std::span<uint8_t> dst = out.MutableRow(y);
    for (int x = 0; x < width; ++x) {
      const size_t s = 3 * size_t(xs[x]);
      dst[3 * size_t(x)] = src[s];
      dst[3 * size_t(x) + 1] = src[s + 1];
      dst[3 * size_t(x) + 2] = src[s + 2];
    }
  }
  return out;
}

RasterImage ResizeBilinear(const RasterImage& image, int width, int height) {
  const std::vector<Tap> xs = BilinearTaps(image.width(), width);
  const std::vector<Tap> ys = BilinearTaps(image.height(), height);
  RasterImage out(width, height);
  std::vector<int64_t> row0(3 * size_t(width));
  std::vector<int64_t> row1(3 * size_t(width));
  auto horizontal = [&](std::span<const uint8_t> src, std::vector<int64_t>& dst) {
    for (int x = 0; x < width; ++x) {
      const Tap& t = xs[x];
      const size_t a = 3 * size_t(t.i0);
      const size_t b = 3 * size_t(t.i1);
      for (int c = 0; c < 3; ++c) {
        dst[3 * size_t(x) + c] =
            (kWeightOne - t.w1) * src[a + c] + t.w1 * src[b + c];
      }
    }
  };
  constexpr int64_t kRound = int64_t{1} << (2 * kWeightBits - 1);
  for (int y = 0; y < height; ++y) {
    const Tap& t = ys[y];
    horizontal(image.Row(t.i0), row0);
    horizontal(image.Row(t.i1), row1);
    std::span<uint8_t> dst = out.MutableRow(y);
    for (size_t i = 0; i < dst.size(); ++i) {
      const int64_t v =
          ((kWeightOne - t.w1) * row0[i] + t.w1 * row1[i] + kRound) >>
          (2 * kWeightBits);
      dst[i] = uint8_t(std::clamp<int64_t>(v, 0, 255));
    }
  }
  return out;
}

RasterImage ResizeStretch(const RasterImage& image, int width, int height,
                          ImageFilter filter) {
  if (image.width() == width && image.height() == height) return image;
  return filter == ImageFilter::kNearest ? ResizeNearest(image, width, height)
                                         : ResizeBilinear(image, width, height);
}

BinaryMask ResizeMaskStretch(const BinaryMask& mask, int width, int height) {
  if (mask.width() == width && mask.height() == height) return mask;
  const std::vector<int> xs = NearestTaps(mask.width(), width);
  const std::vector<int> ys = NearestTaps(mask.height(), height);
  BinaryMask out(width, height);
  std::span<const uint8_t> src = mask.bits();
  std::span<uint8_t> dst = out.mutable_bits();
  for (int y = 0; y < height; ++y) {
    const size_t srow = size_t(ys[y]) * mask.width();
    const size_t drow = size_t(y) * width;
    for (int x = 0; x < width; ++x) dst[drow + x] = src[srow + xs[x]];
  }
  return out;
}

void CheckShapes(const RasterImage& background, const RasterImage& source,
                 const BinaryMask& mask, const std::string& what) {
  if (background.size() != source.size() || background.size() != mask.size()) {
    throw DimensionError(what + ": background is " +
                         ToString(background.size()) + ", source is " +
                         ToString(source.size()) + ", mask is " +
                         ToString(mask.size()));
  }
}

// Hard replacement in place.
void ApplyHard(RasterImage& out, const RasterImage& source,
               const BinaryMask& mask) {
  std::span<uint8_t> dst = out.mutable_bytes();
  std::span<const uint8_t> src = source.bytes();
  std::span<const uint8_t> bits = mask.bits();
  for (size_t p = 0; p < bits.size(); ++p) {
    if (bits[p]) {
      dst[3 * p] = src[3 * p];
      dst[3 * p + 1] = src[3 * p + 1];
      dst[3 * p + 2] = src[3 * p + 2];
    }
  }
}

// Blend in place with weights from a box blur of the mask. The window is
// clipped at the borders and weights are set-count / in-bounds-count.
void ApplyFeathered(RasterImage& out, const RasterImage& source,
                    const BinaryMask& mask, int radius) {
  const int w = mask.width();
  const int h = mask.height();
  // Summed-area table with a zero border row and column.
  std::vector<uint32_t> sat(size_t(w + 1) * (h + 1), 0);
  std::span<const uint8_t> bits = mask.bits();
  for (int y = 0; y < h; ++y) {
    uint32_t row_sum = 0;
    for (int x = 0; x < w; ++x) {
      row_sum += bits[size_t(y) * w + x];
      sat[size_t(y + 1) * (w + 1) + x + 1] =
          sat[size_t(y) * (w + 1) + x + 1] + row_sum;
    }
  }
  std::span<uint8_t> dst = out.mutable_bytes();
  std::span<const uint8_t> src = source.bytes();
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - radius);
    const int y1 = std::min(h, y + radius + 1);
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - radius);
      const int x1 = std::min(w, x + radius + 1);
      const uint64_t set = sat[size_t(y1) * (w + 1) + x1] -
                           sat[size_t(y0) * (w + 1) + x1] -
                           sat[size_t(y1) * (w + 1) + x0] +
                           sat[size_t(y0) * (w + 1) + x0];
      if (set == 0) continue;
      const uint64_t total = uint64_t(y1 - y0) * uint64_t(x1 - x0);
      const size_t p = 3 * (size_t(y) * w + x);
      for (int c = 0; c < 3; ++c) {
        dst[p + c] = uint8_t((src[p + c] * set + dst[p + c] * (total - set) +
                              total / 2) /
                             total);
      }
    }
  }
}

}  // namespace

Placement LetterboxPlacement(Size source, Size target) {
  CheckTarget(target.width, target.height);
  const int64_t sw = source.width;
  const int64_t sh = source.height;
  const int64_t tw = target.width;
  const int64_t th = target.height;
  Placement p;
  if (tw * sh <= th * sw) {
    p.width = int(tw);
    p.height = int(std::clamp<int64_t>((2 * sh * tw + sw) / (2 * sw), 1, th));
  } else {
    p.height = int(th);
    p.width = int(std::clamp<int64_t>((2 * sw * th + sh) / (2 * sh), 1, tw));
  }
  p.x = (target.width - p.width) / 2;
  p.y = (target.height - p.height) / 2;
  return p;
}

RasterImage ResizeImage(const RasterImage& image, int width, int height,
                        const ResizePolicy& policy) {
  CheckTarget(width, height);
  if (policy.fit == FitMode::kStretch) {
    return ResizeStretch(image, width, height, policy.filter);
  }
  const Placement p = LetterboxPlacement(image.size(), {width, height});
  const RasterImage inner = ResizeStretch(image, p.width, p.height, policy.filter);
  RasterImage out(width, height, policy.pad_color);
  for (int y = 0; y < p.height; ++y) {
    std::span<const uint8_t> src = inner.Row(y);
    std::copy(src.begin(), src.end(),
              out.MutableRow(p.y + y).begin() + 3 * size_t(p.x));
  }
  return out;
}

BinaryMask ResizeMask(const BinaryMask& mask, int width, int height,
                      FitMode fit) {
  CheckTarget(width, height);
  if (fit == FitMode::kStretch) return ResizeMaskStretch(mask, width, height);
  const Placement p = LetterboxPlacement(mask.size(), {width, height});
  const BinaryMask inner = ResizeMaskStretch(mask, p.width, p.height);
  BinaryMask out(width, height);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      out.Set(p.x + x, p.y + y, inner.Get(x, y));
    }
  }
  return out;
}

RasterImage Composite(const RasterImage& background, const RasterImage& source,
                      const BinaryMask& mask) {
  CheckShapes(background, source, mask, "composite shape mismatch");
  RasterImage out = background;
  ApplyHard(out, source, mask);
  return out;
}

RasterImage CompositeFeathered(const RasterImage& background,
                               const RasterImage& source,
                               const BinaryMask& mask, int feather_radius) {
  CheckShapes(background, source, mask, "composite shape mismatch");
  if (feather_radius < 0) {
    throw DimensionError("feather radius must be non-negative");
  }
  RasterImage out = background;
  if (feather_radius == 0) {
    ApplyHard(out, source, mask);
  } else {
    ApplyFeathered(out, source, mask, feather_radius);
  }
  return out;
}

RasterImage CompositeLayers(const RasterImage& background,
                            std::span<const Layer> layers, int feather_radius) {
  if (feather_radius < 0) {
    throw DimensionError("feather radius must be non-negative");
  }
  for (size_t i = 0; i < layers.size(); ++i) {
    CheckShapes(background, layers[i].source, layers[i].mask,
                "layer " + std::to_string(i) + " shape mismatch");
  }
  RasterImage out = background;
  for (const Layer& layer : layers) {
    if (feather_radius == 0) {
      ApplyHard(out, layer.source, layer.mask);
    } else {
      ApplyFeathered(out, layer.source, layer.mask, feather_radius);
    }
  }
  return out;
}

}  // namespace sceneshift
