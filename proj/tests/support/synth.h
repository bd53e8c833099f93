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

// Synthetic images, masks and scenes for tests and fixture generation.

#ifndef SCENESHIFT_TESTS_SUPPORT_SYNTH_H_
#define SCENESHIFT_TESTS_SUPPORT_SYNTH_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sceneshift/detection.h"
#include "sceneshift/image.h"
#include "sceneshift/manifest.h"
#include "sceneshift/mask.h"

namespace sceneshift::synth {

inline constexpr int kPersonClass = 1;
inline constexpr int kDogClass = 18;
inline constexpr int kCarClass = 3;

inline CategoryTable CocoSubset() {
  return {{kPersonClass, "person"}, {kCarClass, "car"}, {kDogClass, "dog"}};
}

inline RasterImage RandomImage(std::mt19937_64& rng, int w, int h) {
  std::vector<uint8_t> px(size_t(w) * h * 3);
  std::uniform_int_distribution<int> byte(0, 255);
  for (uint8_t& v : px) v = uint8_t(byte(rng));
  return RasterImage(w, h, std::move(px));
}

// density in [0, 1]; clustered runs when `blocky` is set.
inline BinaryMask RandomMask(std::mt19937_64& rng, int w, int h,
                             double density = 0.5, bool blocky = false) {
  std::bernoulli_distribution bit(density);
  std::vector<uint8_t> bits(size_t(w) * h);
  if (!blocky) {
    for (uint8_t& b : bits) b = bit(rng);
  } else {
    std::geometric_distribution<int> run(0.05);
    size_t i = 0;
    uint8_t v = bit(rng);
    while (i < bits.size()) {
      const size_t len = size_t(run(rng)) + 1;
      for (size_t k = 0; k < len && i < bits.size(); ++k) bits[i++] = v;
      v ^= 1;
    }
  }
  return BinaryMask(w, h, std::move(bits));
}

// Filled ellipse inscribed in the box.
inline BinaryMask EllipseMask(Size frame, const BoundingBox& box) {
  BinaryMask m(frame.width, frame.height);
  const double cy = (box.y1 + box.y2) / 2.0;
  const double cx = (box.x1 + box.x2) / 2.0;
  const double ry = (box.y2 - box.y1) / 2.0;
  const double rx = (box.x2 - box.x1) / 2.0;
  for (int64_t y = box.y1; y < box.y2; ++y) {
    for (int64_t x = box.x1; x < box.x2; ++x) {
      const double dy = (y + 0.5 - cy) / ry;
      const double dx = (x + 0.5 - cx) / rx;
      if (dx * dx + dy * dy <= 1.0) m.Set(int(x), int(y), true);
    }
  }
  return m;
}

inline Detection MakeDetection(int id, int class_id, const std::string& name,
                               double score, const BoundingBox& box,
                               const BinaryMask& mask) {
  Detection d;
  d.instance_id = id;
  d.class_id = class_id;
  d.class_name = name;
  d.score = score;
  d.bbox = box;
  d.mask_rle = RleEncode(mask);
  return d;
}

inline BoundingBox RandomBox(std::mt19937_64& rng, Size frame) {
  std::uniform_int_distribution<int64_t> ys(0, frame.height);
  std::uniform_int_distribution<int64_t> xs(0, frame.width);
  int64_t y1 = ys(rng), y2 = ys(rng), x1 = xs(rng), x2 = xs(rng);
  if (y1 > y2) std::swap(y1, y2);
  if (x1 > x2) std::swap(x1, x2);
  return {y1, x1, y2, x2};
}

// Random frame with up to `max_detections` detections of random classes.
// Boxes are drawn from a small grid so equal areas occur often.
inline FrameSegmentation RandomFrame(std::mt19937_64& rng, Size frame,
                                     int max_detections, int64_t index = 0) {
  FrameSegmentation seg;
  seg.frame_index = index;
  std::uniform_int_distribution<int> count(0, max_detections);
  std::uniform_int_distribution<int> cls(0, 2);
  std::uniform_int_distribution<int64_t> cell(0, 4);
  const int n = count(rng);
  const int classes[] = {kPersonClass, kDogClass, kCarClass};
  const CategoryTable table = CocoSubset();
  for (int i = 0; i < n; ++i) {
    const int c = classes[cls(rng)];
    const int64_t h = cell(rng) * frame.height / 4;
    const int64_t w = cell(rng) * frame.width / 4;
    BoundingBox box{0, 0, h, w};
    BinaryMask mask = EllipseMask(frame, box);
    Detection d = MakeDetection(i, c, table.at(c), 0.9, box, mask);
    seg.detections.push_back(std::move(d));
  }
  return seg;
}

// Sequence whose every frame shows `persons` persons plus a dog, boxes
// drifting with the frame index.
inline SequenceManifest MovingScene(Size frame, int64_t frames, int persons,
                                    int seed) {
  SequenceManifest m;
  m.frame_width = frame.width;
  m.frame_height = frame.height;
  m.frame_rate = {25, 1};
  m.categories = CocoSubset();
  std::mt19937_64 rng(seed);
  std::vector<BoundingBox> base;
  for (int p = 0; p < persons + 1; ++p) {
    std::uniform_int_distribution<int64_t> hh(frame.height / 6, frame.height / 2);
    std::uniform_int_distribution<int64_t> ww(frame.width / 8, frame.width / 3);
    const int64_t h = hh(rng), w = ww(rng);
    std::uniform_int_distribution<int64_t> yy(0, frame.height - h);
    std::uniform_int_distribution<int64_t> xx(0, frame.width - w);
    const int64_t y = yy(rng), x = xx(rng);
    base.push_back({y, x, y + h, x + w});
  }
  for (int64_t f = 0; f < frames; ++f) {
    FrameSegmentation seg;
    seg.frame_index = f;
    for (int p = 0; p < persons + 1; ++p) {
      BoundingBox b = base[p];
      const int64_t w = b.x2 - b.x1;
      const int64_t span = frame.width - w;
      const int64_t shift = span > 0 ? (b.x1 + 3 * f * (p + 1)) % (span + 1) : 0;
      b.x1 = shift;
      b.x2 = shift + w;
      const bool dog = p == persons;
      seg.detections.push_back(MakeDetection(
          p, dog ? kDogClass : kPersonClass, dog ? "dog" : "person", 0.9, b,
          EllipseMask(frame, b)));
    }
    m.frames.push_back(std::move(seg));
  }
  return m;
}

// Deterministic busy pattern so misplaced pixels are visible.
inline RasterImage PatternImage(Size size, int seed) {
  RasterImage img(size.width, size.height);
  for (int y = 0; y < size.height; ++y) {
    for (int x = 0; x < size.width; ++x) {
      img.Set(x, y,
              {uint8_t((x * 7 + seed * 31) & 255), uint8_t((y * 5 + seed * 17) & 255),
               uint8_t(((x ^ y) + seed * 53) & 255)});
    }
  }
  return img;
}

inline std::vector<RasterImage> PatternFrames(Size size, int64_t count, int seed) {
  std::vector<RasterImage> frames;
  for (int64_t i = 0; i < count; ++i) {
    frames.push_back(PatternImage(size, seed + int(i)));
  }
  return frames;
}

}  // namespace sceneshift::synth

#endif  // SCENESHIFT_TESTS_SUPPORT_SYNTH_H_
