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

// Reference implementations used only by tests. Each one is written the
// slow, obvious way and must not call the library routine it checks.

#ifndef SCENESHIFT_TESTS_SUPPORT_ORACLES_H_
#define SCENESHIFT_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sceneshift/detection.h"
#include "sceneshift/image.h"
#include "sceneshift/manifest.h"
#include "sceneshift/mask.h"

namespace sceneshift::oracle {

// Area by counting unit cells between the stored coordinates.
inline int64_t CountedBoxArea(const BoundingBox& b) {
  int64_t cells = 0;
  for (int64_t y = b.y1; y < b.y2; ++y) {
    for (int64_t x = b.x1; x < b.x2; ++x) ++cells;
  }
  return cells;
}

// Expands runs into a column-major value list, then transposes.
inline std::vector<std::vector<int>> DecodeRows(const RleCounts& rle) {
  std::vector<int> column_major;
  int value = 0;
  for (uint32_t run : rle.counts) {
    for (uint32_t i = 0; i < run; ++i) column_major.push_back(value);
    value = 1 - value;
  }
  std::vector<std::vector<int>> rows(rle.height, std::vector<int>(rle.width));
  for (int x = 0; x < rle.width; ++x) {
    for (int y = 0; y < rle.height; ++y) {
      rows[y][x] = column_major.at(size_t(x) * rle.height + y);
    }
  }
  return rows;
}

inline BinaryMask DecodeMask(const RleCounts& rle) {
  const auto rows = DecodeRows(rle);
  BinaryMask m(rle.width, rle.height);
  for (int y = 0; y < rle.height; ++y) {
    for (int x = 0; x < rle.width; ++x) m.Set(x, y, rows[y][x] != 0);
  }
  return m;
}

inline BinaryMask OrMasks(const std::vector<BinaryMask>& masks) {
  BinaryMask out(masks.at(0).width(), masks.at(0).height());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      bool any = false;
      for (const BinaryMask& m : masks) any = any || m.Get(x, y);
      out.Set(x, y, any);
    }
  }
  return out;
}

inline RasterImage SelectPixels(const RasterImage& background,
                                const RasterImage& source,
                                const BinaryMask& mask) {
  RasterImage out(background.width(), background.height());
  for (int y = 0; y < background.height(); ++y) {
    for (int x = 0; x < background.width(); ++x) {
      out.Set(x, y, mask.Get(x, y) ? source.At(x, y) : background.At(x, y));
    }
  }
  return out;
}

inline BinaryMask NearestMask(const BinaryMask& m, int width, int height) {
  BinaryMask out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(m.width() - 1,
                              int((x + 0.5) * m.width() / double(width)));
      const int sy = std::min(m.height() - 1,
                              int((y + 0.5) * m.height() / double(height)));
      out.Set(x, y, m.Get(sx, sy));
    }
  }
  return out;
}

struct Candidate {
  int id;
  int64_t area;
};

// a outranks b: larger area, or equal area and smaller id.
inline bool Outranks(const Candidate& a, const Candidate& b) {
  return a.area > b.area || (a.area == b.area && a.id < b.id);
}

// Enumerates every subset of size min(n, |candidates|) and returns the one
// whose members all outrank all non-members.
inline std::set<int> BruteForceTopN(const std::vector<Candidate>& candidates,
                                    int n) {
  const size_t count = candidates.size();
  const size_t want = std::min<size_t>(size_t(n), count);
  std::optional<std::set<int>> found;
  for (uint32_t subset = 0; subset < (1u << count); ++subset) {
    if (size_t(__builtin_popcount(subset)) != want) continue;
    bool ok = true;
    for (size_t i = 0; i < count && ok; ++i) {
      if (!(subset & (1u << i))) continue;
      for (size_t j = 0; j < count && ok; ++j) {
        if (subset & (1u << j)) continue;
        ok = Outranks(candidates[i], candidates[j]);
      }
    }
    if (ok) {
      std::set<int> ids;
      for (size_t i = 0; i < count; ++i) {
        if (subset & (1u << i)) ids.insert(candidates[i].id);
      }
      if (found) throw std::logic_error("two qualifying subsets");
      found = ids;
    }
  }
  if (!found) throw std::logic_error("no qualifying subset");
  return *found;
}

inline std::vector<Candidate> PersonCandidates(const FrameSegmentation& frame,
                                               const CategoryTable& categories) {
  std::vector<Candidate> out;
  for (const Detection& d : frame.detections) {
    auto it = categories.find(d.class_id);
    if (it != categories.end() && it->second == "person") {
      out.push_back({d.instance_id, CountedBoxArea(d.bbox)});
    }
  }
  return out;
}

// One source of the sequential reference pipeline. Sources must match the
// background size; no resizing is modeled.
struct ReferenceSource {
  std::vector<RasterImage> frames;
  SequenceManifest manifest;
  int top_n = 1;
};

// Drop policy: a source past its last frame contributes nothing.
inline RasterImage ReferenceFrame(const RasterImage& background,
                                  const std::vector<ReferenceSource>& sources,
                                  size_t index) {
  RasterImage out = background;
  for (const ReferenceSource& s : sources) {
    if (index >= s.frames.size()) continue;
    const FrameSegmentation& seg = s.manifest.frames.at(index);
    const std::set<int> ids = BruteForceTopN(
        PersonCandidates(seg, s.manifest.categories), s.top_n);
    for (const Detection& d : seg.detections) {
      if (!ids.count(d.instance_id)) continue;
      out = SelectPixels(out, s.frames[index], DecodeMask(d.mask_rle));
    }
  }
  return out;
}

}  // namespace sceneshift::oracle

#endif  // SCENESHIFT_TESTS_SUPPORT_ORACLES_H_
