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

#ifndef SCENESHIFT_SELECTION_H_
#define SCENESHIFT_SELECTION_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sceneshift/detection.h"
#include "sceneshift/manifest.h"

namespace sceneshift {

// Choose which persons to extract from a frame: the n largest, or an explicit
// list of instance ids.
class SelectionSpec {
 public:
  struct TopN {
    int n = 1;
    friend bool operator==(const TopN&, const TopN&) = default;
  };
  struct ExplicitIds {
    std::set<int> ids;
    friend bool operator==(const ExplicitIds&, const ExplicitIds&) = default;
  };

  // Both throw SelectionError when n < 1 or the id set is empty.
  static SelectionSpec Top(int n);
  static SelectionSpec Ids(std::set<int> ids);

  // Parses "top:<n>" or "ids:<id>,<id>,...". Throws SelectionError.
  static SelectionSpec Parse(std::string_view text);
  // Inverse of Parse.
  std::string ToString() const;

  const std::variant<TopN, ExplicitIds>& mode() const { return mode_; }

  friend bool operator==(const SelectionSpec&, const SelectionSpec&) = default;

 private:
  explicit SelectionSpec(std::variant<TopN, ExplicitIds> mode)
      : mode_(std::move(mode)) {}

  std::variant<TopN, ExplicitIds> mode_;
};

enum class AreaMetric {
  kBoundingBox,  // (y2 - y1) * (x2 - x1)
  kMaskPixels,   // set pixels in the instance mask
};

struct RankedPerson {
  int instance_id = 0;
  int64_t area = 0;
  int rank = 0;

  friend bool operator==(const RankedPerson&, const RankedPerson&) = default;
};

// Detections whose class id maps to "person" in `categories`, in frame order.
// The returned pointers refer into `frame`.
std::vector<const Detection*> FilterPersons(const FrameSegmentation& frame,
                                            const CategoryTable& categories);

// Descending area; equal areas are ordered by ascending instance_id.
std::vector<RankedPerson> RankByArea(
    std::span<const Detection* const> persons,
    AreaMetric metric = AreaMetric::kBoundingBox);

struct Selection {
  std::set<int> ids;
  std::vector<std::string> warnings;
};

// TopN keeps the first min(n, size) ranked ids and warns when it clamps.
// ExplicitIds throws SelectionError naming any id that is not a ranked person.
Selection Select(std::span<const RankedPerson> ranked,
                 const SelectionSpec& spec);

}  // namespace sceneshift

#endif  // SCENESHIFT_SELECTION_H_
