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

#ifndef SCENESHIFT_BBOX_H_
#define SCENESHIFT_BBOX_H_

#include <cstdint>
#include <string>

#include "sceneshift/image.h"

namespace sceneshift {

// Detector box in (y1, x1, y2, x2) order. Coordinates are taken as stored;
// no half-open convention is applied.
struct BoundingBox {
  int64_t y1 = 0;
  int64_t x1 = 0;
  int64_t y2 = 0;
  int64_t x2 = 0;

  // y2 >= y1, x2 >= x1, all coordinates non-negative.
  bool IsValid() const;
  // IsValid() and y2 <= frame height, x2 <= frame width.
  bool FitsWithin(Size frame) const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// (y2 - y1) * (x2 - x1). Requires a valid box.
int64_t BBoxArea(const BoundingBox& box);

std::string ToString(const BoundingBox& box);

}  // namespace sceneshift

#endif  // SCENESHIFT_BBOX_H_
