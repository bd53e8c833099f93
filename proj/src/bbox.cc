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

#include "sceneshift/bbox.h"

#include <string>

namespace sceneshift {

bool BoundingBox::IsValid() const {
  return y1 >= 0 && x1 >= 0 && y2 >= y1 && x2 >= x1;
}

bool BoundingBox::FitsWithin(Size frame) const {
  return IsValid() && y2 <= frame.height && x2 <= frame.width;
}

int64_t BBoxArea(const BoundingBox& box) {
  return (box.y2 - box.y1) * (box.x2 - box.x1);
}

std::string ToString(const BoundingBox& box) {
  return "[" + std::to_string(box.y1) + ", " + std::to_string(box.x1) + ", " +
         std::to_string(box.y2) + ", " + std::to_string(box.x2) + "]";
}

}  // namespace sceneshift
