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

#ifndef SCENESHIFT_DETECTION_H_
#define SCENESHIFT_DETECTION_H_

#include <map>
#include <string>

#include "sceneshift/bbox.h"
#include "sceneshift/mask.h"

namespace sceneshift {

using CategoryTable = std::map<int, std::string>;

inline constexpr char kPersonClassName[] = "person";

// One detected object instance. instance_id is the zero-based position of the
// detection in the provider's list for its frame.
struct Detection {
  int instance_id = 0;
  int class_id = 0;
  std::string class_name;
  double score = 0.0;
  BoundingBox bbox;
  RleCounts mask_rle;

  BinaryMask Mask() const { return RleDecode(mask_rle); }

  friend bool operator==(const Detection&, const Detection&) = default;
};

}  // namespace sceneshift

#endif  // SCENESHIFT_DETECTION_H_
