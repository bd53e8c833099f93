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

#ifndef SCENESHIFT_MANIFEST_H_
#define SCENESHIFT_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sceneshift/detection.h"
#include "sceneshift/image.h"

namespace sceneshift {

// Frames per second as num / den.
struct FrameRate {
  int64_t num = 0;
  int64_t den = 1;

  bool IsValid() const { return num > 0 && den > 0; }
  double fps() const { return double(num) / double(den); }
  // Compares the rational values, so 50/2 equals 25/1.
  bool SameRateAs(const FrameRate& other) const {
    return num * other.den == other.num * den;
  }

  friend bool operator==(const FrameRate&, const FrameRate&) = default;
};

std::string ToString(FrameRate rate);  // "num/den"

struct FrameSegmentation {
  int64_t frame_index = 0;
  // Ascending instance_id order.
  std::vector<Detection> detections;

  friend bool operator==(const FrameSegmentation&,
                         const FrameSegmentation&) = default;
};

// Segmentation results for a whole frame sequence. A still image is a
// one-frame sequence.
struct SequenceManifest {
  int frame_width = 0;
  int frame_height = 0;
  FrameRate frame_rate;
  CategoryTable categories;
  // frames[i].frame_index == i.
  std::vector<FrameSegmentation> frames;

  Size frame_size() const { return {frame_width, frame_height}; }
  int64_t frame_count() const { return int64_t(frames.size()); }

  friend bool operator==(const SequenceManifest&,
                         const SequenceManifest&) = default;
};

struct ManifestOptions {
  // Unknown fields are an error when set, ignored otherwise.
  bool strict = true;
  // Detections scoring below this are dropped. Surviving detections keep the
  // instance_id given by their position in the document, so ids stay stable
  // across thresholds.
  double score_threshold = 0.5;
};

inline constexpr int kManifestVersion = 1;

// Throws ManifestError. Schema errors name the JSON path of the offending
// value; validation errors name frame_index and instance_id.
SequenceManifest ParseManifest(std::string_view json,
                               const ManifestOptions& options = {});
SequenceManifest LoadManifest(const std::filesystem::path& path,
                              const ManifestOptions& options = {});

// Writes the interchange document. ParseManifest with score_threshold 0
// reproduces `manifest` exactly, provided its instance ids are contiguous.
std::string SerializeManifest(const SequenceManifest& manifest);

struct ValidationReport {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
  std::string Summary() const;  // problems joined with "; "
};

// Compares the manifest with the frame source it annotates. Never throws.
ValidationReport ValidateAgainstFrames(const SequenceManifest& manifest,
                                       int64_t frame_count, int width,
                                       int height);

}  // namespace sceneshift

#endif  // SCENESHIFT_MANIFEST_H_
