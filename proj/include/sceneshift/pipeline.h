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

#ifndef SCENESHIFT_PIPELINE_H_
#define SCENESHIFT_PIPELINE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sceneshift/compositor.h"
#include "sceneshift/image.h"
#include "sceneshift/io.h"
#include "sceneshift/manifest.h"
#include "sceneshift/selection.h"

namespace sceneshift {

// What a source shows once the output runs past its last frame.
enum class ExhaustionPolicy {
  kDrop,    // contributes no persons
  kFreeze,  // repeats its last frame and segmentation
};

struct FrameOptions {
  ResizePolicy resize;
  AreaMetric metric = AreaMetric::kBoundingBox;
  int feather_radius = 0;
};

// One source's inputs for a single output frame. A source with no frame (or
// no segmentation) contributes nothing.
struct SourceFrame {
  const RasterImage* image = nullptr;
  const FrameSegmentation* segmentation = nullptr;
  const CategoryTable* categories = nullptr;
  SelectionSpec selection = SelectionSpec::Top(1);
};

struct FrameResult {
  int64_t frame_index = 0;
  RasterImage image{1, 1};
  std::vector<std::set<int>> selected_ids_per_source;  // empty set if absent
  std::vector<std::string> diagnostics;
};

// Runs selection and compositing for one frame. The background defines the
// canvas; each present source and its selected masks are resized to it and
// layered in source order. Errors are rethrown as FrameError carrying
// frame_index and the source index.
FrameResult ProcessFrame(int64_t frame_index, const RasterImage& background,
                         std::span<const SourceFrame> sources,
                         const FrameOptions& options = {});

// Longest input wins. A still background (nullopt) imposes no length. Throws
// Error when no source has any frames.
int64_t OutputLength(std::span<const int64_t> source_lengths,
                     std::optional<int64_t> background_length);

// The background's rate when it is a sequence with a known rate, else the
// first source's. Differing source rates add a warning; frames are paired by
// index, never resampled.
FrameRate OutputFrameRate(std::optional<FrameRate> background_rate,
                          std::span<const FrameRate> source_rates,
                          std::vector<std::string>* warnings = nullptr);

struct SourceInput {
  std::shared_ptr<FrameSource> frames;
  std::shared_ptr<const SequenceManifest> manifest;
  SelectionSpec selection = SelectionSpec::Top(1);
};

struct CompositeJob {
  std::vector<SourceInput> sources;
  // A still image, or a frame sequence. A sequence shorter than the output
  // holds its last frame.
  std::variant<RasterImage, std::shared_ptr<FrameSource>> background{
      RasterImage(1, 1)};
  FrameOptions frame_options;
  ExhaustionPolicy exhaustion = ExhaustionPolicy::kDrop;
  int workers = 1;
  // Completed frames that may wait for an earlier one, beyond one per worker.
  int buffer_depth = 4;
};

class FrameSink {
 public:
  virtual ~FrameSink() = default;
  // Called in ascending frame_index order, from the thread that called
  // ProcessSequence.
  virtual void Consume(FrameResult result) = 0;
};

class CallbackSink : public FrameSink {
 public:
  explicit CallbackSink(std::function<void(FrameResult)> fn)
      : fn_(std::move(fn)) {}
  void Consume(FrameResult result) override { fn_(std::move(result)); }

 private:
  std::function<void(FrameResult)> fn_;
};

struct SequenceSummary {
  int64_t frames_emitted = 0;
  FrameRate frame_rate;
  std::vector<std::string> warnings;  // job-level, not per frame
};

// Validates the job, then processes every output frame with `workers`
// threads and hands results to `sink` in frame order. The emitted stream does
// not depend on the worker count. Validation failures throw Error before any
// frame is processed; a failure on frame i throws PipelineError after frames
// [0, i) were consumed.
SequenceSummary ProcessSequence(const CompositeJob& job, FrameSink& sink);

}  // namespace sceneshift

#endif  // SCENESHIFT_PIPELINE_H_
