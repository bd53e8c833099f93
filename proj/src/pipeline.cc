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

#include "sceneshift/pipeline.h"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

#include "sceneshift/error.h"

namespace sceneshift {
namespace {

const Detection* FindDetection(std::span<const Detection* const> persons,
                               int instance_id) {
  for (const Detection* d : persons) {
    if (d->instance_id == instance_id) return d;
  }
  return nullptr;
}

std::optional<Layer> BuildLayer(const SourceFrame& source, Size canvas,
                                const FrameOptions& options,
                                std::set<int>* selected,
                                std::vector<std::string>* warnings) {
  static const CategoryTable kNoCategories;
  const CategoryTable& categories =
      source.categories != nullptr ? *source.categories : kNoCategories;
  const std::vector<const Detection*> persons =
      FilterPersons(*source.segmentation, categories);
  const std::vector<RankedPerson> ranked = RankByArea(persons, options.metric);
  Selection selection = Select(ranked, source.selection);
  *selected = selection.ids;
  for (std::string& w : selection.warnings) warnings->push_back(std::move(w));
  if (selection.ids.empty()) return std::nullopt;

  std::vector<BinaryMask> masks;
  masks.reserve(selection.ids.size());
  for (int id : selection.ids) {
    BinaryMask mask = FindDetection(persons, id)->Mask();
    if (mask.size() != source.image->size()) {
      throw DimensionError("mask of instance " + std::to_string(id) + " is " +
                           ToString(mask.size()) + ", source frame is " +
                           ToString(source.image->size()));
    }
    masks.push_back(std::move(mask));
  }
  BinaryMask selected_mask = MaskUnion(masks);
  if (source.image->size() == canvas) {
    return Layer{*source.image, std::move(selected_mask)};
  }
  return Layer{
      ResizeImage(*source.image, canvas.width, canvas.height, options.resize),
      ResizeMask(selected_mask, canvas.width, canvas.height,
                 options.resize.fit)};
}

std::string FramePrefix(int64_t frame_index) {
  return "frame " + std::to_string(frame_index);
}

}  // namespace

FrameResult ProcessFrame(int64_t frame_index, const RasterImage& background,
                         std::span<const SourceFrame> sources,
                         const FrameOptions& options) {
  FrameResult result;
  result.frame_index = frame_index;
  std::vector<Layer> layers;
  for (size_t s = 0; s < sources.size(); ++s) {
    const SourceFrame& source = sources[s];
    std::set<int> selected;
    if (source.image != nullptr && source.segmentation != nullptr) {
      std::vector<std::string> warnings;
      try {
        std::optional<Layer> layer = BuildLayer(source, background.size(),
                                                options, &selected, &warnings);
        if (layer) layers.push_back(std::move(*layer));
      } catch (const Error& e) {
        throw FrameError(FramePrefix(frame_index) + ", source " +
                             std::to_string(s) + ": " + e.what(),
                         frame_index, int(s));
      }
      for (const std::string& w : warnings) {
        result.diagnostics.push_back(FramePrefix(frame_index) + ", source " +
                                     std::to_string(s) + ": " + w);
      }
    }
    result.selected_ids_per_source.push_back(std::move(selected));
  }
  try {
    result.image = CompositeLayers(background, layers, options.feather_radius);
  } catch (const Error& e) {
    throw FrameError(FramePrefix(frame_index) + ": " + e.what(), frame_index,
                     -1);
  }
  return result;
}

int64_t OutputLength(std::span<const int64_t> source_lengths,
                     std::optional<int64_t> background_length) {
  int64_t longest_source = 0;
  for (int64_t n : source_lengths) longest_source = std::max(longest_source, n);
  if (longest_source < 1) {
    throw Error("no input source has any frames");
  }
  return std::max(longest_source, background_length.value_or(0));
}

FrameRate OutputFrameRate(std::optional<FrameRate> background_rate,
                          std::span<const FrameRate> source_rates,
                          std::vector<std::string>* warnings) {
  if (warnings != nullptr) {
    for (size_t i = 1; i < source_rates.size(); ++i) {
      if (!source_rates[i].SameRateAs(source_rates[0])) {
        warnings->push_back("source " + std::to_string(i) + " runs at " +
                            ToString(source_rates[i]) + " fps, source 0 at " +
                            ToString(source_rates[0]) +
                            "; frames are paired by index");
      }
    }
    if (background_rate && !source_rates.empty() &&
        !background_rate->SameRateAs(source_rates[0])) {
      warnings->push_back("background runs at " + ToString(*background_rate) +
                          " fps, source 0 at " + ToString(source_rates[0]) +
                          "; frames are paired by index");
    }
  }
  if (background_rate) return *background_rate;
  if (source_rates.empty()) throw Error("no frame rate available");
  return source_rates.front();
}

namespace {

// Inputs gathered for one output frame. Sequential sources are read by the
// dispatching thread and carried here; random-access ones are read by the
// worker. An index of -1 marks an absent source.
struct FrameInputs {
  int64_t index = 0;
  int64_t background_index = -1;  // -1: still background
  std::optional<RasterImage> background;
  std::vector<int64_t> source_index;
  std::vector<std::optional<RasterImage>> source_image;
};

struct Outcome {
  std::optional<FrameResult> result;
  std::exception_ptr error;
};

class SequenceRunner {
 public:
  SequenceRunner(const CompositeJob& job, int64_t length)
      : job_(job),
        length_(length),
        last_sequential_(job.sources.size()) {
    for (const SourceInput& s : job.sources) {
      lengths_.push_back(s.frames->frame_count());
    }
    if (const auto* seq =
            std::get_if<std::shared_ptr<FrameSource>>(&job.background)) {
      background_source_ = seq->get();
    }
  }

  int64_t Run(FrameSink& sink) {
    const int64_t capacity = int64_t(job_.workers) + job_.buffer_depth;
    int64_t next_dispatch = 0;
    int64_t next_emit = 0;
    int64_t dispatch_end = length_;
    {
      std::vector<std::jthread> threads;
      threads.reserve(size_t(job_.workers));
      for (int w = 0; w < job_.workers; ++w) {
        threads.emplace_back([this] { WorkerLoop(); });
      }
      try {
        while (next_emit < length_) {
          while (next_dispatch < dispatch_end &&
                 next_dispatch - next_emit < capacity) {
            const int64_t index = next_dispatch++;
            try {
              FrameInputs inputs = Gather(index);
              std::lock_guard lock(mu_);
              queue_.push_back(std::move(inputs));
              work_cv_.notify_one();
            } catch (...) {
              std::lock_guard lock(mu_);
              done_[index] = Outcome{std::nullopt, std::current_exception()};
              dispatch_end = next_dispatch;
            }
          }
          Outcome outcome;
          {
            std::unique_lock lock(mu_);
            done_cv_.wait(lock, [&] { return done_.count(next_emit) != 0; });
            auto it = done_.find(next_emit);
            outcome = std::move(it->second);
            done_.erase(it);
          }
          if (outcome.error) Fail(outcome.error, next_emit, next_emit);
          try {
            sink.Consume(std::move(*outcome.result));
          } catch (...) {
            Fail(std::current_exception(), next_emit, next_emit);
          }
          ++next_emit;
        }
      } catch (...) {
        Stop();
        throw;
      }
      Stop();
    }
    return next_emit;
  }

 private:
  [[noreturn]] void Fail(std::exception_ptr error, int64_t frame_index,
                         int64_t completed) {
    std::string what = "unknown error";
    try {
      std::rethrow_exception(error);
    } catch (const FrameError& e) {
      what = e.what();
    } catch (const std::exception& e) {
      what = FramePrefix(frame_index) + ": " + e.what();
    } catch (...) {
      what = FramePrefix(frame_index) + ": unknown error";
    }
    throw PipelineError(what, frame_index, completed);
  }

  void Stop() {
    std::lock_guard lock(mu_);
    stop_ = true;
    queue_.clear();
    work_cv_.notify_all();
  }

  // Maps output frame `index` onto each input's frame index, reading
  // sequential inputs now.
  FrameInputs Gather(int64_t index) {
    FrameInputs in;
    in.index = index;
    if (background_source_ != nullptr) {
      const int64_t n = background_source_->frame_count();
      in.background_index = std::min(index, n - 1);
      if (!background_source_->random_access()) {
        if (index < n) background_last_ = background_source_->Read(index);
        in.background = background_last_;
      }
    }
    const size_t count = job_.sources.size();
    in.source_index.assign(count, -1);
    in.source_image.resize(count);
    for (size_t s = 0; s < count; ++s) {
      const int64_t n = lengths_[s];
      if (index < n) {
        in.source_index[s] = index;
      } else if (job_.exhaustion == ExhaustionPolicy::kFreeze) {
        in.source_index[s] = n - 1;
      } else {
        continue;
      }
      FrameSource& frames = *job_.sources[s].frames;
      if (!frames.random_access()) {
        if (index < n) last_sequential_[s] = frames.Read(index);
        in.source_image[s] = last_sequential_[s];
      }
    }
    return in;
  }

  FrameResult Execute(FrameInputs& in) {
    RasterImage background =
        in.background                  ? std::move(*in.background)
        : background_source_ != nullptr ? background_source_->Read(in.background_index)
                                        : std::get<RasterImage>(job_.background);
    const size_t count = job_.sources.size();
    std::vector<SourceFrame> frames(count);
    for (size_t s = 0; s < count; ++s) {
      const SourceInput& source = job_.sources[s];
      frames[s].selection = source.selection;
      frames[s].categories = &source.manifest->categories;
      const int64_t i = in.source_index[s];
      if (i < 0) continue;
      if (!in.source_image[s]) in.source_image[s] = source.frames->Read(i);
      frames[s].image = &*in.source_image[s];
      frames[s].segmentation = &source.manifest->frames[size_t(i)];
    }
    return ProcessFrame(in.index, background, frames, job_.frame_options);
  }

  void WorkerLoop() {
    while (true) {
      FrameInputs inputs;
      {
        std::unique_lock lock(mu_);
        work_cv_.wait(lock, [&] { return stop_ || !queue_.empty(); });
        if (stop_) return;
        inputs = std::move(queue_.front());
        queue_.pop_front();
      }
      Outcome outcome;
      try {
        outcome.result = Execute(inputs);
      } catch (...) {
        outcome.error = std::current_exception();
      }
      std::lock_guard lock(mu_);
      done_[inputs.index] = std::move(outcome);
      done_cv_.notify_all();
    }
  }

  const CompositeJob& job_;
  const int64_t length_;
  std::vector<int64_t> lengths_;
  FrameSource* background_source_ = nullptr;

  // Touched only by the dispatching thread.
  std::vector<std::optional<RasterImage>> last_sequential_;
  std::optional<RasterImage> background_last_;

  std::mutex mu_;
  std::condition_variable work_cv_;
  std::condition_variable done_cv_;
  std::deque<FrameInputs> queue_;
  std::map<int64_t, Outcome> done_;
  bool stop_ = false;
};

}  // namespace

SequenceSummary ProcessSequence(const CompositeJob& job, FrameSink& sink) {
  if (job.sources.empty()) throw Error("job has no sources");
  if (job.workers < 1) throw Error("worker count must be at least 1");
  if (job.buffer_depth < 0) throw Error("buffer depth must be non-negative");

  SequenceSummary summary;
  std::vector<std::string> problems;
  std::vector<int64_t> lengths;
  std::vector<FrameRate> rates;
  for (size_t s = 0; s < job.sources.size(); ++s) {
    const SourceInput& source = job.sources[s];
    const std::string name = "source " + std::to_string(s);
    if (!source.frames || !source.manifest) {
      problems.push_back(name + ": missing frames or manifest");
      continue;
    }
    const Size size = source.frames->frame_size();
    const ValidationReport report = ValidateAgainstFrames(
        *source.manifest, source.frames->frame_count(), size.width, size.height);
    for (const std::string& p : report.problems) {
      problems.push_back(name + ": " + p);
    }
    lengths.push_back(source.frames->frame_count());
    rates.push_back(source.manifest->frame_rate);
    const std::optional<FrameRate> declared = source.frames->frame_rate();
    if (declared && !declared->SameRateAs(source.manifest->frame_rate)) {
      summary.warnings.push_back(name + ": frames declare " +
                                 ToString(*declared) +
                                 " fps, manifest declares " +
                                 ToString(source.manifest->frame_rate));
    }
  }
  std::optional<int64_t> background_length;
  std::optional<FrameRate> background_rate;
  if (const auto* seq =
          std::get_if<std::shared_ptr<FrameSource>>(&job.background)) {
    if (!*seq || (*seq)->frame_count() < 1) {
      problems.push_back("background sequence has no frames");
    } else {
      background_length = (*seq)->frame_count();
      background_rate = (*seq)->frame_rate();
    }
  }
  if (!problems.empty()) {
    std::string message = "job validation failed: ";
    for (size_t i = 0; i < problems.size(); ++i) {
      if (i) message += "; ";
      message += problems[i];
    }
    throw Error(message);
  }

  const int64_t length = OutputLength(lengths, background_length);
  summary.frame_rate = OutputFrameRate(background_rate, rates, &summary.warnings);
  SequenceRunner runner(job, length);
  summary.frames_emitted = runner.Run(sink);
  return summary;
}

}  // namespace sceneshift
