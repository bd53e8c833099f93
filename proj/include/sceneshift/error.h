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

#ifndef SCENESHIFT_ERROR_H_
#define SCENESHIFT_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sceneshift {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed mask encoding or unsupported/corrupt image data.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Shapes that must agree do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Filesystem or stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

// A raw frame stream ended in the middle of a frame, or before the expected
// number of frames was delivered.
class TruncatedStreamError : public IoError {
 public:
  TruncatedStreamError(const std::string& what, int64_t frames_completed)
      : IoError(what), frames_completed_(frames_completed) {}
  int64_t frames_completed() const { return frames_completed_; }

 private:
  int64_t frames_completed_;
};

class ManifestError : public Error {
 public:
  enum class Kind { kParse, kSchema, kValidation };

  ManifestError(Kind kind, const std::string& what)
      : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class SelectionError : public Error {
 public:
  using Error::Error;
};

// Failure while processing one frame of a sequence. source_index is -1 when
// the failure is not attributable to a single source.
class FrameError : public Error {
 public:
  FrameError(const std::string& what, int64_t frame_index, int source_index)
      : Error(what), frame_index_(frame_index), source_index_(source_index) {}
  int64_t frame_index() const { return frame_index_; }
  int source_index() const { return source_index_; }

 private:
  int64_t frame_index_;
  int source_index_;
};

// A sequence job aborted. Frames [0, frames_completed) reached the sink; the
// output is incomplete.
class PipelineError : public Error {
 public:
  PipelineError(const std::string& what, int64_t frame_index,
                int64_t frames_completed)
      : Error(what),
        frame_index_(frame_index),
        frames_completed_(frames_completed) {}
  int64_t frame_index() const { return frame_index_; }
  int64_t frames_completed() const { return frames_completed_; }

 private:
  int64_t frame_index_;
  int64_t frames_completed_;
};

}  // namespace sceneshift

#endif  // SCENESHIFT_ERROR_H_
