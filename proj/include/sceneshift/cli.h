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

#ifndef SCENESHIFT_CLI_H_
#define SCENESHIFT_CLI_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sceneshift/compositor.h"
#include "sceneshift/error.h"
#include "sceneshift/manifest.h"
#include "sceneshift/pipeline.h"
#include "sceneshift/selection.h"

namespace sceneshift::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitProcessingError = 1;
inline constexpr int kExitUsage = 2;

// Name of the sentinel file left in an output directory by a failed run.
inline constexpr char kIncompleteSentinel[] = "INCOMPLETE";

class UsageError : public Error {
 public:
  using Error::Error;
};

// Geometry and rate of a headerless RGB24 stream, written "WxH@fps" where
// fps is an integer or num/den.
struct RawFormat {
  int width = 0;
  int height = 0;
  FrameRate rate;

  static RawFormat Parse(std::string_view text);  // throws UsageError
  std::string ToString() const;

  friend bool operator==(const RawFormat&, const RawFormat&) = default;
};

struct SourceArgs {
  std::string path;  // image, frame directory, or "-" for the raw input
  std::string manifest;
  SelectionSpec selection = SelectionSpec::Top(1);

  friend bool operator==(const SourceArgs&, const SourceArgs&) = default;
};

struct CliConfig {
  std::vector<SourceArgs> sources;
  std::string background;
  std::optional<std::string> out;
  ResizePolicy resize;
  AreaMetric rank_by = AreaMetric::kBoundingBox;
  int workers = 1;
  double score_threshold = 0.5;
  ExhaustionPolicy exhaustion = ExhaustionPolicy::kDrop;
  int feather = 0;
  std::optional<RawFormat> raw_in;
  std::optional<RawFormat> raw_out;
  bool lenient = false;
  std::optional<std::string> emit_selection;
  bool verbose = false;

  friend bool operator==(const CliConfig&, const CliConfig&) = default;
};

int DefaultWorkerCount();

// `args` excludes the program name and starts with the "extract" command.
// --source/--manifest/--select may repeat: the i-th --manifest belongs to the
// i-th --source, and a --select applies to the --source before it. Throws
// UsageError.
CliConfig ParseArgs(std::span<const std::string> args);

// Flags that ParseArgs maps back onto `config`.
std::vector<std::string> ToArgs(const CliConfig& config);

std::string UsageText();

// Executes a parsed job. Raw streams use `in` and `out`; messages go to `err`.
// Returns kExitOk, or kExitProcessingError after marking a partially written
// output directory with the INCOMPLETE sentinel.
int Run(const CliConfig& config, std::istream& in, std::ostream& out,
        std::ostream& err);

// Parse and run, mapping usage errors to kExitUsage.
int Main(std::span<const std::string> args, std::istream& in,
         std::ostream& out, std::ostream& err);

}  // namespace sceneshift::cli

#endif  // SCENESHIFT_CLI_H_
