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

#include "sceneshift/cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "sceneshift/io.h"

namespace sceneshift::cli {
namespace {

namespace fs = std::filesystem;

template <typename T>
bool ParseNumber(std::string_view text, T* out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string HexColor(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02X%02X%02X", c.r, c.g, c.b);
  return buf;
}

ResizePolicy ParseResize(std::string_view text, ResizePolicy policy) {
  if (text == "stretch") {
    policy.fit = FitMode::kStretch;
    policy.pad_color = Rgb{};
    return policy;
  }
  constexpr std::string_view kLetterbox = "letterbox";
  if (text.substr(0, kLetterbox.size()) == kLetterbox) {
    policy.fit = FitMode::kLetterbox;
    policy.pad_color = Rgb{};
    std::string_view rest = text.substr(kLetterbox.size());
    if (rest.empty()) return policy;
    unsigned value = 0;
    if (rest.size() == 7 && rest[0] == ':') {
      const char* begin = rest.data() + 1;
      auto [ptr, ec] = std::from_chars(begin, begin + 6, value, 16);
      if (ec == std::errc() && ptr == begin + 6) {
        policy.pad_color = {uint8_t(value >> 16), uint8_t(value >> 8),
                            uint8_t(value)};
        return policy;
      }
    }
  }
  throw UsageError("--resize: expected stretch or letterbox[:RRGGBB], got '" +
                   std::string(text) + "'");
}

std::string ResizeToString(const ResizePolicy& policy) {
  if (policy.fit == FitMode::kStretch) return "stretch";
  return "letterbox:" + HexColor(policy.pad_color);
}

// Frames written to a directory, created on the first frame.
class DirectorySink : public FrameSink {
 public:
  explicit DirectorySink(fs::path dir) : dir_(std::move(dir)) {}

  void Consume(FrameResult result) override {
    if (!prepared_) {
      fs::create_directories(dir_);
      fs::remove(dir_ / kIncompleteSentinel);
      prepared_ = true;
    }
    WriteImage(result.image, dir_ / FrameFileName(result.frame_index));
  }

 private:
  fs::path dir_;
  bool prepared_ = false;
};

class ImageFileSink : public FrameSink {
 public:
  explicit ImageFileSink(fs::path path) : path_(std::move(path)) {}
  void Consume(FrameResult result) override { WriteImage(result.image, path_); }

 private:
  fs::path path_;
};

class RawSink : public FrameSink {
 public:
  RawSink(std::ostream& out, Size size)
      : out_(out), writer_(out, size.width, size.height) {}
  void Consume(FrameResult result) override { writer_.Write(result.image); }
  void Flush() { out_.flush(); }

 private:
  std::ostream& out_;
  RawStreamWriter writer_;
};

// Forwards to another sink, recording selections and diagnostics.
class RecordingSink : public FrameSink {
 public:
  RecordingSink(FrameSink& inner, bool verbose, std::ostream& err)
      : inner_(inner), verbose_(verbose), err_(err) {}

  void Consume(FrameResult result) override {
    selections_.push_back(result.selected_ids_per_source);
    diagnostic_count_ += int64_t(result.diagnostics.size());
    if (verbose_) {
      for (const std::string& d : result.diagnostics) {
        err_ << "warning: " << d << "\n";
      }
    }
    inner_.Consume(std::move(result));
  }

  const std::vector<std::vector<std::set<int>>>& selections() const {
    return selections_;
  }
  int64_t diagnostic_count() const { return diagnostic_count_; }

 private:
  FrameSink& inner_;
  bool verbose_;
  std::ostream& err_;
  std::vector<std::vector<std::set<int>>> selections_;
  int64_t diagnostic_count_ = 0;
};

void WriteSelectionJson(const fs::path& path, FrameRate rate, bool complete,
                        const std::vector<std::vector<std::set<int>>>& frames) {
  nlohmann::ordered_json doc;
  doc["frame_rate"] = {{"num", rate.num}, {"den", rate.den}};
  doc["complete"] = complete;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (size_t i = 0; i < frames.size(); ++i) {
    nlohmann::ordered_json per_source = nlohmann::ordered_json::array();
    for (const std::set<int>& ids : frames[i]) per_source.push_back(ids);
    list.push_back({{"frame_index", i}, {"selected", std::move(per_source)}});
  }
  doc["frames"] = std::move(list);
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("failed to write " + path.string());
}

bool IsDirectoryOutput(const std::string& out) {
  return !IsSupportedImageExtension(fs::path(out));
}

}  // namespace

int DefaultWorkerCount() {
  return int(std::max(1u, std::thread::hardware_concurrency()));
}

RawFormat RawFormat::Parse(std::string_view text) {
  auto bad = [&]() -> UsageError {
    return UsageError("raw stream format must be WxH@fps (e.g. 640x480@30 or "
                      "640x480@30000/1001), got '" +
                      std::string(text) + "'");
  };
  const size_t x = text.find('x');
  const size_t at = text.find('@');
  if (x == std::string_view::npos || at == std::string_view::npos || at < x) {
    throw bad();
  }
  RawFormat f;
  if (!ParseNumber(text.substr(0, x), &f.width) ||
      !ParseNumber(text.substr(x + 1, at - x - 1), &f.height) || f.width < 1 ||
      f.height < 1) {
    throw bad();
  }
  const std::string_view rate = text.substr(at + 1);
  const size_t slash = rate.find('/');
  if (!ParseNumber(rate.substr(0, slash), &f.rate.num)) throw bad();
  f.rate.den = 1;
  if (slash != std::string_view::npos &&
      !ParseNumber(rate.substr(slash + 1), &f.rate.den)) {
    throw bad();
  }
  if (!f.rate.IsValid()) throw bad();
  return f;
}

std::string RawFormat::ToString() const {
  std::string s = std::to_string(width) + "x" + std::to_string(height) + "@" +
                  std::to_string(rate.num);
  if (rate.den != 1) s += "/" + std::to_string(rate.den);
  return s;
}

std::string UsageText() {
  return R"(usage: sceneshift extract [options]

Extract persons from source images or frame sequences and composite them onto
a new background.

Inputs (--source/--manifest/--select repeat once per source; later sources are
drawn on top):
  --source <dir|img|->        frame directory, still image, or - for --raw-in
  --manifest <json>           segmentation manifest for the matching --source
  --select top:<n>|ids:<list> persons to extract from the preceding --source
                              (default top:1)
  --background <dir|img>      background image or frame directory (canvas)

Output (one of):
  --out <dir|img>             frame directory (frame_000000.png, ...) or image
  --raw-out <WxH@fps>         headerless RGB24 frames on stdout

Options:
  --raw-in <WxH@fps>          geometry of the RGB24 frames read from stdin
  --resize stretch|letterbox[:RRGGBB]   (default stretch)
  --filter bilinear|nearest   source image filter (default bilinear)
  --rank-by bbox|mask         person ranking metric (default bbox)
  --workers <n>               frame workers (default: logical CPU count)
  --score-threshold <f>       drop detections scoring lower (default 0.5)
  --exhaustion drop|freeze    shorter sources after their end (default drop)
  --feather <px>              soft mask edge radius (default 0)
  --lenient                   ignore unknown manifest fields
  --emit-selection <path>     write per-frame selected ids as JSON
  --verbose                   report progress and per-frame warnings
)";
}

CliConfig ParseArgs(std::span<const std::string> args) {
  CliConfig config;
  config.workers = DefaultWorkerCount();

  CLI::App app{"sceneshift"};
  app.set_help_flag();
  CLI::App* extract = app.add_subcommand("extract");
  extract->set_help_flag();
  app.require_subcommand(1, 1);

  std::vector<std::string> manifests;
  std::vector<bool> select_given;
  extract
      ->add_option_function<std::string>(
          "--source",
          [&](const std::string& path) {
            config.sources.push_back({path, "", SelectionSpec::Top(1)});
            select_given.push_back(false);
          })
      ->trigger_on_parse();
  extract
      ->add_option_function<std::string>(
          "--manifest",
          [&](const std::string& path) { manifests.push_back(path); })
      ->trigger_on_parse();
  extract
      ->add_option_function<std::string>(
          "--select",
          [&](const std::string& text) {
            if (config.sources.empty()) {
              throw UsageError("--select must follow the --source it applies to");
            }
            if (select_given.back()) {
              throw UsageError("--select given twice for source " +
                               config.sources.back().path);
            }
            try {
              config.sources.back().selection = SelectionSpec::Parse(text);
            } catch (const SelectionError& e) {
              throw UsageError(std::string("--select: ") + e.what());
            }
            select_given.back() = true;
          })
      ->trigger_on_parse();

  std::string background, out, resize, filter, rank_by, exhaustion, raw_in,
      raw_out, emit_selection;
  extract->add_option("--background", background)->required();
  CLI::Option* out_opt = extract->add_option("--out", out);
  CLI::Option* resize_opt = extract->add_option("--resize", resize);
  CLI::Option* filter_opt = extract->add_option("--filter", filter);
  CLI::Option* rank_opt = extract->add_option("--rank-by", rank_by);
  CLI::Option* workers_opt = extract->add_option("--workers", config.workers);
  extract->add_option("--score-threshold", config.score_threshold);
  CLI::Option* exhaustion_opt = extract->add_option("--exhaustion", exhaustion);
  extract->add_option("--feather", config.feather);
  CLI::Option* raw_in_opt = extract->add_option("--raw-in", raw_in);
  CLI::Option* raw_out_opt = extract->add_option("--raw-out", raw_out);
  extract->add_flag("--lenient", config.lenient);
  CLI::Option* emit_opt =
      extract->add_option("--emit-selection", emit_selection);
  extract->add_flag("--verbose", config.verbose);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (config.sources.empty()) throw UsageError("at least one --source is required");
  if (manifests.size() != config.sources.size()) {
    throw UsageError("each --source needs one --manifest (got " +
                     std::to_string(config.sources.size()) + " sources and " +
                     std::to_string(manifests.size()) + " manifests)");
  }
  for (size_t i = 0; i < manifests.size(); ++i) {
    config.sources[i].manifest = manifests[i];
  }
  config.background = background;
  if (*out_opt) config.out = out;
  if (*raw_out_opt) config.raw_out = RawFormat::Parse(raw_out);
  if (*raw_in_opt) config.raw_in = RawFormat::Parse(raw_in);
  if (config.out && config.raw_out) {
    throw UsageError("--out and --raw-out are mutually exclusive");
  }
  if (!config.out && !config.raw_out) {
    throw UsageError("one of --out or --raw-out is required");
  }
  const auto stdin_sources = std::count_if(
      config.sources.begin(), config.sources.end(),
      [](const SourceArgs& s) { return s.path == "-"; });
  if (stdin_sources > 1) throw UsageError("only one --source may read stdin");
  if (stdin_sources == 1 && !config.raw_in) {
    throw UsageError("--source - needs --raw-in WxH@fps");
  }
  if (stdin_sources == 0 && config.raw_in) {
    throw UsageError("--raw-in needs a --source -");
  }
  if (config.background == "-") {
    throw UsageError("--background cannot read stdin");
  }

  if (*resize_opt) config.resize = ParseResize(resize, config.resize);
  if (*filter_opt) {
    if (filter == "bilinear") {
      config.resize.filter = ImageFilter::kBilinear;
    } else if (filter == "nearest") {
      config.resize.filter = ImageFilter::kNearest;
    } else {
      throw UsageError("--filter: expected bilinear or nearest, got '" +
                       filter + "'");
    }
  }
  if (*rank_opt) {
    if (rank_by == "bbox") {
      config.rank_by = AreaMetric::kBoundingBox;
    } else if (rank_by == "mask") {
      config.rank_by = AreaMetric::kMaskPixels;
    } else {
      throw UsageError("--rank-by: expected bbox or mask, got '" + rank_by +
                       "'");
    }
  }
  if (*exhaustion_opt) {
    if (exhaustion == "drop") {
      config.exhaustion = ExhaustionPolicy::kDrop;
    } else if (exhaustion == "freeze") {
      config.exhaustion = ExhaustionPolicy::kFreeze;
    } else {
      throw UsageError("--exhaustion: expected drop or freeze, got '" +
                       exhaustion + "'");
    }
  }
  if (*workers_opt && config.workers < 1) {
    throw UsageError("--workers must be at least 1");
  }
  if (!(config.score_threshold >= 0.0 && config.score_threshold <= 1.0)) {
    throw UsageError("--score-threshold must lie in [0, 1]");
  }
  if (config.feather < 0) throw UsageError("--feather must be non-negative");
  if (*emit_opt) config.emit_selection = emit_selection;
  return config;
}

std::vector<std::string> ToArgs(const CliConfig& c) {
  std::vector<std::string> args = {"extract"};
  for (const SourceArgs& s : c.sources) {
    args.insert(args.end(), {"--source", s.path, "--manifest", s.manifest,
                             "--select", s.selection.ToString()});
  }
  args.insert(args.end(), {"--background", c.background});
  if (c.out) args.insert(args.end(), {"--out", *c.out});
  if (c.raw_out) args.insert(args.end(), {"--raw-out", c.raw_out->ToString()});
  if (c.raw_in) args.insert(args.end(), {"--raw-in", c.raw_in->ToString()});
  args.insert(args.end(),
              {"--resize", ResizeToString(c.resize), "--filter",
               c.resize.filter == ImageFilter::kBilinear ? "bilinear" : "nearest",
               "--rank-by",
               c.rank_by == AreaMetric::kBoundingBox ? "bbox" : "mask",
               "--workers", std::to_string(c.workers), "--score-threshold",
               FormatDouble(c.score_threshold), "--exhaustion",
               c.exhaustion == ExhaustionPolicy::kDrop ? "drop" : "freeze",
               "--feather", std::to_string(c.feather)});
  if (c.lenient) args.push_back("--lenient");
  if (c.emit_selection) {
    args.insert(args.end(), {"--emit-selection", *c.emit_selection});
  }
  if (c.verbose) args.push_back("--verbose");
  return args;
}

int Run(const CliConfig& config, std::istream& in, std::ostream& out,
        std::ostream& err) {
  std::unique_ptr<FrameSink> sink;
  std::unique_ptr<RecordingSink> recorder;
  FrameRate output_rate;
  bool directory_output = false;
  bool started = false;
  try {
    const ManifestOptions manifest_options{!config.lenient,
                                           config.score_threshold};
    std::vector<std::string> warnings;
    CompositeJob job;
    job.workers = config.workers;
    job.exhaustion = config.exhaustion;
    job.frame_options.resize = config.resize;
    job.frame_options.metric = config.rank_by;
    job.frame_options.feather_radius = config.feather;

    for (const SourceArgs& s : config.sources) {
      SourceInput input;
      input.selection = s.selection;
      input.manifest = std::make_shared<const SequenceManifest>(
          LoadManifest(s.manifest, manifest_options));
      if (s.path == "-") {
        input.frames = std::make_shared<RawStreamSource>(
            in, Size{config.raw_in->width, config.raw_in->height},
            input.manifest->frame_count(), config.raw_in->rate);
      } else if (fs::is_directory(s.path)) {
        input.frames = std::make_shared<FrameDirectorySource>(s.path);
      } else {
        input.frames = std::make_shared<StillImageSource>(s.path, &warnings);
      }
      job.sources.push_back(std::move(input));
    }

    Size canvas;
    std::optional<int64_t> background_length;
    if (fs::is_directory(config.background)) {
      auto seq = std::make_shared<FrameDirectorySource>(config.background);
      canvas = seq->frame_size();
      background_length = seq->frame_count();
      job.background = std::move(seq);
    } else {
      RasterImage image = ReadImage(config.background, &warnings);
      canvas = image.size();
      job.background = std::move(image);
    }
    for (const std::string& w : warnings) err << "warning: " << w << "\n";

    std::vector<int64_t> lengths;
    for (const SourceInput& s : job.sources) {
      lengths.push_back(s.frames->frame_count());
    }
    const int64_t length = OutputLength(lengths, background_length);

    if (config.raw_out) {
      if (config.raw_out->width != canvas.width ||
          config.raw_out->height != canvas.height) {
        throw Error("--raw-out " + config.raw_out->ToString() +
                    " does not match the " + ToString(canvas) +
                    " background canvas");
      }
      sink = std::make_unique<RawSink>(out, canvas);
    } else if (IsDirectoryOutput(*config.out)) {
      directory_output = true;
      sink = std::make_unique<DirectorySink>(*config.out);
    } else {
      if (length != 1) {
        throw Error("output has " + std::to_string(length) +
                    " frames but --out " + *config.out +
                    " names a single image; use a directory");
      }
      sink = std::make_unique<ImageFileSink>(*config.out);
    }
    recorder = std::make_unique<RecordingSink>(*sink, config.verbose, err);

    if (config.verbose) {
      err << "sceneshift: " << job.sources.size() << " source(s), "
          << length << " output frame(s) on a " << ToString(canvas)
          << " canvas, " << config.workers << " worker(s)\n";
    }
    const auto start = std::chrono::steady_clock::now();
    started = true;
    const SequenceSummary summary = ProcessSequence(job, *recorder);
    output_rate = summary.frame_rate;
    if (auto* raw = dynamic_cast<RawSink*>(sink.get())) raw->Flush();
    for (const std::string& w : summary.warnings) err << "warning: " << w << "\n";
    if (config.raw_out && !config.raw_out->rate.SameRateAs(summary.frame_rate)) {
      err << "warning: --raw-out declares " << ToString(config.raw_out->rate)
          << " fps, the output sequence runs at "
          << ToString(summary.frame_rate) << "\n";
    }
    if (!config.verbose && recorder->diagnostic_count() > 0) {
      err << "warning: " << recorder->diagnostic_count()
          << " per-frame selection warning(s); rerun with --verbose\n";
    }
    if (config.emit_selection) {
      WriteSelectionJson(*config.emit_selection, summary.frame_rate, true,
                         recorder->selections());
    }
    if (config.verbose) {
      const double seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
      err << "sceneshift: wrote " << summary.frames_emitted << " frame(s) at "
          << ToString(summary.frame_rate) << " fps in " << seconds << " s\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    if (started && directory_output) {
      try {
        fs::create_directories(*config.out);
        std::ofstream(fs::path(*config.out) / kIncompleteSentinel)
            << e.what() << "\n";
      } catch (const std::exception& e2) {
        err << "error: could not mark " << *config.out
            << " incomplete: " << e2.what() << "\n";
      }
    }
    if (started && recorder && config.emit_selection) {
      try {
        WriteSelectionJson(*config.emit_selection, output_rate, false,
                           recorder->selections());
      } catch (const std::exception&) {
      }
    }
    return kExitProcessingError;
  }
}

int Main(std::span<const std::string> args, std::istream& in,
         std::ostream& out, std::ostream& err) {
  const bool wants_help =
      std::any_of(args.begin(), args.end(), [](const std::string& a) {
        return a == "--help" || a == "-h";
      });
  if (wants_help) {
    err << UsageText();
    return kExitOk;
  }
  CliConfig config;
  try {
    config = ParseArgs(args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << UsageText();
    return kExitUsage;
  }
  return Run(config, in, out, err);
}

}  // namespace sceneshift::cli
