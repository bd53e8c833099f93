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

#ifndef SCENESHIFT_IO_H_
#define SCENESHIFT_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sceneshift/image.h"
#include "sceneshift/manifest.h"

namespace sceneshift {

// ---------------------------------------------------------------------------
// Still images
// ---------------------------------------------------------------------------

// Reads 8-bit RGB or RGBA PNG, or binary PPM (P6, maxval 255). The format is
// detected from the file contents. RGBA alpha is dropped and a warning is
// appended to `warnings` when given. Throws FormatError naming the format
// found when it is unsupported, IoError when the file cannot be read.
RasterImage ReadImage(const std::filesystem::path& path,
                      std::vector<std::string>* warnings = nullptr);

// Writes 8-bit RGB PNG (.png) or P6 PPM (.ppm), chosen by extension. Throws
// IoError for unknown extensions (listing the supported ones) and for
// write failures.
void WriteImage(const RasterImage& image, const std::filesystem::path& path);

bool IsSupportedImageExtension(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Frame directories: frame_000000.png, frame_000001.png, ...
// ---------------------------------------------------------------------------

std::string FrameFileName(int64_t index, const std::string& extension = ".png");

struct FrameListing {
  std::vector<std::filesystem::path> paths;  // paths[i] holds frame i
  std::string extension;                     // ".png" or ".ppm"

  int64_t frame_count() const { return int64_t(paths.size()); }
};

// Files not following the naming convention are ignored. Throws IoError for
// an empty listing ("no frames found"), a gap (naming the first missing
// index), or mixed extensions.
FrameListing EnumerateFrames(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Raw RGB24 streams: headerless, row-major, frames concatenated.
// ---------------------------------------------------------------------------

class RawStreamReader {
 public:
  RawStreamReader(std::istream& in, int width, int height);

  // Next frame, or nullopt at a clean end of stream. A partial frame throws
  // TruncatedStreamError carrying the number of whole frames read.
  std::optional<RasterImage> Next();

  int64_t frames_read() const { return frames_read_; }
  size_t frame_bytes() const { return frame_bytes_; }

 private:
  std::istream& in_;
  int width_;
  int height_;
  size_t frame_bytes_;
  int64_t frames_read_ = 0;
};

class RawStreamWriter {
 public:
  RawStreamWriter(std::ostream& out, int width, int height);

  // Throws DimensionError when the frame is not width x height, IoError when
  // the stream fails.
  void Write(const RasterImage& frame);

  int64_t frames_written() const { return frames_written_; }

 private:
  std::ostream& out_;
  int width_;
  int height_;
  int64_t frames_written_ = 0;
};

// ---------------------------------------------------------------------------
// Frame sources
// ---------------------------------------------------------------------------

class FrameSource {
 public:
  virtual ~FrameSource() = default;

  virtual int64_t frame_count() const = 0;
  virtual Size frame_size() const = 0;
  virtual std::optional<FrameRate> frame_rate() const { return std::nullopt; }

  // Random-access sources allow Read() of any index from several threads at
  // once. Sequential sources must be read once each, in ascending order,
  // by a single thread.
  virtual bool random_access() const { return true; }

  virtual RasterImage Read(int64_t index) = 0;
};

class MemoryFrameSource : public FrameSource {
 public:
  // Frames must be non-empty and share one size.
  explicit MemoryFrameSource(std::vector<RasterImage> frames,
                             std::optional<FrameRate> rate = std::nullopt);

  int64_t frame_count() const override { return int64_t(frames_.size()); }
  Size frame_size() const override { return frames_.front().size(); }
  std::optional<FrameRate> frame_rate() const override { return rate_; }
  RasterImage Read(int64_t index) override;

 private:
  std::vector<RasterImage> frames_;
  std::optional<FrameRate> rate_;
};

// One-frame source backed by an image file.
class StillImageSource : public FrameSource {
 public:
  explicit StillImageSource(const std::filesystem::path& path,
                            std::vector<std::string>* warnings = nullptr);

  int64_t frame_count() const override { return 1; }
  Size frame_size() const override { return image_.size(); }
  RasterImage Read(int64_t index) override;

 private:
  RasterImage image_;
};

// Frames are decoded on demand. The first frame is read at construction to
// learn the frame size; any frame of a different size fails to read.
class FrameDirectorySource : public FrameSource {
 public:
  explicit FrameDirectorySource(const std::filesystem::path& dir,
                                std::optional<FrameRate> rate = std::nullopt);

  int64_t frame_count() const override { return listing_.frame_count(); }
  Size frame_size() const override { return size_; }
  std::optional<FrameRate> frame_rate() const override { return rate_; }
  RasterImage Read(int64_t index) override;

 private:
  FrameListing listing_;
  Size size_;
  std::optional<FrameRate> rate_;
};

// Sequential source over a raw RGB24 stream with a known frame count.
class RawStreamSource : public FrameSource {
 public:
  RawStreamSource(std::istream& in, Size size, int64_t frame_count,
                  std::optional<FrameRate> rate = std::nullopt);

  int64_t frame_count() const override { return frame_count_; }
  Size frame_size() const override { return size_; }
  std::optional<FrameRate> frame_rate() const override { return rate_; }
  bool random_access() const override { return false; }
  // Throws TruncatedStreamError if the stream ends early.
  RasterImage Read(int64_t index) override;

 private:
  RawStreamReader reader_;
  Size size_;
  int64_t frame_count_;
  std::optional<FrameRate> rate_;
};

}  // namespace sceneshift

#endif  // SCENESHIFT_IO_H_
