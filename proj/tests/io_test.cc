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

#include <gtest/gtest.h>
#include <png.h>
#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "sceneshift/error.h"
#include "sceneshift/io.h"
#include "support/synth.h"

namespace sceneshift {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("sceneshift_io_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void WriteBytes(const fs::path& path, const std::string& bytes) {
  std::ofstream(path, std::ios::binary) << bytes;
}

// Writes a PNG through libpng's simplified API so tests can produce layouts
// the library never writes itself.
void WritePngWithFormat(const fs::path& path, int w, int h, png_uint_32 format) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = png_uint_32(w);
  image.height = png_uint_32(h);
  image.format = format;
  std::vector<uint8_t> buffer(PNG_IMAGE_SIZE(image), 0x80);
  ASSERT_TRUE(png_image_write_to_file(&image, path.c_str(), 0, buffer.data(),
                                      0, nullptr))
      << image.message;
}

std::string ErrorText(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

TEST(ImageIoTest, ReadsKnownPpm) {
  TempDir dir;
  const fs::path p = dir.path() / "known.ppm";
  WriteBytes(p, std::string("P6\n2 2\n255\n") +
                    std::string("\xff\x00\x00\x00\xff\x00\x00\x00\xff\x10\x20\x30",
                                12));
  const RasterImage img = ReadImage(p);
  ASSERT_EQ(img.size(), (Size{2, 2}));
  EXPECT_EQ(img.At(0, 0), (Rgb{255, 0, 0}));
  EXPECT_EQ(img.At(1, 0), (Rgb{0, 255, 0}));
  EXPECT_EQ(img.At(0, 1), (Rgb{0, 0, 255}));
  EXPECT_EQ(img.At(1, 1), (Rgb{0x10, 0x20, 0x30}));
}

TEST(ImageIoTest, RoundTripsBothFormats) {
  TempDir dir;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const RasterImage img = synth::RandomImage(rng, int(rng() % 50) + 1,
                                               int(rng() % 50) + 1);
    for (const char* ext : {".png", ".ppm"}) {
      const fs::path p = dir.path() / (std::to_string(trial) + ext);
      WriteImage(img, p);
      EXPECT_EQ(ReadImage(p), img) << p;
    }
  }
  const RasterImage one(1, 1, Rgb{1, 2, 3});
  WriteImage(one, dir.path() / "one.png");
  EXPECT_EQ(ReadImage(dir.path() / "one.png"), one);
}

TEST(ImageIoTest, RgbaDropsAlphaWithWarning) {
  TempDir dir;
  const fs::path p = dir.path() / "rgba.png";
  WritePngWithFormat(p, 3, 2, PNG_FORMAT_RGBA);
  std::vector<std::string> warnings;
  const RasterImage img = ReadImage(p, &warnings);
  EXPECT_EQ(img, RasterImage(3, 2, Rgb{0x80, 0x80, 0x80}));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("alpha"), std::string::npos) << warnings[0];
}

TEST(ImageIoTest, RejectsUnsupportedPngLayouts) {
  TempDir dir;
  const fs::path deep = dir.path() / "deep.png";
  WritePngWithFormat(deep, 2, 2, PNG_FORMAT_LINEAR_RGB);
  const std::string msg = ErrorText([&] { ReadImage(deep); });
  EXPECT_NE(msg.find("16-bit"), std::string::npos) << msg;
  EXPECT_THROW(ReadImage(deep), FormatError);

  const fs::path gray = dir.path() / "gray.png";
  WritePngWithFormat(gray, 2, 2, PNG_FORMAT_GRAY);
  EXPECT_THROW(ReadImage(gray), FormatError);
}

TEST(ImageIoTest, RejectsUnknownContent) {
  TempDir dir;
  const fs::path jpeg = dir.path() / "photo.png";
  WriteBytes(jpeg, "\xff\xd8\xff\xe0 not really a jpeg");
  const std::string msg = ErrorText([&] { ReadImage(jpeg); });
  EXPECT_NE(msg.find("JPEG"), std::string::npos) << msg;

  const fs::path wide = dir.path() / "wide.ppm";
  WriteBytes(wide, "P6\n1 1\n65535\n\0\0\0\0\0\0");
  EXPECT_THROW(ReadImage(wide), FormatError);

  const fs::path cut = dir.path() / "cut.ppm";
  WriteBytes(cut, "P6\n2 2\n255\n\x01\x02");
  EXPECT_THROW(ReadImage(cut), FormatError);

  EXPECT_THROW(ReadImage(dir.path() / "missing.png"), IoError);
}

TEST(ImageIoTest, WriteRejectsUnknownExtension) {
  TempDir dir;
  const std::string msg =
      ErrorText([&] { WriteImage(RasterImage(1, 1), dir.path() / "x.bmp"); });
  EXPECT_NE(msg.find(".png"), std::string::npos) << msg;
  EXPECT_NE(msg.find(".ppm"), std::string::npos) << msg;
  EXPECT_TRUE(IsSupportedImageExtension("a/b.PNG"));
  EXPECT_FALSE(IsSupportedImageExtension("a/b.jpg"));
}

TEST(FrameDirectoryTest, EnumeratesInIndexOrder) {
  TempDir dir;
  EXPECT_EQ(FrameFileName(7), "frame_000007.png");
  std::vector<RasterImage> frames;
  for (int i = 2; i >= 0; --i) {
    frames.insert(frames.begin(), RasterImage(4, 3, Rgb{uint8_t(i), 0, 0}));
    WriteImage(frames.front(), dir.path() / FrameFileName(i));
  }
  WriteBytes(dir.path() / "notes.txt", "ignored");
  const FrameListing listing = EnumerateFrames(dir.path());
  ASSERT_EQ(listing.frame_count(), 3);
  EXPECT_EQ(listing.extension, ".png");
  FrameDirectorySource source(dir.path());
  ASSERT_EQ(source.frame_count(), 3);
  EXPECT_EQ(source.frame_size(), (Size{4, 3}));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(source.Read(i), frames[size_t(i)]);
}

TEST(FrameDirectoryTest, ReportsGapsEmptyAndMixed) {
  TempDir dir;
  EXPECT_NE(ErrorText([&] { EnumerateFrames(dir.path()); }).find("no frames"),
            std::string::npos);
  for (int i : {0, 1, 3}) WriteImage(RasterImage(2, 2), dir.path() / FrameFileName(i));
  const std::string gap = ErrorText([&] { EnumerateFrames(dir.path()); });
  EXPECT_NE(gap.find("2"), std::string::npos) << gap;
  EXPECT_THROW(EnumerateFrames(dir.path()), IoError);

  WriteImage(RasterImage(2, 2), dir.path() / FrameFileName(2, ".ppm"));
  EXPECT_THROW(EnumerateFrames(dir.path()), IoError);
}

TEST(FrameDirectoryTest, RejectsMixedSizes) {
  TempDir dir;
  WriteImage(RasterImage(2, 2), dir.path() / FrameFileName(0));
  WriteImage(RasterImage(3, 2), dir.path() / FrameFileName(1));
  EXPECT_THROW(
      {
        FrameDirectorySource source(dir.path());
        source.Read(0);
        source.Read(1);
      },
      Error);
}

TEST(RawStreamTest, TwoFramesAreTwentyFourBytes) {
  std::mt19937_64 rng(8);
  const RasterImage a = synth::RandomImage(rng, 2, 2);
  const RasterImage b = synth::RandomImage(rng, 2, 2);
  std::stringstream stream;
  RawStreamWriter writer(stream, 2, 2);
  writer.Write(a);
  writer.Write(b);
  EXPECT_EQ(stream.str().size(), 24u);
  EXPECT_EQ(stream.str().substr(0, 12),
            std::string(a.bytes().begin(), a.bytes().end()));
  EXPECT_THROW(writer.Write(RasterImage(3, 2)), DimensionError);

  RawStreamReader reader(stream, 2, 2);
  EXPECT_EQ(reader.Next(), a);
  EXPECT_EQ(reader.Next(), b);
  EXPECT_EQ(reader.Next(), std::nullopt);
  EXPECT_EQ(reader.frames_read(), 2);
}

TEST(RawStreamTest, PartialFrameReportsCompletedCount) {
  std::istringstream stream(std::string(23, '\x07'));
  RawStreamReader reader(stream, 2, 2);
  ASSERT_TRUE(reader.Next().has_value());
  try {
    reader.Next();
    FAIL() << "expected TruncatedStreamError";
  } catch (const TruncatedStreamError& e) {
    EXPECT_EQ(e.frames_completed(), 1);
  }
}

TEST(RawStreamTest, SourceReadsSequentially) {
  std::istringstream stream(std::string(36, '\x05'));
  RawStreamSource source(stream, {2, 2}, 4);
  EXPECT_FALSE(source.random_access());
  for (int i = 0; i < 3; ++i) EXPECT_EQ(source.Read(i), RasterImage(2, 2, Rgb{5, 5, 5}));
  EXPECT_THROW(source.Read(3), TruncatedStreamError);
}

TEST(StillImageTest, ServesOneFrame) {
  TempDir dir;
  const RasterImage img(5, 4, Rgb{9, 8, 7});
  WriteImage(img, dir.path() / "still.ppm");
  StillImageSource source(dir.path() / "still.ppm");
  EXPECT_EQ(source.frame_count(), 1);
  EXPECT_EQ(source.Read(0), img);
}

}  // namespace
}  // namespace sceneshift
