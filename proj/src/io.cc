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

#include "sceneshift/io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <cerrno>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <system_error>

#include "sceneshift/error.h"

namespace sceneshift {
namespace {

namespace fs = std::filesystem;

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

std::vector<uint8_t> ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path.string());
  return data;
}

// --- PNG --------------------------------------------------------------------

struct PngErrorState {
  char message[256];
};

void PngError(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof(state->message), "%s", msg);
  png_longjmp(png, 1);
}

void PngWarning(png_structp, png_const_charp) {}

struct PngReadBuffer {
  const uint8_t* data;
  size_t size;
  size_t pos;
};

void PngReadFromBuffer(png_structp png, png_bytep out, png_size_t n) {
  auto* buf = static_cast<PngReadBuffer*>(png_get_io_ptr(png));
  if (n > buf->size - buf->pos) png_error(png, "unexpected end of PNG data");
  std::memcpy(out, buf->data + buf->pos, n);
  buf->pos += n;
}

const char* PngColorTypeName(int color_type) {
  switch (color_type) {
    case PNG_COLOR_TYPE_GRAY:
      return "grayscale";
    case PNG_COLOR_TYPE_GRAY_ALPHA:
      return "grayscale+alpha";
    case PNG_COLOR_TYPE_PALETTE:
      return "palette";
    case PNG_COLOR_TYPE_RGB:
      return "RGB";
    case PNG_COLOR_TYPE_RGB_ALPHA:
      return "RGBA";
  }
  return "unknown color type";
}

struct PngHeader {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
};

// Decodes into `pixels` with `channels` bytes per pixel. The C++ objects
// touched after setjmp all outlive the jump target.
bool DecodePng(const std::vector<uint8_t>& file, PngHeader& header,
               std::vector<uint8_t>& pixels, std::vector<png_bytep>& rows,
               PngErrorState& err, bool& unsupported) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err,
                                           PngError, PngWarning);
  if (png == nullptr) {
    std::snprintf(err.message, sizeof(err.message), "out of memory");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    std::snprintf(err.message, sizeof(err.message), "out of memory");
    return false;
  }
  PngReadBuffer buffer{file.data(), file.size(), 0};
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, &buffer, PngReadFromBuffer);
  png_read_info(png, info);
  header.width = png_get_image_width(png, info);
  header.height = png_get_image_height(png, info);
  header.bit_depth = png_get_bit_depth(png, info);
  header.color_type = png_get_color_type(png, info);
  if (header.bit_depth != 8 || (header.color_type != PNG_COLOR_TYPE_RGB &&
                                header.color_type != PNG_COLOR_TYPE_RGB_ALPHA)) {
    unsupported = true;
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  const size_t stride = png_get_rowbytes(png, info);
  pixels.resize(stride * header.height);
  rows.resize(header.height);
  for (png_uint_32 y = 0; y < header.height; ++y) {
    rows[y] = pixels.data() + stride * y;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

RasterImage ReadPng(const std::vector<uint8_t>& file, const fs::path& path,
                    std::vector<std::string>* warnings) {
  PngHeader header;
  std::vector<uint8_t> pixels;
  std::vector<png_bytep> rows;
  PngErrorState err{};
  bool unsupported = false;
  if (!DecodePng(file, header, pixels, rows, err, unsupported)) {
    if (unsupported) {
      throw FormatError(path.string() + ": unsupported PNG format: " +
                        std::to_string(header.bit_depth) + "-bit " +
                        PngColorTypeName(header.color_type) +
                        " (only 8-bit RGB and RGBA are supported)");
    }
    throw FormatError(path.string() + ": corrupt PNG: " + err.message);
  }
  const int w = int(header.width);
  const int h = int(header.height);
  if (header.color_type == PNG_COLOR_TYPE_RGB) {
    return RasterImage(w, h, std::move(pixels));
  }
  if (warnings != nullptr) {
    warnings->push_back(path.string() + ": RGBA image, alpha channel discarded");
  }
  std::vector<uint8_t> rgb(size_t(w) * h * 3);
  for (size_t p = 0; p < size_t(w) * h; ++p) {
    std::memcpy(&rgb[3 * p], &pixels[4 * p], 3);
  }
  return RasterImage(w, h, std::move(rgb));
}

struct FileCloser {
  void operator()(FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};

bool EncodePng(const RasterImage& image, FILE* fp, PngErrorState& err,
               std::vector<png_bytep>& rows) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err,
                                            PngError, PngWarning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, png_uint_32(image.width()),
               png_uint_32(image.height()), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

void WritePng(const RasterImage& image, const fs::path& path) {
  std::unique_ptr<FILE, FileCloser> fp(std::fopen(path.c_str(), "wb"));
  if (!fp) {
    throw IoError("cannot open " + path.string() +
                  " for writing: " + std::strerror(errno));
  }
  std::vector<png_bytep> rows(image.height());
  std::span<const uint8_t> bytes = image.bytes();
  for (int y = 0; y < image.height(); ++y) {
    rows[y] = const_cast<png_bytep>(bytes.data() + size_t(y) * 3 * image.width());
  }
  PngErrorState err{};
  if (!EncodePng(image, fp.get(), err, rows)) {
    throw IoError("failed to write PNG " + path.string() + ": " + err.message);
  }
  if (std::fclose(fp.release()) != 0) {
    throw IoError("failed to write PNG " + path.string() + ": " +
                  std::strerror(errno));
  }
}

// --- PPM --------------------------------------------------------------------

class PpmHeaderParser {
 public:
  PpmHeaderParser(const std::vector<uint8_t>& data, const fs::path& path)
      : data_(data), path_(path) {}

  // Reads one whitespace-delimited decimal field, skipping '#' comments.
  int64_t Field(const char* name) {
    SkipSpaceAndComments();
    int64_t value = 0;
    size_t digits = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_]) && digits < 10) {
      value = value * 10 + (data_[pos_++] - '0');
      ++digits;
    }
    if (digits == 0 || (pos_ < data_.size() && std::isdigit(data_[pos_]))) {
      throw FormatError(path_.string() + ": malformed PPM header (" + name +
                        ")");
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from the raster.
  size_t RasterStart() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) {
      throw FormatError(path_.string() + ": malformed PPM header");
    }
    return pos_ + 1;
  }

  void Skip(size_t n) { pos_ += n; }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < data_.size()) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<uint8_t>& data_;
  const fs::path& path_;
  size_t pos_ = 0;
};

RasterImage ReadPpm(const std::vector<uint8_t>& file, const fs::path& path) {
  PpmHeaderParser parser(file, path);
  parser.Skip(2);
  const int64_t w = parser.Field("width");
  const int64_t h = parser.Field("height");
  const int64_t maxval = parser.Field("maxval");
  if (w < 1 || h < 1 || w > 1 << 20 || h > 1 << 20) {
    throw FormatError(path.string() + ": unsupported PPM dimensions " +
                      std::to_string(w) + "x" + std::to_string(h));
  }
  if (maxval != 255) {
    throw FormatError(path.string() + ": unsupported PPM format: maxval " +
                      std::to_string(maxval) +
                      (maxval > 255 ? " (16-bit)" : "") +
                      " (only 8-bit P6 with maxval 255 is supported)");
  }
  const size_t start = parser.RasterStart();
  const size_t need = size_t(w) * size_t(h) * 3;
  if (file.size() < start + need) {
    throw FormatError(path.string() + ": truncated PPM raster");
  }
  std::vector<uint8_t> pixels(file.begin() + start, file.begin() + start + need);
  return RasterImage(int(w), int(h), std::move(pixels));
}

void WritePpm(const RasterImage& image, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P6\n" << image.width() << " " << image.height() << "\n255\n";
  std::span<const uint8_t> bytes = image.bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  out.close();
  if (!out) throw IoError("failed to write PPM " + path.string());
}

std::string DescribeUnknownFormat(const std::vector<uint8_t>& file) {
  auto starts = [&](std::initializer_list<uint8_t> magic) {
    return file.size() >= magic.size() &&
           std::equal(magic.begin(), magic.end(), file.begin());
  };
  if (starts({0xFF, 0xD8, 0xFF})) return "JPEG";
  if (starts({'G', 'I', 'F', '8'})) return "GIF";
  if (starts({'B', 'M'})) return "BMP";
  if (starts({'I', 'I', '*', 0}) || starts({'M', 'M', 0, '*'})) return "TIFF";
  if (file.size() >= 2 && file[0] == 'P' && file[1] >= '1' && file[1] <= '7') {
    return std::string("Netpbm P") + char(file[1]);
  }
  return "unrecognized data";
}

}  // namespace

RasterImage ReadImage(const fs::path& path, std::vector<std::string>* warnings) {
  const std::vector<uint8_t> file = ReadFileBytes(path);
  static constexpr uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G',
                                           '\r', '\n', 0x1A, '\n'};
  if (file.size() >= 8 && std::equal(kPngMagic, kPngMagic + 8, file.begin())) {
    return ReadPng(file, path, warnings);
  }
  if (file.size() >= 2 && file[0] == 'P' && file[1] == '6') {
    return ReadPpm(file, path);
  }
  throw FormatError(path.string() + ": unsupported image format: " +
                    DescribeUnknownFormat(file) +
                    " (supported: PNG, binary PPM)");
}

bool IsSupportedImageExtension(const fs::path& path) {
  const std::string ext = Lower(path.extension().string());
  return ext == ".png" || ext == ".ppm";
}

void WriteImage(const RasterImage& image, const fs::path& path) {
  const std::string ext = Lower(path.extension().string());
  if (ext == ".png") {
    WritePng(image, path);
  } else if (ext == ".ppm") {
    WritePpm(image, path);
  } else {
    throw IoError("cannot write " + path.string() + ": unsupported extension '" +
                  path.extension().string() + "' (supported: .png, .ppm)");
  }
}

std::string FrameFileName(int64_t index, const std::string& extension) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%06lld", static_cast<long long>(index));
  return name + extension;
}

FrameListing EnumerateFrames(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("frame directory " + dir.string() + " does not exist");
  }
  std::map<int64_t, fs::path> frames;
  std::string extension;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    constexpr std::string_view kPrefix = "frame_";
    if (name.rfind(kPrefix, 0) != 0) continue;
    const size_t dot = name.find('.', kPrefix.size());
    if (dot == std::string::npos) continue;
    const std::string digits = name.substr(kPrefix.size(), dot - kPrefix.size());
    const std::string ext = name.substr(dot);
    if (digits.empty() || digits.size() > 12 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      continue;
    }
    if (ext != ".png" && ext != ".ppm") continue;
    const int64_t index = std::stoll(digits);
    if (FrameFileName(index, ext) != name) continue;
    if (extension.empty()) {
      extension = ext;
    } else if (extension != ext) {
      throw IoError("frame directory " + dir.string() +
                    " mixes .png and .ppm frames");
    }
    frames.emplace(index, entry.path());
  }
  if (frames.empty()) {
    throw IoError("no frames found in " + dir.string());
  }
  FrameListing listing;
  listing.extension = extension;
  int64_t expected = 0;
  for (auto& [index, path] : frames) {
    if (index != expected) {
      throw IoError("frame directory " + dir.string() + " is missing frame " +
                    std::to_string(expected) + " (" +
                    FrameFileName(expected, extension) + ")");
    }
    listing.paths.push_back(std::move(path));
    ++expected;
  }
  return listing;
}

RawStreamReader::RawStreamReader(std::istream& in, int width, int height)
    : in_(in),
      width_(width),
      height_(height),
      frame_bytes_(size_t(width) * size_t(height) * 3) {
  if (width < 1 || height < 1) {
    throw DimensionError("raw stream frame size must be positive, got " +
                         ToString(Size{width, height}));
  }
}

std::optional<RasterImage> RawStreamReader::Next() {
  std::vector<uint8_t> bytes(frame_bytes_);
  in_.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(bytes.size()));
  const size_t got = size_t(in_.gcount());
  if (got == 0 && in_.eof()) return std::nullopt;
  if (got != frame_bytes_) {
    if (in_.bad()) {
      throw IoError("error reading raw stream after " +
                    std::to_string(frames_read_) + " frames");
    }
    throw TruncatedStreamError(
        "truncated raw stream: " + std::to_string(got) + " of " +
            std::to_string(frame_bytes_) + " bytes of frame " +
            std::to_string(frames_read_) + " after " +
            std::to_string(frames_read_) + " complete frames",
        frames_read_);
  }
  ++frames_read_;
  return RasterImage(width_, height_, std::move(bytes));
}

RawStreamWriter::RawStreamWriter(std::ostream& out, int width, int height)
    : out_(out), width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw DimensionError("raw stream frame size must be positive, got " +
                         ToString(Size{width, height}));
  }
}

void RawStreamWriter::Write(const RasterImage& frame) {
  if (frame.width() != width_ || frame.height() != height_) {
    throw DimensionError("raw stream expects " +
                         ToString(Size{width_, height_}) + " frames, got " +
                         ToString(frame.size()));
  }
  std::span<const uint8_t> bytes = frame.bytes();
  out_.write(reinterpret_cast<const char*>(bytes.data()),
             std::streamsize(bytes.size()));
  if (!out_) {
    throw IoError("error writing raw stream after " +
                  std::to_string(frames_written_) + " frames");
  }
  ++frames_written_;
}

MemoryFrameSource::MemoryFrameSource(std::vector<RasterImage> frames,
                                     std::optional<FrameRate> rate)
    : frames_(std::move(frames)), rate_(rate) {
  if (frames_.empty()) throw DimensionError("frame source has no frames");
  for (size_t i = 1; i < frames_.size(); ++i) {
    if (frames_[i].size() != frames_[0].size()) {
      throw DimensionError("frame " + std::to_string(i) + " is " +
                           ToString(frames_[i].size()) + ", frame 0 is " +
                           ToString(frames_[0].size()));
    }
  }
}

RasterImage MemoryFrameSource::Read(int64_t index) {
  if (index < 0 || index >= frame_count()) {
    throw IoError("frame " + std::to_string(index) + " out of range");
  }
  return frames_[size_t(index)];
}

StillImageSource::StillImageSource(const fs::path& path,
                                   std::vector<std::string>* warnings)
    : image_(ReadImage(path, warnings)) {}

RasterImage StillImageSource::Read(int64_t index) {
  if (index != 0) {
    throw IoError("still image has no frame " + std::to_string(index));
  }
  return image_;
}

FrameDirectorySource::FrameDirectorySource(const fs::path& dir,
                                           std::optional<FrameRate> rate)
    : listing_(EnumerateFrames(dir)), rate_(rate) {
  size_ = ReadImage(listing_.paths.front()).size();
}

RasterImage FrameDirectorySource::Read(int64_t index) {
  if (index < 0 || index >= frame_count()) {
    throw IoError("frame " + std::to_string(index) + " out of range");
  }
  const fs::path& path = listing_.paths[size_t(index)];
  RasterImage image = ReadImage(path);
  if (image.size() != size_) {
    throw DimensionError(path.string() + " is " + ToString(image.size()) +
                         ", earlier frames are " + ToString(size_));
  }
  return image;
}

RawStreamSource::RawStreamSource(std::istream& in, Size size,
                                 int64_t frame_count,
                                 std::optional<FrameRate> rate)
    : reader_(in, size.width, size.height),
      size_(size),
      frame_count_(frame_count),
      rate_(rate) {}

RasterImage RawStreamSource::Read(int64_t index) {
  if (index != reader_.frames_read()) {
    throw IoError("raw stream read out of order: wanted frame " +
                  std::to_string(index) + ", next is " +
                  std::to_string(reader_.frames_read()));
  }
  std::optional<RasterImage> frame = reader_.Next();
  if (!frame) {
    throw TruncatedStreamError(
        "raw stream ended after " + std::to_string(reader_.frames_read()) +
            " frames, expected " + std::to_string(frame_count_),
        reader_.frames_read());
  }
  return std::move(*frame);
}

}  // namespace sceneshift
