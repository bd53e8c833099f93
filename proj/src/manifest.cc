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

#include "sceneshift/manifest.h"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sceneshift/error.h"

namespace sceneshift {
namespace {

using nlohmann::json;

[[noreturn]] void SchemaError(const std::string& path, const std::string& msg) {
  throw ManifestError(ManifestError::Kind::kSchema,
                      "manifest schema error at " + path + ": " + msg);
}

[[noreturn]] void ValidationError(const std::string& msg) {
  throw ManifestError(ManifestError::Kind::kValidation,
                      "manifest validation error: " + msg);
}

std::string Where(int64_t frame_index, int instance_id) {
  return "frame " + std::to_string(frame_index) + ", instance " +
         std::to_string(instance_id);
}

// Walks one JSON object, checking for required and unexpected keys.
class ObjectReader {
 public:
  ObjectReader(const json& value, std::string path, bool strict,
               std::initializer_list<const char*> known)
      : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) SchemaError(path_, "expected an object");
    if (!strict) return;
    for (const auto& [key, unused] : value_.items()) {
      const bool is_known = std::any_of(
          known.begin(), known.end(), [&](const char* k) { return key == k; });
      if (!is_known) SchemaError(Child(key), "unknown field");
    }
  }

  const json& Field(const char* key) const {
    auto it = value_.find(key);
    if (it == value_.end()) SchemaError(Child(key), "missing field");
    return *it;
  }

  std::string Child(const std::string& key) const { return path_ + "/" + key; }

 private:
  const json& value_;
  std::string path_;
};

int64_t ReadInt(const json& value, const std::string& path,
                int64_t min = std::numeric_limits<int64_t>::min(),
                int64_t max = std::numeric_limits<int64_t>::max()) {
  int64_t v = 0;
  if (value.is_number_unsigned()) {
    const uint64_t u = value.get<uint64_t>();
    if (u > uint64_t(std::numeric_limits<int64_t>::max())) {
      SchemaError(path, "integer out of range");
    }
    v = int64_t(u);
  } else if (value.is_number_integer()) {
    v = value.get<int64_t>();
  } else {
    SchemaError(path, "expected an integer, found " +
                          std::string(value.type_name()));
  }
  if (v < min || v > max) {
    SchemaError(path, "value " + std::to_string(v) + " outside [" +
                          std::to_string(min) + ", " + std::to_string(max) +
                          "]");
  }
  return v;
}

const json& ReadArray(const json& value, const std::string& path) {
  if (!value.is_array()) {
    SchemaError(path,
                "expected an array, found " + std::string(value.type_name()));
  }
  return value;
}

constexpr int64_t kMaxDimension = std::numeric_limits<int>::max();

RleCounts ReadRle(const json& value, const std::string& path, bool strict) {
  ObjectReader obj(value, path, strict, {"size", "counts"});
  const std::string size_path = obj.Child("size");
  const json& size = ReadArray(obj.Field("size"), size_path);
  if (size.size() != 2) SchemaError(size_path, "expected [height, width]");
  RleCounts rle;
  rle.height = int(ReadInt(size[0], size_path + "/0", 1, kMaxDimension));
  rle.width = int(ReadInt(size[1], size_path + "/1", 1, kMaxDimension));
  const std::string counts_path = obj.Child("counts");
  const json& counts = ReadArray(obj.Field("counts"), counts_path);
  rle.counts.reserve(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) {
    rle.counts.push_back(uint32_t(
        ReadInt(counts[i], counts_path + "/" + std::to_string(i), 0,
                std::numeric_limits<uint32_t>::max())));
  }
  return rle;
}

Detection ReadDetection(const json& value, const std::string& path,
                        bool strict) {
  ObjectReader obj(value, path, strict,
                   {"class_id", "score", "bbox", "mask_rle"});
  Detection det;
  det.class_id = int(ReadInt(obj.Field("class_id"), obj.Child("class_id"),
                             std::numeric_limits<int>::min(),
                             std::numeric_limits<int>::max()));
  const json& score = obj.Field("score");
  if (!score.is_number()) {
    SchemaError(obj.Child("score"),
                "expected a number, found " + std::string(score.type_name()));
  }
  det.score = score.get<double>();
  const std::string bbox_path = obj.Child("bbox");
  const json& bbox = ReadArray(obj.Field("bbox"), bbox_path);
  if (bbox.size() != 4) SchemaError(bbox_path, "expected [y1, x1, y2, x2]");
  det.bbox.y1 = ReadInt(bbox[0], bbox_path + "/0");
  det.bbox.x1 = ReadInt(bbox[1], bbox_path + "/1");
  det.bbox.y2 = ReadInt(bbox[2], bbox_path + "/2");
  det.bbox.x2 = ReadInt(bbox[3], bbox_path + "/3");
  det.mask_rle = ReadRle(obj.Field("mask_rle"), obj.Child("mask_rle"), strict);
  return det;
}

void ValidateDetection(const Detection& det, const SequenceManifest& m,
                       int64_t frame_index) {
  const std::string where = Where(frame_index, det.instance_id);
  if (!(det.score >= 0.0 && det.score <= 1.0)) {
    ValidationError(where + ": score " + std::to_string(det.score) +
                    " outside [0, 1]");
  }
  if (!det.bbox.FitsWithin(m.frame_size())) {
    ValidationError(where + ": bbox " + ToString(det.bbox) +
                    " is not a valid box within the " +
                    ToString(m.frame_size()) + " frame");
  }
  if (det.mask_rle.height != m.frame_height ||
      det.mask_rle.width != m.frame_width) {
    ValidationError(where + ": mask size [" +
                    std::to_string(det.mask_rle.height) + ", " +
                    std::to_string(det.mask_rle.width) +
                    "] differs from the frame size [" +
                    std::to_string(m.frame_height) + ", " +
                    std::to_string(m.frame_width) + "]");
  }
  try {
    ValidateRle(det.mask_rle);
  } catch (const FormatError& e) {
    ValidationError(where + ": " + e.what());
  }
}

}  // namespace

std::string ToString(FrameRate rate) {
  return std::to_string(rate.num) + "/" + std::to_string(rate.den);
}

SequenceManifest ParseManifest(std::string_view text,
                               const ManifestOptions& options) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ManifestError(ManifestError::Kind::kParse,
                        std::string("manifest parse error: ") + e.what());
  }

  const bool strict = options.strict;
  ObjectReader root(doc, "", strict,
                    {"version", "frame_width", "frame_height", "frame_rate",
                     "categories", "frames"});
  const int64_t version = ReadInt(root.Field("version"), "/version");
  if (version != kManifestVersion) {
    SchemaError("/version", "unsupported version " + std::to_string(version));
  }

  SequenceManifest m;
  m.frame_width =
      int(ReadInt(root.Field("frame_width"), "/frame_width", 1, kMaxDimension));
  m.frame_height = int(
      ReadInt(root.Field("frame_height"), "/frame_height", 1, kMaxDimension));

  ObjectReader rate(root.Field("frame_rate"), "/frame_rate", strict,
                    {"num", "den"});
  m.frame_rate.num = ReadInt(rate.Field("num"), "/frame_rate/num", 1);
  m.frame_rate.den = ReadInt(rate.Field("den"), "/frame_rate/den", 1);

  const json& categories = root.Field("categories");
  if (!categories.is_object()) SchemaError("/categories", "expected an object");
  for (const auto& [key, name] : categories.items()) {
    const std::string path = "/categories/" + key;
    int id = 0;
    size_t consumed = 0;
    try {
      id = std::stoi(key, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed == 0 || consumed != key.size()) {
      SchemaError(path, "category key is not an integer class id");
    }
    if (!name.is_string()) SchemaError(path, "expected a string class name");
    m.categories[id] = name.get<std::string>();
  }

  const json& frames = ReadArray(root.Field("frames"), "/frames");
  m.frames.reserve(frames.size());
  for (size_t f = 0; f < frames.size(); ++f) {
    const std::string fpath = "/frames/" + std::to_string(f);
    ObjectReader frame(frames[f], fpath, strict, {"frame_index", "detections"});
    FrameSegmentation seg;
    seg.frame_index = ReadInt(frame.Field("frame_index"),
                              frame.Child("frame_index"), 0);
    const std::string dpath = frame.Child("detections");
    const json& dets = ReadArray(frame.Field("detections"), dpath);
    for (size_t d = 0; d < dets.size(); ++d) {
      Detection det =
          ReadDetection(dets[d], dpath + "/" + std::to_string(d), strict);
      det.instance_id = int(d);
      auto cat = m.categories.find(det.class_id);
      if (cat == m.categories.end()) {
        ValidationError(Where(seg.frame_index, det.instance_id) +
                        ": class_id " + std::to_string(det.class_id) +
                        " is not in the category table");
      }
      det.class_name = cat->second;
      ValidateDetection(det, m, seg.frame_index);
      if (det.score >= options.score_threshold) {
        seg.detections.push_back(std::move(det));
      }
    }
    m.frames.push_back(std::move(seg));
  }

  std::stable_sort(m.frames.begin(), m.frames.end(),
                   [](const FrameSegmentation& a, const FrameSegmentation& b) {
                     return a.frame_index < b.frame_index;
                   });
  for (size_t i = 0; i < m.frames.size(); ++i) {
    if (m.frames[i].frame_index != int64_t(i)) {
      if (m.frames[i].frame_index < int64_t(i)) {
        ValidationError("frame_index " +
                        std::to_string(m.frames[i].frame_index) +
                        " appears more than once");
      }
      ValidationError("frame indices are not contiguous: frame_index " +
                      std::to_string(i) + " is missing");
    }
  }
  return m;
}

SequenceManifest LoadManifest(const std::filesystem::path& path,
                              const ManifestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading manifest " + path.string());
  try {
    return ParseManifest(buffer.str(), options);
  } catch (const ManifestError& e) {
    throw ManifestError(e.kind(), path.string() + ": " + e.what());
  }
}

std::string SerializeManifest(const SequenceManifest& m) {
  nlohmann::ordered_json doc;
  doc["version"] = kManifestVersion;
  doc["frame_width"] = m.frame_width;
  doc["frame_height"] = m.frame_height;
  doc["frame_rate"] = {{"num", m.frame_rate.num}, {"den", m.frame_rate.den}};
  nlohmann::ordered_json categories = nlohmann::ordered_json::object();
  for (const auto& [id, name] : m.categories) {
    categories[std::to_string(id)] = name;
  }
  doc["categories"] = std::move(categories);
  nlohmann::ordered_json frames = nlohmann::ordered_json::array();
  for (const FrameSegmentation& seg : m.frames) {
    nlohmann::ordered_json dets = nlohmann::ordered_json::array();
    for (const Detection& d : seg.detections) {
      dets.push_back({
          {"class_id", d.class_id},
          {"score", d.score},
          {"bbox", {d.bbox.y1, d.bbox.x1, d.bbox.y2, d.bbox.x2}},
          {"mask_rle",
           {{"size", {d.mask_rle.height, d.mask_rle.width}},
            {"counts", d.mask_rle.counts}}},
      });
    }
    frames.push_back(
        {{"frame_index", seg.frame_index}, {"detections", std::move(dets)}});
  }
  doc["frames"] = std::move(frames);
  return doc.dump() + "\n";
}

std::string ValidationReport::Summary() const {
  std::string out;
  for (const std::string& p : problems) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

ValidationReport ValidateAgainstFrames(const SequenceManifest& manifest,
                                       int64_t frame_count, int width,
                                       int height) {
  ValidationReport report;
  if (manifest.frame_count() != frame_count) {
    report.problems.push_back(
        "manifest has " + std::to_string(manifest.frame_count()) +
        " frames but the frame source has " + std::to_string(frame_count));
  }
  if (manifest.frame_width != width || manifest.frame_height != height) {
    report.problems.push_back("manifest frames are " +
                              ToString(manifest.frame_size()) +
                              " but the frame source is " +
                              ToString(Size{width, height}));
  }
  return report;
}

}  // namespace sceneshift
