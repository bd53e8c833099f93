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

#include "sceneshift/selection.h"

#include <algorithm>
#include <charconv>
#include <string>

#include "sceneshift/error.h"

namespace sceneshift {
namespace {

bool ParseInt(std::string_view text, int* out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void BadSpec(std::string_view text, const std::string& why) {
  throw SelectionError("invalid selection '" + std::string(text) + "': " + why +
                       " (expected top:<n> or ids:<id>,<id>,...)");
}

}  // namespace

SelectionSpec SelectionSpec::Top(int n) {
  if (n < 1) {
    throw SelectionError("top-n selection needs n >= 1, got " +
                         std::to_string(n));
  }
  return SelectionSpec(TopN{n});
}

SelectionSpec SelectionSpec::Ids(std::set<int> ids) {
  if (ids.empty()) throw SelectionError("explicit id selection is empty");
  for (int id : ids) {
    if (id < 0) {
      throw SelectionError("instance ids are non-negative, got " +
                           std::to_string(id));
    }
  }
  return SelectionSpec(ExplicitIds{std::move(ids)});
}

SelectionSpec SelectionSpec::Parse(std::string_view text) {
  const size_t colon = text.find(':');
  if (colon == std::string_view::npos) BadSpec(text, "missing ':'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "top") {
    int n = 0;
    if (!ParseInt(rest, &n)) BadSpec(text, "n is not an integer");
    if (n < 1) BadSpec(text, "n must be at least 1");
    return Top(n);
  }
  if (kind == "ids") {
    std::set<int> ids;
    std::string_view remaining = rest;
    while (true) {
      const size_t comma = remaining.find(',');
      const std::string_view item = remaining.substr(0, comma);
      int id = 0;
      if (!ParseInt(item, &id) || id < 0) {
        BadSpec(text, "'" + std::string(item) + "' is not an instance id");
      }
      ids.insert(id);
      if (comma == std::string_view::npos) break;
      remaining = remaining.substr(comma + 1);
    }
    return Ids(std::move(ids));
  }
  BadSpec(text, "unknown mode '" + std::string(kind) + "'");
}

std::string SelectionSpec::ToString() const {
  if (const auto* top = std::get_if<TopN>(&mode_)) {
    return "top:" + std::to_string(top->n);
  }
  std::string out = "ids:";
  bool first = true;
  for (int id : std::get<ExplicitIds>(mode_).ids) {
    if (!first) out += ",";
    out += std::to_string(id);
    first = false;
  }
  return out;
}

std::vector<const Detection*> FilterPersons(const FrameSegmentation& frame,
                                            const CategoryTable& categories) {
  std::vector<const Detection*> persons;
  for (const Detection& det : frame.detections) {
    auto it = categories.find(det.class_id);
    if (it != categories.end() && it->second == kPersonClassName) {
      persons.push_back(&det);
    }
  }
  return persons;
}

std::vector<RankedPerson> RankByArea(std::span<const Detection* const> persons,
                                     AreaMetric metric) {
  std::vector<RankedPerson> ranked;
  ranked.reserve(persons.size());
  for (const Detection* det : persons) {
    const int64_t area = metric == AreaMetric::kBoundingBox
                             ? BBoxArea(det->bbox)
                             : int64_t(RleForegroundCount(det->mask_rle));
    ranked.push_back({det->instance_id, area, 0});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedPerson& a, const RankedPerson& b) {
              if (a.area != b.area) return a.area > b.area;
              return a.instance_id < b.instance_id;
            });
  for (size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = int(i);
  return ranked;
}

Selection Select(std::span<const RankedPerson> ranked,
                 const SelectionSpec& spec) {
  Selection out;
  if (const auto* top = std::get_if<SelectionSpec::TopN>(&spec.mode())) {
    const size_t take = std::min(size_t(top->n), ranked.size());
    for (size_t i = 0; i < take; ++i) out.ids.insert(ranked[i].instance_id);
    if (size_t(top->n) > ranked.size()) {
      out.warnings.push_back("requested top " + std::to_string(top->n) +
                             " persons but only " +
                             std::to_string(ranked.size()) + " present");
    }
    return out;
  }
  for (int id : std::get<SelectionSpec::ExplicitIds>(spec.mode()).ids) {
    const bool present =
        std::any_of(ranked.begin(), ranked.end(),
                    [id](const RankedPerson& p) { return p.instance_id == id; });
    if (!present) {
      throw SelectionError("instance id " + std::to_string(id) +
                           " is not a detected person in this frame");
    }
    out.ids.insert(id);
  }
  return out;
}

}  // namespace sceneshift
