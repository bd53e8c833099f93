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

#ifndef SCENESHIFT_COMPOSITOR_H_
#define SCENESHIFT_COMPOSITOR_H_

#include <span>

#include "sceneshift/image.h"
#include "sceneshift/mask.h"

namespace sceneshift {

enum class FitMode {
  kStretch,    // map the source extent onto the whole target
  kLetterbox,  // keep aspect ratio, center, pad the rest
};

enum class ImageFilter { kBilinear, kNearest };

struct ResizePolicy {
  FitMode fit = FitMode::kStretch;
  Rgb pad_color;  // letterbox padding
  ImageFilter filter = ImageFilter::kBilinear;

  friend bool operator==(const ResizePolicy&, const ResizePolicy&) = default;
};

// Where a letterboxed source lands inside the target.
struct Placement {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

Placement LetterboxPlacement(Size source, Size target);

// Same-size resizes return a copy of the input for either filter. Throws
// DimensionError for non-positive targets.
RasterImage ResizeImage(const RasterImage& image, int width, int height,
                        const ResizePolicy& policy = {});

// Always nearest-neighbor. Letterbox padding is unset.
BinaryMask ResizeMask(const BinaryMask& mask, int width, int height,
                      FitMode fit = FitMode::kStretch);

// source where the mask is set, background elsewhere. All three must share
// one size; the DimensionError names all three otherwise.
RasterImage Composite(const RasterImage& background, const RasterImage& source,
                      const BinaryMask& mask);

// Soft variant: the mask is box-blurred with the given radius and used as a
// per-pixel blend weight. Radius 0 is exactly Composite().
RasterImage CompositeFeathered(const RasterImage& background,
                               const RasterImage& source,
                               const BinaryMask& mask, int feather_radius);

struct Layer {
  RasterImage source;
  BinaryMask mask;
};

// Applies layers in order over the background; later layers win where masks
// overlap. Throws DimensionError naming the first mismatched layer.
RasterImage CompositeLayers(const RasterImage& background,
                            std::span<const Layer> layers,
                            int feather_radius = 0);

}  // namespace sceneshift

#endif  // SCENESHIFT_COMPOSITOR_H_
