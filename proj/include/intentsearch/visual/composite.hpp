// Copyright 2026 the intentsearch authors
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

#pragma once

#include "intentsearch/imaging/image.hpp"

namespace isearch {

/// mask_r(I) = alpha0 * mask_b(I) + alpha1 * I. Inside the mask the pixel is
/// kept; outside it becomes floor(alpha1 * v + 0.5). Requires
/// alpha0 + alpha1 == 1 (within 1e-9). Throws Error(kDimensionMismatch) or
/// Error(kInvalidArgument).
Image regularized_black_composite(const Image& image, const RegionMask& mask, double alpha0, double alpha1);

/// mask_w(I): outside pixels set to 255.
Image white_composite(const Image& image, const RegionMask& mask);

/// Edited pixels inside the mask, original pixels outside.
Image swap_element(const Image& original, const Image& edited, const RegionMask& mask);

/// Single-threaded versions of the kernels above; same results bit for bit.
namespace serial {
Image regularized_black_composite(const Image& image, const RegionMask& mask, double alpha0, double alpha1);
Image white_composite(const Image& image, const RegionMask& mask);
Image swap_element(const Image& original, const Image& edited, const RegionMask& mask);
}  // namespace serial

}  // namespace isearch
