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

#include <string>

#include "intentsearch/imaging/image.hpp"
#include "intentsearch/net/http_client.hpp"

namespace isearch {

/// Instruction-driven image editing (the change preview).
class EditProvider {
public:
    virtual ~EditProvider() = default;

    /// Returns an image of the same shape as the input.
    virtual Image
    edit(const Image& image, const std::string& instruction) const = 0;
};

/// Offline stand-in. If the instruction names a color ("make the cap blue")
/// every foreground pixel takes that color; otherwise RGB channels rotate
/// (r,g,b) -> (g,b,r) and grayscale inverts.
class StubEditProvider final : public EditProvider {
public:
    Image
    edit(const Image& image, const std::string& instruction) const override;
};

/// POST {endpoint}/edit {"image":b64png,"instruction":s} -> {"image":b64png}.
class RemoteEditProvider final : public EditProvider {
public:
    RemoteEditProvider(const std::string& endpoint, HttpOptions options = {});

    Image
    edit(const Image& image, const std::string& instruction) const override;

private:
    Endpoint endpoint_;
    HttpOptions options_;
};

/// segment -> edit -> swap_element: the edited element pasted back into the
/// original through the mask.
Image preview_change(const Image& original, const RegionMask& mask, const std::string& instruction,
                     const EditProvider& editor);

}  // namespace isearch
