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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace isearch {

/// Non-negative ETH amount stored as an integer count of wei (10^-18 ETH),
/// so filters and sorts never see float drift.
class EthPrice {
public:
    using Wei = __int128;
    static constexpr int kFractionDigits = 18;

    constexpr EthPrice() = default;

    /// Accepts plain decimals ("0.1", "12", "3.250") and exponent forms
    /// ("1e-05") as produced by JSON number serializers. Digits past the 18th
    /// fractional place must be zero. Throws Error(kInvalidArgument).
    static EthPrice
    parse(std::string_view text);

    static constexpr EthPrice
    from_wei(Wei wei) {
        EthPrice p;
        p.wei_ = wei;
        return p;
    }

    constexpr Wei
    wei() const {
        return wei_;
    }

    /// Shortest decimal form: "0.1", "2", "1.000000000000000001".
    std::string
    to_string() const;

    double
    to_double() const;

    friend constexpr auto
    operator<=>(const EthPrice& a, const EthPrice& b) {
        return a.wei_ <=> b.wei_;
    }
    friend constexpr bool
    operator==(const EthPrice& a, const EthPrice& b) {
        return a.wei_ == b.wei_;
    }

private:
    Wei wei_ = 0;
};

}  // namespace isearch
