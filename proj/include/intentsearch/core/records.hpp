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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "intentsearch/core/eth_price.hpp"

namespace isearch {

/// Gallery item metadata.
struct ImageRecord {
    std::string id;
    std::string image_path;  // relative to the gallery root
    std::string contract;
    std::string token_id;
    std::string chain;
    std::string collection;
    EthPrice price;
    std::map<std::string, std::string> tags;

    friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

/// A scored retrieval result for one composed intent.
struct Candidate {
    std::string image_id;
    double composed_sim = 0.0;
    std::vector<double> element_sims;  // aligned with the option's elements
    double final_score = 0.0;
    std::size_t option = 0;  // index of the option that produced it
};

}  // namespace isearch
