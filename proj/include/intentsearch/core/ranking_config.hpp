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
#include <string>
#include <vector>

namespace isearch {

/// Retrieval and ranking constants.
///
/// `w` weighs the composed-intent similarity and `w_elem` each single-element
/// similarity in the re-rank score. `prefilter_k` bounds the pool taken from
/// the index before re-ranking. `exclusion_fraction` of the candidate list is
/// dropped by negative intents. `alpha0`/`alpha1` blend the black-masked
/// composite with the original image. `triplet_alpha` is the triplet margin.
///
/// Nothing pins the change_* weights down; 1/1/1 is our default.
struct RankingConfig {
    double w = 1.0;
    double w_elem = 0.5;
    std::size_t prefilter_k = 500;
    double exclusion_fraction = 0.4;
    double alpha0 = 0.9;
    double alpha1 = 0.1;
    double triplet_alpha = 0.05;

    double change_w_original = 1.0;
    double change_w_target = 1.0;
    double change_w_source = 1.0;
};

/// Invariant violations; empty means usable.
std::vector<std::string> validate_config(const RankingConfig& cfg);

}  // namespace isearch
