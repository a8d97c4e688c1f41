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

#include "intentsearch/core/ranking_config.hpp"

#include <cmath>

namespace isearch {

std::vector<std::string>
validate_config(const RankingConfig& cfg) {
    std::vector<std::string> out;
    if (std::abs(cfg.alpha0 + cfg.alpha1 - 1.0) > 1e-12) {
        out.emplace_back("alpha0 + alpha1 must equal 1");
    }
    if (cfg.alpha0 < 0.0 || cfg.alpha1 < 0.0) {
        out.emplace_back("alpha weights must be non-negative");
    }
    if (!(cfg.exclusion_fraction > 0.0 && cfg.exclusion_fraction < 1.0)) {
        out.emplace_back("exclusion_fraction must lie in (0, 1)");
    }
    if (cfg.prefilter_k < 1) {
        out.emplace_back("prefilter_k must be at least 1");
    }
    if (!(cfg.w > 0.0) || !(cfg.w_elem > 0.0)) {
        out.emplace_back("w and w_elem must be positive");
    }
    return out;
}

}  // namespace isearch
