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

#include "intentsearch/embed/triplet.hpp"

#include <algorithm>
#include <cmath>

#include "intentsearch/core/error.hpp"

namespace isearch {

double
triplet_margin_from_sims(double sim_positive, double sim_adversarial, double alpha) {
    return std::abs(sim_positive - 1.0) - std::abs(sim_adversarial - 1.0) + alpha;
}

double
triplet_margin(const TripletSample& s, double alpha) {
    if (s.query.dim() != s.positive.dim() || s.query.dim() != s.adversarial.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "triplet vectors must share a dimension");
    }
    return triplet_margin_from_sims(cosine_similarity(s.query, s.positive),
                                    cosine_similarity(s.query, s.adversarial), alpha);
}

double
triplet_margin_hinged(const TripletSample& s, double alpha) {
    return std::max(0.0, triplet_margin(s, alpha));
}

}  // namespace isearch
