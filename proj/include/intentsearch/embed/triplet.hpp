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

#include "intentsearch/core/unit_vector.hpp"

namespace isearch {

/// Query, positive and adversarial embeddings for one triplet.
struct TripletSample {
    UnitVector query;
    UnitVector positive;
    UnitVector adversarial;
};

/// |sim(q,p) - 1| - |sim(q,a) - 1| + alpha on cosine similarities, exactly as
/// the margin is written: no hinge, so the value may be negative.
double triplet_margin_from_sims(double sim_positive, double sim_adversarial, double alpha);

/// Throws Error(kDimensionMismatch) unless all three vectors share a dim.
double triplet_margin(const TripletSample& s, double alpha);

/// max(0, triplet_margin), the usual training-loss form.
double triplet_margin_hinged(const TripletSample& s, double alpha);

}  // namespace isearch
