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

#include "intentsearch/core/error.hpp"

namespace isearch {

std::string_view
error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "invalid_argument";
        case ErrorCode::kUnparsableQuery:
            return "unparsable_query";
        case ErrorCode::kMalformedIntentJson:
            return "malformed_intent_json";
        case ErrorCode::kEmbedderUnavailable:
            return "embedder_unavailable";
        case ErrorCode::kSegmenterUnavailable:
            return "segmenter_unavailable";
        case ErrorCode::kEditorUnavailable:
            return "editor_unavailable";
        case ErrorCode::kLlmUnavailable:
            return "llm_unavailable";
        case ErrorCode::kDimensionMismatch:
            return "dimension_mismatch";
        case ErrorCode::kZeroVector:
            return "zero_vector";
        case ErrorCode::kDuplicateId:
            return "duplicate_id";
        case ErrorCode::kInvalidBox:
            return "invalid_box";
        case ErrorCode::kEmptyGallery:
            return "empty_gallery";
        case ErrorCode::kMissingImage:
            return "missing_image";
        case ErrorCode::kMetaParseError:
            return "meta_parse_error";
        case ErrorCode::kCorruptEmbeddingsFile:
            return "corrupt_embeddings_file";
        case ErrorCode::kUnknownGroundTruthId:
            return "unknown_ground_truth_id";
        case ErrorCode::kNotFound:
            return "not_found";
        case ErrorCode::kIoError:
            return "io_error";
    }
    return "unknown";
}

}  // namespace isearch
