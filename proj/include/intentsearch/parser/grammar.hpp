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

#include <string_view>

#include "intentsearch/core/intent.hpp"
#include "intentsearch/parser/lexicon.hpp"

namespace isearch {

/// Deterministic grammar. Collections are matched first (longest alias
/// wins), then price phrases, change templates and connectives. Words between
/// connectives form noun phrases. "or" splits the nearest conjunct and the
/// options are the Cartesian product of conjuncts. Negatives are global.
///
/// Throws Error(kUnparsableQuery) if no positive element can be extracted.
IntentExpression parse_query(std::string_view text, const QueryLexicon& lexicon);

IntentExpression parse_query(std::string_view text);

/// Same grammar for text that refines something else (a visual selection):
/// an expression with no options is fine, so "no hat" yields only a
/// negative and a change does not turn its targets into an option. Blank
/// input gives an empty expression. Still throws Error(kUnparsableQuery)
/// for structurally invalid results.
IntentExpression parse_fragment(std::string_view text, const QueryLexicon& lexicon);

}  // namespace isearch
