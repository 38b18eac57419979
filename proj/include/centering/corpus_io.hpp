// Copyright 2026 The Centering Authors
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

#ifndef CENTERING_CORPUS_IO_HPP_
#define CENTERING_CORPUS_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "centering/engine.hpp"
#include "centering/model.hpp"

namespace centering {

// One annotated referring expression as it appears in the input document.
struct MentionAnnotation {
  std::string entity_id;  // empty = unresolved (resolve-mode documents only)
  Form form = Form::FullNp;
  GrammaticalFunction gf = GrammaticalFunction::Other;
  bool empathy = false;
  std::optional<std::string> possessor_id;
  bool contraindexed = false;
  bool set_ref = false;
  std::optional<Gender> gender;
  std::optional<Number> number;

  bool operator==(const MentionAnnotation&) const = default;
};

struct RawClause {
  ClauseKind kind = ClauseKind::Main;
  std::vector<MentionAnnotation> mentions;

  bool operator==(const RawClause&) const = default;
};

struct RawSentence {
  std::vector<RawClause> clauses;

  bool operator==(const RawSentence&) const = default;
};

struct RawSegment {
  std::vector<RawSentence> sentences;

  bool operator==(const RawSegment&) const = default;
};

// A parsed and validated input document: the annotation tree as written,
// plus the segmented discourse derived from it.
struct AnnotatedDocument {
  std::vector<RawSegment> segments;
  Discourse discourse;
  std::vector<std::string> warnings;
};

struct ParseOptions {
  bool strict = false;            // reject unknown fields instead of warning
  bool allow_unresolved = false;  // permit pronominal mentions without entity
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ParseError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};
class ReferenceError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};
class RegistryError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};
class ConsistencyError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};
class DegenerateInputError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};

// Parses one interchange document. Diagnostics name the offending path;
// unknown fields are fatal in strict mode and warnings otherwise. The
// output-only "analysis" block of previously serialized results is ignored.
AnnotatedDocument parse_corpus(std::string_view text,
                               const ParseOptions& options = {},
                               std::string_view source_name = "<input>");

// Splits a sentence into centering units: each main clause and each tensed
// adjunct opens a unit; tenseless adjuncts merge into the preceding unit
// (the following one when sentence-initial). Surface positions are
// renumbered per unit. Throws DegenerateInputError when no clause can open
// a unit.
std::vector<CenteringUnit> segment_units(const RawSentence& sentence,
                                         const std::vector<Entity>& registry,
                                         bool allow_unresolved = false);

// Moves mentions that centering does not see out of Cf/Cb participation:
// deictics (by form, or first/second person referents), set-building
// references, and other unanalyzed anaphors. Contraindexed zeros stay
// in participation but are flagged for the statistics.
CenteringUnit filter_mentions(CenteringUnit unit,
                              const std::vector<Entity>& registry);

// Serializes the analysis: the annotation tree is echoed verbatim, computed
// results live under the "analysis" key. parse(serialize(x)) restores the
// annotation subset exactly.
std::string serialize_analysis(const AnnotatedDocument& document,
                               const AnalysisResult& result);

}  // namespace centering

#endif  // CENTERING_CORPUS_IO_HPP_
