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

#ifndef CENTERING_ENGINE_HPP_
#define CENTERING_ENGINE_HPP_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "centering/model.hpp"

namespace centering {

// How to compare against an unspecified Cb of the previous unit.
// TreatAsContinue: "Cb(Un) = Cb(Un-1)" counts as satisfied, so the first
// well-connected unit after a segment opening classifies as a continue or
// retain. LabelNone: such units get transition none.
enum class SegmentInitialConvention { TreatAsContinue, LabelNone };

struct EngineOptions {
  SegmentInitialConvention segment_initial = SegmentInitialConvention::TreatAsContinue;
};

// Per-record transition tag; smooth and rough shifts are merged.
enum class RecordTag { Continue, Retain, Shift, CentEstab, OtherExcluded, NewEntity, None };

// One animate third-person subject expression, tagged with the centering
// function of its occurrence. These are the rows behind the distribution
// tables.
struct ExpressionRecord {
  std::string mention_id;
  std::string unit_id;
  Form form = Form::FullNp;
  GrammaticalFunction function = GrammaticalFunction::Subject;
  RecordTag tag = RecordTag::None;
  SequenceLabel sequence = SequenceLabel::NotApplicable;
};

struct Rule1Violation {
  std::string unit_id;
  std::string detail;
};

enum class FelicityKind {
  ExpectedZeroGotStrong,
  ZeroInRetainOrShiftWithoutClue,
  ZeroLicensedByClue,
  Conforming,
};

struct FelicityFinding {
  FelicityKind kind = FelicityKind::Conforming;
  std::string unit_id;
  std::string detail;
};

struct AnalysisResult {
  Discourse discourse;  // units carry their computed cf/cb/cp/transition
  std::vector<ExpressionRecord> expression_records;
  std::vector<Rule1Violation> rule1_violations;
  std::vector<FelicityFinding> felicity_findings;
};

// The backward-looking center of `unit` given the fully analyzed previous
// unit. Undefined (nullopt) for segment-initial units, units without a
// predecessor, and units realizing nothing from Cf(prev).
std::optional<EntityId> compute_cb(const CenteringUnit& unit,
                                   const CenteringUnit* prev);

// Table-1 classification. `cb_prev` = nullopt means the previous Cb was
// unspecified; the convention decides how that compares.
Transition classify_transition(std::optional<EntityId> cb_n,
                               std::optional<EntityId> cb_prev,
                               std::optional<EntityId> cp_n,
                               SegmentInitialConvention convention =
                                   SegmentInitialConvention::TreatAsContinue);

// Labels a continue by the transition that precedes it.
SequenceLabel classify_sequence(Transition transition_prev, Transition transition_n);

// Center establishment: the unit realizes no Cf(prev) member but does reach
// back to an entity available in the discourse.
bool detect_cent_est(const CenteringUnit& unit, const CenteringUnit* prev,
                     const std::set<EntityId>& history);

// Rule 1: if anything from Cf(prev) is pronominalized in the unit, the Cb
// must be pronominalized too.
std::vector<Rule1Violation> check_rule1(const CenteringUnit& unit,
                                        const CenteringUnit& prev);

// True when agreement features single out exactly one candidate, that
// candidate is not the previous Cb, and it is the intended referent.
bool agreement_forces_referent(Gender gender, Number number, EntityId intended,
                               std::optional<EntityId> cb_prev,
                               std::span<const EntityId> candidates,
                               const std::vector<Entity>& registry);

// Null-vs-strong subject diagnostics: a null subject signals a continue; in a
// retain or shift it needs a syntactic clue pointing away from the previous
// Cb. Advisories, never errors.
std::vector<FelicityFinding> check_felicity(const CenteringUnit& unit,
                                            const CenteringUnit& prev,
                                            const std::vector<Entity>& registry);

// Runs the full per-unit pipeline over a validated discourse.
AnalysisResult analyze_discourse(const Discourse& discourse,
                                 const EngineOptions& options = {});

// Normalized coherence of a transition chain: continue=3, retain=2,
// smooth=1, rough=0, minus 1 for each continue that follows a retain;
// none/cent-est/excluded units are skipped. Empty chains score 1.
double coherence_score(std::span<const Transition> transitions);

struct ResolvedMention {
  std::string unit_id;
  std::string mention_id;
  std::optional<EntityId> chosen;
  // Compatible candidates, best first (the chosen one leads when resolution
  // succeeded).
  std::vector<EntityId> candidates;
  Transition resulting_transition = Transition::None;
  bool unresolvable = false;
};

struct ResolutionResult {
  std::vector<ResolvedMention> mentions;
  // Discourse with chosen assignments substituted and analysis re-run.
  AnalysisResult analysis;
};

// Assigns referents to unresolved pronominal mentions by preferring the
// candidate whose assignment yields the most coherent transition
// (continue < retain < smooth-shift < rough-shift), ties broken by Cf(prev)
// rank.
ResolutionResult resolve_pronouns(const Discourse& discourse,
                                  const EngineOptions& options = {});

const char* to_string(RecordTag t);
const char* to_string(FelicityKind k);

}  // namespace centering

#endif  // CENTERING_ENGINE_HPP_
