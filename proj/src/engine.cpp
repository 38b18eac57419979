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

#include "centering/engine.hpp"

#include <algorithm>
#include <cassert>

namespace centering {

namespace {

bool in_cf(const std::vector<EntityId>& cf, EntityId e) {
  return std::find(cf.begin(), cf.end(), e) != cf.end();
}

// An entity counts as realized in a unit when any participating mention
// evokes it, directly or through a possessor link.
bool realized_in(const CenteringUnit& unit, EntityId e) {
  for (const Mention& m : unit.mentions) {
    if (m.entity == e) return true;
    if (m.possessor && *m.possessor == e) return true;
  }
  return false;
}

RecordTag tag_from_transition(Transition t) {
  switch (t) {
    case Transition::Continue: return RecordTag::Continue;
    case Transition::Retain: return RecordTag::Retain;
    case Transition::SmoothShift:
    case Transition::RoughShift: return RecordTag::Shift;
    case Transition::CentEstab: return RecordTag::CentEstab;
    case Transition::OtherExcluded: return RecordTag::OtherExcluded;
    case Transition::None: return RecordTag::None;
  }
  return RecordTag::None;
}

int transition_preference(Transition t) {
  switch (t) {
    case Transition::Continue: return 0;
    case Transition::Retain: return 1;
    case Transition::SmoothShift: return 2;
    case Transition::RoughShift: return 3;
    default: return 4;
  }
}

}  // namespace

std::optional<EntityId> compute_cb(const CenteringUnit& unit,
                                   const CenteringUnit* prev) {
  if (prev == nullptr || unit.segment_initial) return std::nullopt;

  // A single pronoun realizing a forward-looking center of the previous
  // unit is the Cb.
  int pronoun_count = 0;
  EntityId single;
  for (const Mention& m : unit.mentions) {
    if (m.pronominal() && m.entity.valid() && in_cf(prev->cf, m.entity)) {
      ++pronoun_count;
      single = m.entity;
    }
  }
  if (pronoun_count == 1) return single;

  // Zero or several pronouns: keep the previous Cb when it is realized,
  // otherwise take the highest-ranked Cf(prev) element realized here.
  if (prev->cb && realized_in(unit, *prev->cb)) return prev->cb;
  for (EntityId e : prev->cf) {
    if (realized_in(unit, e)) return e;
  }
  return std::nullopt;
}

Transition classify_transition(std::optional<EntityId> cb_n,
                               std::optional<EntityId> cb_prev,
                               std::optional<EntityId> cp_n,
                               SegmentInitialConvention convention) {
  if (!cb_n) return Transition::None;
  bool backward_same;
  if (!cb_prev) {
    if (convention == SegmentInitialConvention::LabelNone) return Transition::None;
    backward_same = true;
  } else {
    backward_same = (*cb_n == *cb_prev);
  }
  const bool forward_same = cp_n.has_value() && *cb_n == *cp_n;
  if (backward_same) {
    return forward_same ? Transition::Continue : Transition::Retain;
  }
  return forward_same ? Transition::SmoothShift : Transition::RoughShift;
}

SequenceLabel classify_sequence(Transition transition_prev, Transition transition_n) {
  if (transition_n != Transition::Continue) return SequenceLabel::NotApplicable;
  switch (transition_prev) {
    case Transition::Continue: return SequenceLabel::ContCont;
    case Transition::Retain: return SequenceLabel::RetCont;
    case Transition::SmoothShift:
    case Transition::RoughShift: return SequenceLabel::ShiftCont;
    default: return SequenceLabel::NotApplicable;
  }
}

bool detect_cent_est(const CenteringUnit& unit, const CenteringUnit* prev,
                     const std::set<EntityId>& history) {
  if (prev == nullptr || unit.segment_initial) return false;
  for (const Mention& m : unit.mentions) {
    if (m.entity.valid() && history.count(m.entity) && !in_cf(prev->cf, m.entity)) {
      return true;
    }
    if (m.possessor && history.count(*m.possessor) && !in_cf(prev->cf, *m.possessor)) {
      return true;
    }
  }
  return false;
}

std::vector<Rule1Violation> check_rule1(const CenteringUnit& unit,
                                        const CenteringUnit& prev) {
  std::vector<Rule1Violation> violations;
  if (!unit.cb) return violations;

  std::vector<EntityId> pronominalized;
  for (const Mention& m : unit.mentions) {
    if (m.pronominal() && m.entity.valid() && in_cf(prev.cf, m.entity)) {
      if (std::find(pronominalized.begin(), pronominalized.end(), m.entity) ==
          pronominalized.end()) {
        pronominalized.push_back(m.entity);
      }
    }
  }
  if (pronominalized.empty()) return violations;

  for (const Mention& m : unit.mentions) {
    if (m.pronominal() && m.entity == *unit.cb) return violations;
  }
  violations.push_back(Rule1Violation{
      unit.id,
      "Cf(prev) element realized as a pronoun while the Cb is realized only "
      "by a non-pronoun"});
  return violations;
}

bool agreement_forces_referent(Gender gender, Number number, EntityId intended,
                               std::optional<EntityId> cb_prev,
                               std::span<const EntityId> candidates,
                               const std::vector<Entity>& registry) {
  if (candidates.empty()) {
    throw AnnotationError("agreement_forces_referent: empty candidate list");
  }
  std::optional<EntityId> sole;
  for (EntityId c : candidates) {
    const Entity& ent = registry.at(static_cast<size_t>(c.value));
    if (gender_compatible(gender, ent.gender) &&
        number_compatible(number, ent.number)) {
      if (sole) return false;  // more than one survivor
      sole = c;
    }
  }
  if (!sole) return false;
  if (cb_prev && *sole == *cb_prev) return false;
  return *sole == intended;
}

std::vector<FelicityFinding> check_felicity(const CenteringUnit& unit,
                                            const CenteringUnit& prev,
                                            const std::vector<Entity>& registry) {
  std::vector<FelicityFinding> findings;
  for (const Mention& m : unit.mentions) {
    if (m.function != GrammaticalFunction::Subject) continue;
    if (!m.entity.valid()) continue;
    const Entity& ent = registry.at(static_cast<size_t>(m.entity.value));
    if (!ent.animate || ent.person != Person::Third) continue;
    if (m.contraindexed) continue;  // no pragmatic choice was made

    FelicityFinding finding;
    finding.unit_id = unit.id;
    const bool retain_or_shift = unit.transition == Transition::Retain ||
                                 unit.transition == Transition::SmoothShift ||
                                 unit.transition == Transition::RoughShift;
    if (unit.transition == Transition::Continue &&
        (unit.sequence == SequenceLabel::ContCont ||
         unit.sequence == SequenceLabel::ShiftCont) &&
        m.form == Form::StrongPronoun) {
      finding.kind = FelicityKind::ExpectedZeroGotStrong;
      finding.detail = "strong pronoun subject '" + m.id +
                       "' in a continue; a null subject is the expected form";
    } else if (retain_or_shift && m.form == Form::Zero) {
      const Gender g = m.agr_gender.value_or(ent.gender);
      const Number n = m.agr_number.value_or(ent.number);
      bool forced = false;
      if (!prev.cf.empty()) {
        forced = agreement_forces_referent(g, n, m.entity, prev.cb,
                                           std::span<const EntityId>(prev.cf),
                                           registry);
      }
      if (forced) {
        finding.kind = FelicityKind::ZeroLicensedByClue;
        finding.detail = "null subject '" + m.id + "' in a " +
                         std::string(to_string(unit.transition)) +
                         " is licensed: agreement singles out its referent";
      } else {
        finding.kind = FelicityKind::ZeroInRetainOrShiftWithoutClue;
        finding.detail = "null subject '" + m.id + "' in a " +
                         std::string(to_string(unit.transition)) +
                         " without a disambiguating agreement clue";
      }
    } else {
      finding.kind = FelicityKind::Conforming;
      finding.detail = std::string(to_string(m.form)) + " subject '" + m.id +
                       "' conforms to the null/strong usage strategies";
    }
    findings.push_back(std::move(finding));
  }
  return findings;
}

namespace {

void emit_expression_records(const CenteringUnit& unit,
                             const std::vector<Entity>& registry,
                             const std::set<EntityId>& history,
                             std::vector<ExpressionRecord>* records) {
  std::vector<const Mention*> subjects;
  for (const Mention& m : unit.mentions) {
    if (m.function == GrammaticalFunction::Subject) subjects.push_back(&m);
  }
  for (const ExcludedMention& em : unit.excluded) {
    if (em.mention.function == GrammaticalFunction::Subject) {
      subjects.push_back(&em.mention);
    }
  }
  std::sort(subjects.begin(), subjects.end(),
            [](const Mention* a, const Mention* b) {
              return a->surface_position < b->surface_position;
            });

  for (const Mention* m : subjects) {
    if (m->form == Form::Deictic) continue;
    if (!m->entity.valid()) continue;
    const Entity& ent = registry.at(static_cast<size_t>(m->entity.value));
    if (!ent.animate || ent.person != Person::Third) continue;
    if (m->form == Form::Zero && m->contraindexed) continue;

    RecordTag tag;
    if (m->form == Form::SetExpression || m->form == Form::OtherAnaphor ||
        m->set_reference) {
      tag = RecordTag::OtherExcluded;
    } else if ((m->form == Form::FullNp || m->form == Form::PossessiveNp) &&
               history.count(m->entity) == 0) {
      tag = RecordTag::NewEntity;
    } else {
      tag = tag_from_transition(unit.transition);
    }
    records->push_back(ExpressionRecord{m->id, unit.id, m->form, m->function,
                                        tag, unit.sequence});
  }
}

void analyze_unit(CenteringUnit& unit, const CenteringUnit* prev,
                  const std::vector<Entity>& registry,
                  const std::set<EntityId>& history,
                  const EngineOptions& options) {
  try {
    unit.cf = rank_cf(std::span<const Mention>(unit.mentions), registry);
  } catch (const AnnotationError& e) {
    throw AnnotationError("unit " + unit.id + ": " + e.what());
  }
  unit.cp = unit.cf.empty() ? std::nullopt : std::optional<EntityId>(unit.cf.front());

  if (prev == nullptr || unit.segment_initial) {
    unit.cb = std::nullopt;
    unit.cb_unspecified = true;
    unit.transition = Transition::None;
  } else {
    unit.cb_unspecified = false;
    unit.cb = compute_cb(unit, prev);
    if (unit.cb) {
      unit.transition = classify_transition(unit.cb, prev->cb, unit.cp,
                                            options.segment_initial);
    } else if (detect_cent_est(unit, prev, history)) {
      unit.transition = Transition::CentEstab;
      // The new local center: highest-ranked Cf element already known to
      // the discourse.
      for (EntityId e : unit.cf) {
        if (history.count(e)) {
          unit.cb = e;
          break;
        }
      }
    } else {
      unit.transition = Transition::None;
    }
  }
  unit.sequence = classify_sequence(prev ? prev->transition : Transition::None,
                                    unit.transition);
}

void note_history(const CenteringUnit& unit, std::set<EntityId>* history) {
  for (const Mention& m : unit.mentions) {
    if (m.entity.valid()) history->insert(m.entity);
    if (m.possessor) history->insert(*m.possessor);
  }
}

}  // namespace

AnalysisResult analyze_discourse(const Discourse& discourse,
                                 const EngineOptions& options) {
  AnalysisResult result;
  result.discourse = discourse;

  std::set<EntityId> history;
  const CenteringUnit* prev = nullptr;
  for (Segment& segment : result.discourse.segments) {
    for (CenteringUnit& unit : segment.units) {
      analyze_unit(unit, prev, result.discourse.entities, history, options);
      if (prev != nullptr && !unit.segment_initial) {
        auto violations = check_rule1(unit, *prev);
        result.rule1_violations.insert(result.rule1_violations.end(),
                                       violations.begin(), violations.end());
        auto findings = check_felicity(unit, *prev, result.discourse.entities);
        result.felicity_findings.insert(result.felicity_findings.end(),
                                        findings.begin(), findings.end());
      }
      emit_expression_records(unit, result.discourse.entities, history,
                              &result.expression_records);
      note_history(unit, &history);
      prev = &unit;
    }
  }
  return result;
}

double coherence_score(std::span<const Transition> transitions) {
  double sum = 0.0;
  int count = 0;
  for (size_t i = 0; i < transitions.size(); ++i) {
    int weight;
    switch (transitions[i]) {
      case Transition::Continue: weight = 3; break;
      case Transition::Retain: weight = 2; break;
      case Transition::SmoothShift: weight = 1; break;
      case Transition::RoughShift: weight = 0; break;
      default: continue;
    }
    if (transitions[i] == Transition::Continue && i > 0 &&
        transitions[i - 1] == Transition::Retain) {
      weight = std::max(0, weight - 1);  // the retain predicted a shift
    }
    sum += weight;
    ++count;
  }
  if (count == 0) return 1.0;
  return sum / (3.0 * count);
}

ResolutionResult resolve_pronouns(const Discourse& discourse,
                                  const EngineOptions& options) {
  ResolutionResult result;
  Discourse work = discourse;

  std::set<EntityId> history;
  const CenteringUnit* prev = nullptr;
  for (Segment& segment : work.segments) {
    for (CenteringUnit& unit : segment.units) {
      std::vector<size_t> unresolved;
      for (size_t i = 0; i < unit.mentions.size(); ++i) {
        if (!unit.mentions[i].entity.valid()) unresolved.push_back(i);
      }
      std::sort(unresolved.begin(), unresolved.end(), [&](size_t a, size_t b) {
        return unit.mentions[a].surface_position <
               unit.mentions[b].surface_position;
      });

      std::vector<size_t> drop;
      for (size_t idx : unresolved) {
        Mention& m = unit.mentions[idx];
        ResolvedMention rm;
        rm.unit_id = unit.id;
        rm.mention_id = m.id;

        const Gender g = m.agr_gender.value_or(Gender::Unspecified);
        const Number n = m.agr_number.value_or(Number::Unspecified);
        std::vector<EntityId> compatible;
        if (prev != nullptr && !unit.segment_initial) {
          for (EntityId c : prev->cf) {
            const Entity& ent = work.entities.at(static_cast<size_t>(c.value));
            if (!gender_compatible(g, ent.gender)) continue;
            if (!number_compatible(n, ent.number)) continue;
            if (m.form == Form::StrongPronoun && !ent.animate) continue;
            compatible.push_back(c);
          }
        }
        if (compatible.empty()) {
          rm.unresolvable = true;
          result.mentions.push_back(std::move(rm));
          drop.push_back(idx);
          continue;
        }

        // Rank candidates by the transition their assignment would yield,
        // then by Cf(prev) rank. Mentions still unresolved are left out of
        // the trial evaluation.
        struct Scored {
          EntityId candidate;
          int preference;
          int cf_rank;
          Transition transition;
        };
        std::vector<Scored> scored;
        for (size_t rank = 0; rank < compatible.size(); ++rank) {
          EntityId c = compatible[rank];
          CenteringUnit trial;
          trial.segment_initial = unit.segment_initial;
          for (size_t i = 0; i < unit.mentions.size(); ++i) {
            Mention copy = unit.mentions[i];
            if (i == idx) copy.entity = c;
            if (!copy.entity.valid()) continue;
            trial.mentions.push_back(std::move(copy));
          }
          trial.cf = rank_cf(std::span<const Mention>(trial.mentions),
                             work.entities);
          trial.cp = trial.cf.empty() ? std::nullopt
                                      : std::optional<EntityId>(trial.cf.front());
          auto cb = compute_cb(trial, prev);
          Transition t = classify_transition(cb, prev ? prev->cb : std::nullopt,
                                             trial.cp, options.segment_initial);
          int cf_rank = static_cast<int>(
              std::find(prev->cf.begin(), prev->cf.end(), c) - prev->cf.begin());
          scored.push_back(Scored{c, transition_preference(t), cf_rank, t});
        }
        std::stable_sort(scored.begin(), scored.end(),
                         [](const Scored& a, const Scored& b) {
                           if (a.preference != b.preference)
                             return a.preference < b.preference;
                           return a.cf_rank < b.cf_rank;
                         });
        m.entity = scored.front().candidate;
        rm.chosen = m.entity;
        rm.resulting_transition = scored.front().transition;
        for (const Scored& s : scored) rm.candidates.push_back(s.candidate);
        result.mentions.push_back(std::move(rm));
      }

      // Unresolvable mentions cannot take part in the analysis.
      std::sort(drop.begin(), drop.end(), std::greater<size_t>());
      for (size_t idx : drop) {
        unit.mentions.erase(unit.mentions.begin() + static_cast<long>(idx));
      }

      analyze_unit(unit, prev, work.entities, history, options);
      note_history(unit, &history);
      prev = &unit;
    }
  }

  result.analysis = analyze_discourse(work, options);
  // Report the settled transition per resolved mention.
  for (ResolvedMention& rm : result.mentions) {
    if (rm.unresolvable) continue;
    for (const Segment& segment : result.analysis.discourse.segments) {
      for (const CenteringUnit& unit : segment.units) {
        if (unit.id == rm.unit_id) rm.resulting_transition = unit.transition;
      }
    }
  }
  return result;
}

const char* to_string(RecordTag t) {
  switch (t) {
    case RecordTag::Continue: return "continue";
    case RecordTag::Retain: return "retain";
    case RecordTag::Shift: return "shift";
    case RecordTag::CentEstab: return "cent_estab";
    case RecordTag::OtherExcluded: return "other_excluded";
    case RecordTag::NewEntity: return "new_entity";
    case RecordTag::None: return "none";
  }
  return "none";
}

const char* to_string(FelicityKind k) {
  switch (k) {
    case FelicityKind::ExpectedZeroGotStrong: return "expected_zero_got_strong";
    case FelicityKind::ZeroInRetainOrShiftWithoutClue:
      return "zero_in_retain_or_shift_without_clue";
    case FelicityKind::ZeroLicensedByClue: return "zero_licensed_by_clue";
    case FelicityKind::Conforming: return "conforming";
  }
  return "conforming";
}

}  // namespace centering
