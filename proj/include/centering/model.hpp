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

#ifndef CENTERING_MODEL_HPP_
#define CENTERING_MODEL_HPP_

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace centering {

// Agreement features. "Unspecified" is compatible with everything.
enum class Gender { Masculine, Feminine, Unspecified };
enum class Number { Singular, Plural, Unspecified };
enum class Person { First, Second, Third };

// Index of an entity in a discourse's registry.
struct EntityId {
  int value = -1;

  bool valid() const { return value >= 0; }
  auto operator<=>(const EntityId&) const = default;
};

// A discourse referent. Registered once per discourse; all mentions refer
// back into the registry.
struct Entity {
  std::string id;
  bool animate = false;
  Gender gender = Gender::Unspecified;
  Number number = Number::Unspecified;
  Person person = Person::Third;
};

// Surface realization categories. "zero" is the null subject; clitics are
// verb-attached weak pronouns; strong pronouns are the free forms restricted
// to animate referents.
enum class Form {
  Zero,
  Clitic,
  StrongPronoun,
  FullNp,
  PossessiveNp,
  Deictic,
  OtherAnaphor,
  SetExpression,
};

enum class GrammaticalFunction { Subject, Object2, Object, Other };

// One realization of an entity within a centering unit.
//
// `entity` may be invalid for pronominal mentions in documents prepared for
// resolution; such mentions carry observed agreement features instead.
// `possessor` is present exactly for possessive NPs: `entity` is the
// possessed, `possessor` the possessor.
struct Mention {
  std::string id;
  EntityId entity;
  Form form = Form::FullNp;
  GrammaticalFunction function = GrammaticalFunction::Other;
  bool empathy = false;
  std::optional<EntityId> possessor;
  bool contraindexed = false;
  bool set_reference = false;
  std::optional<Gender> agr_gender;
  std::optional<Number> agr_number;
  int surface_position = 0;

  bool pronominal() const {
    return form == Form::Zero || form == Form::Clitic ||
           form == Form::StrongPronoun;
  }
};

enum class ClauseKind { Main, TensedAdjunct, TenselessAdjunct };

// The four Table-1 transitions plus the categories outside them:
// center establishment, set-building/unanalyzed references, and "none"
// (segment-initial or disconnected units).
enum class Transition {
  Continue,
  Retain,
  SmoothShift,
  RoughShift,
  CentEstab,
  OtherExcluded,
  None,
};

// Classification of the transition preceding a continue.
enum class SequenceLabel { ContCont, ShiftCont, RetCont, NotApplicable };

// Why a mention was excluded from centering participation.
enum class ExclusionReason { DeicticForm, NonThirdPerson, SetReference, OtherAnaphor };

struct ExcludedMention {
  Mention mention;
  ExclusionReason reason = ExclusionReason::DeicticForm;
};

// The atomic centering domain. `mentions` holds the mentions that take part
// in Cf/Cb computation; deictics and unanalyzed references sit in `excluded`
// but remain visible to the expression statistics. Computed fields are
// populated by the engine.
struct CenteringUnit {
  std::string id;
  int segment_index = 0;
  std::vector<Mention> mentions;
  std::vector<ExcludedMention> excluded;
  ClauseKind clause_kind = ClauseKind::Main;
  bool segment_initial = false;

  std::vector<EntityId> cf;
  std::optional<EntityId> cp;
  std::optional<EntityId> cb;
  // True when Cb is "?" (segment-initial / no predecessor) as opposed to
  // undefined after a failed computation.
  bool cb_unspecified = false;
  Transition transition = Transition::None;
  SequenceLabel sequence = SequenceLabel::NotApplicable;
};

struct Segment {
  std::vector<CenteringUnit> units;
};

struct Discourse {
  std::vector<Entity> entities;
  std::vector<Segment> segments;

  const Entity& entity(EntityId id) const { return entities.at(static_cast<size_t>(id.value)); }
  std::optional<EntityId> find_entity(std::string_view external_id) const;
};

// Raised when an annotation breaks a model invariant (unknown entity
// reference, duplicated empathy locus, ...).
class AnnotationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ranks the forward-looking centers of one unit.
//
// Ordering: the empathy mention outranks everything, then subject > object2
// > object > others, ties broken by surface position. Duplicate entities
// collapse onto their highest-ranked slot. For each possessive NP the
// possessor is inserted immediately before the possessed when the possessed
// is inanimate, immediately after when it is animate.
std::vector<EntityId> rank_cf(std::span<const Mention> mentions,
                              const std::vector<Entity>& registry);

// Feature compatibility: unspecified matches everything.
bool gender_compatible(Gender observed, Gender candidate);
bool number_compatible(Number observed, Number candidate);

const char* to_string(Gender g);
const char* to_string(Number n);
const char* to_string(Form f);
const char* to_string(GrammaticalFunction f);
const char* to_string(ClauseKind k);
const char* to_string(Transition t);
const char* to_string(SequenceLabel s);
const char* to_string(ExclusionReason r);

}  // namespace centering

#endif  // CENTERING_MODEL_HPP_
