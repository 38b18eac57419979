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

#include "centering/model.hpp"

#include <algorithm>
#include <tuple>

namespace centering {

std::optional<EntityId> Discourse::find_entity(std::string_view external_id) const {
  for (size_t i = 0; i < entities.size(); ++i) {
    if (entities[i].id == external_id) return EntityId{static_cast<int>(i)};
  }
  return std::nullopt;
}

namespace {

int function_rank(GrammaticalFunction f) {
  switch (f) {
    case GrammaticalFunction::Subject: return 0;
    case GrammaticalFunction::Object2: return 1;
    case GrammaticalFunction::Object: return 2;
    case GrammaticalFunction::Other: return 3;
  }
  return 3;
}

struct Slot {
  EntityId entity;
  // Input index of the mention that evoked this slot, -1 for an inserted
  // possessor.
  int mention_index;
};

}  // namespace

std::vector<EntityId> rank_cf(std::span<const Mention> mentions,
                              const std::vector<Entity>& registry) {
  const auto check_entity = [&](EntityId id) {
    if (!id.valid() || static_cast<size_t>(id.value) >= registry.size()) {
      throw AnnotationError("rank_cf: mention references unknown entity");
    }
  };

  int empathy_count = 0;
  for (const Mention& m : mentions) {
    check_entity(m.entity);
    if (m.possessor) check_entity(*m.possessor);
    if (m.empathy) ++empathy_count;
  }
  if (empathy_count > 1) {
    throw AnnotationError("rank_cf: more than one empathy mention in unit");
  }

  // empathy > subject > object2 > object > others; ties by surface order.
  std::vector<int> order(mentions.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  const auto key = [&](int i) {
    const Mention& m = mentions[static_cast<size_t>(i)];
    return std::make_tuple(m.empathy ? 0 : 1, function_rank(m.function),
                           m.surface_position, m.entity.value);
  };
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return key(a) < key(b); });

  std::vector<Slot> slots;
  slots.reserve(mentions.size() * 2);
  for (int i : order) {
    slots.push_back(Slot{mentions[static_cast<size_t>(i)].entity, i});
  }

  // Possessor insertion, in surface order of the possessive mentions. The
  // possessor lands next to its own mention's slot so that two possessives
  // sharing an entity stay unambiguous.
  std::vector<int> possessives;
  for (size_t i = 0; i < mentions.size(); ++i) {
    const Mention& m = mentions[i];
    if (m.form == Form::PossessiveNp && m.possessor) {
      possessives.push_back(static_cast<int>(i));
    }
  }
  std::sort(possessives.begin(), possessives.end(), [&](int a, int b) {
    const Mention& ma = mentions[static_cast<size_t>(a)];
    const Mention& mb = mentions[static_cast<size_t>(b)];
    return std::make_tuple(ma.surface_position, a) <
           std::make_tuple(mb.surface_position, b);
  });
  for (int pi : possessives) {
    const Mention& m = mentions[static_cast<size_t>(pi)];
    auto it = std::find_if(slots.begin(), slots.end(), [&](const Slot& s) {
      return s.mention_index == pi;
    });
    if (it == slots.end()) continue;
    const bool possessed_animate =
        registry[static_cast<size_t>(m.entity.value)].animate;
    if (possessed_animate) ++it;
    slots.insert(it, Slot{*m.possessor, -1});
  }

  // Collapse duplicate entities onto their highest-ranked slot.
  std::vector<EntityId> ranked;
  ranked.reserve(slots.size());
  for (const Slot& s : slots) {
    if (std::find(ranked.begin(), ranked.end(), s.entity) == ranked.end()) {
      ranked.push_back(s.entity);
    }
  }
  return ranked;
}

bool gender_compatible(Gender observed, Gender candidate) {
  return observed == Gender::Unspecified || candidate == Gender::Unspecified ||
         observed == candidate;
}

bool number_compatible(Number observed, Number candidate) {
  return observed == Number::Unspecified || candidate == Number::Unspecified ||
         observed == candidate;
}

const char* to_string(Gender g) {
  switch (g) {
    case Gender::Masculine: return "m";
    case Gender::Feminine: return "f";
    case Gender::Unspecified: return "u";
  }
  return "u";
}

const char* to_string(Number n) {
  switch (n) {
    case Number::Singular: return "sg";
    case Number::Plural: return "pl";
    case Number::Unspecified: return "u";
  }
  return "u";
}

const char* to_string(Form f) {
  switch (f) {
    case Form::Zero: return "zero";
    case Form::Clitic: return "clitic";
    case Form::StrongPronoun: return "strong";
    case Form::FullNp: return "np";
    case Form::PossessiveNp: return "poss_np";
    case Form::Deictic: return "deictic";
    case Form::OtherAnaphor: return "other_anaphor";
    case Form::SetExpression: return "set_expr";
  }
  return "np";
}

const char* to_string(GrammaticalFunction f) {
  switch (f) {
    case GrammaticalFunction::Subject: return "subj";
    case GrammaticalFunction::Object2: return "obj2";
    case GrammaticalFunction::Object: return "obj";
    case GrammaticalFunction::Other: return "other";
  }
  return "other";
}

const char* to_string(ClauseKind k) {
  switch (k) {
    case ClauseKind::Main: return "main";
    case ClauseKind::TensedAdjunct: return "tensed_adj";
    case ClauseKind::TenselessAdjunct: return "tenseless_adj";
  }
  return "main";
}

const char* to_string(Transition t) {
  switch (t) {
    case Transition::Continue: return "continue";
    case Transition::Retain: return "retain";
    case Transition::SmoothShift: return "smooth_shift";
    case Transition::RoughShift: return "rough_shift";
    case Transition::CentEstab: return "cent_estab";
    case Transition::OtherExcluded: return "other_excluded";
    case Transition::None: return "none";
  }
  return "none";
}

const char* to_string(SequenceLabel s) {
  switch (s) {
    case SequenceLabel::ContCont: return "cont_cont";
    case SequenceLabel::ShiftCont: return "shift_cont";
    case SequenceLabel::RetCont: return "ret_cont";
    case SequenceLabel::NotApplicable: return "n/a";
  }
  return "n/a";
}

const char* to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::DeicticForm: return "deictic";
    case ExclusionReason::NonThirdPerson: return "non_third_person";
    case ExclusionReason::SetReference: return "set_reference";
    case ExclusionReason::OtherAnaphor: return "other_anaphor";
  }
  return "deictic";
}

}  // namespace centering
