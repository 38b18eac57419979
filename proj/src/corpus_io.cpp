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

#include "centering/corpus_io.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace centering {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string at(std::string_view source, const std::string& path,
               const std::string& message) {
  return std::string(source) + ": " + path + ": " + message;
}

Gender parse_gender(const std::string& s, std::string_view src, const std::string& path) {
  if (s == "m") return Gender::Masculine;
  if (s == "f") return Gender::Feminine;
  if (s == "u") return Gender::Unspecified;
  throw ParseError(at(src, path, "invalid gender '" + s + "' (expected m|f|u)"));
}

Number parse_number(const std::string& s, std::string_view src, const std::string& path) {
  if (s == "sg") return Number::Singular;
  if (s == "pl") return Number::Plural;
  if (s == "u") return Number::Unspecified;
  throw ParseError(at(src, path, "invalid number '" + s + "' (expected sg|pl|u)"));
}

Person parse_person(int p, std::string_view src, const std::string& path) {
  switch (p) {
    case 1: return Person::First;
    case 2: return Person::Second;
    case 3: return Person::Third;
  }
  throw ParseError(at(src, path, "invalid person (expected 1|2|3)"));
}

Form parse_form(const std::string& s, std::string_view src, const std::string& path) {
  if (s == "zero") return Form::Zero;
  if (s == "clitic") return Form::Clitic;
  if (s == "strong") return Form::StrongPronoun;
  if (s == "np") return Form::FullNp;
  if (s == "poss_np") return Form::PossessiveNp;
  if (s == "deictic") return Form::Deictic;
  if (s == "other_anaphor") return Form::OtherAnaphor;
  if (s == "set_expr") return Form::SetExpression;
  throw ParseError(at(src, path, "invalid form '" + s + "'"));
}

GrammaticalFunction parse_gf(const std::string& s, std::string_view src,
                             const std::string& path) {
  if (s == "subj") return GrammaticalFunction::Subject;
  if (s == "obj2") return GrammaticalFunction::Object2;
  if (s == "obj") return GrammaticalFunction::Object;
  if (s == "other") return GrammaticalFunction::Other;
  throw ParseError(at(src, path, "invalid gf '" + s + "' (expected subj|obj2|obj|other)"));
}

ClauseKind parse_kind(const std::string& s, std::string_view src, const std::string& path) {
  if (s == "main") return ClauseKind::Main;
  if (s == "tensed_adj") return ClauseKind::TensedAdjunct;
  if (s == "tenseless_adj") return ClauseKind::TenselessAdjunct;
  throw ParseError(at(src, path, "invalid clause kind '" + s + "'"));
}

void check_fields(const json& obj, std::initializer_list<const char*> known,
                  std::string_view src, const std::string& path,
                  const ParseOptions& options, std::vector<std::string>* warnings) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (item.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      const std::string msg = at(src, path, "unknown field '" + item.key() + "'");
      if (options.strict) throw ParseError(msg);
      warnings->push_back(msg + " (ignored)");
    }
  }
}

const json& require(const json& obj, const char* key, std::string_view src,
                    const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(at(src, path, std::string("missing required field '") + key + "'"));
  }
  return *it;
}

std::string require_string(const json& obj, const char* key, std::string_view src,
                           const std::string& path) {
  const json& v = require(obj, key, src, path);
  if (!v.is_string()) {
    throw ParseError(at(src, path, std::string("field '") + key + "' must be a string"));
  }
  return v.get<std::string>();
}

bool optional_bool(const json& obj, const char* key, bool fallback,
                   std::string_view src, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) {
    throw ParseError(at(src, path, std::string("field '") + key + "' must be a boolean"));
  }
  return it->get<bool>();
}

MentionAnnotation parse_mention(const json& node, const ParseOptions& options,
                                std::string_view src, const std::string& path,
                                std::vector<std::string>* warnings) {
  if (!node.is_object()) throw ParseError(at(src, path, "mention must be an object"));
  check_fields(node,
               {"entity", "form", "gf", "empathy", "possessor", "contraindexed",
                "set_ref", "gender", "number"},
               src, path, options, warnings);

  MentionAnnotation m;
  m.form = parse_form(require_string(node, "form", src, path), src, path);
  m.gf = parse_gf(require_string(node, "gf", src, path), src, path);
  if (node.contains("entity")) {
    m.entity_id = require_string(node, "entity", src, path);
  }
  m.empathy = optional_bool(node, "empathy", false, src, path);
  m.contraindexed = optional_bool(node, "contraindexed", false, src, path);
  m.set_ref = optional_bool(node, "set_ref", false, src, path);
  if (node.contains("possessor")) {
    m.possessor_id = require_string(node, "possessor", src, path);
  }
  if (node.contains("gender")) {
    m.gender = parse_gender(require_string(node, "gender", src, path), src, path);
  }
  if (node.contains("number")) {
    m.number = parse_number(require_string(node, "number", src, path), src, path);
  }

  if (m.entity_id.empty()) {
    const bool pronominal = m.form == Form::Zero || m.form == Form::Clitic ||
                            m.form == Form::StrongPronoun;
    if (!options.allow_unresolved || !pronominal) {
      throw ReferenceError(at(src, path, "mention missing entity reference"));
    }
  }
  if (m.possessor_id.has_value() != (m.form == Form::PossessiveNp)) {
    throw ConsistencyError(
        at(src, path, m.possessor_id
                          ? "possessor given for a non-possessive form"
                          : "possessive form requires a possessor"));
  }
  if (m.contraindexed && m.form != Form::Zero) {
    throw ConsistencyError(at(src, path, "contraindexed is only valid on zeros"));
  }
  if (m.set_ref && (m.form == Form::Deictic || m.form == Form::OtherAnaphor)) {
    throw ConsistencyError(at(src, path, "set_ref is not valid on this form"));
  }
  if (m.form == Form::Clitic && m.gf == GrammaticalFunction::Subject) {
    warnings->push_back(at(src, path, "clitic in subject position (clitics are non-subject by definition)"));
  }
  return m;
}

}  // namespace

std::vector<CenteringUnit> segment_units(const RawSentence& sentence,
                                         const std::vector<Entity>& registry,
                                         bool allow_unresolved) {
  const auto resolve = [&](const std::string& id) -> EntityId {
    if (id.empty()) {
      if (!allow_unresolved) throw ReferenceError("mention missing entity reference");
      return EntityId{};
    }
    for (size_t i = 0; i < registry.size(); ++i) {
      if (registry[i].id == id) return EntityId{static_cast<int>(i)};
    }
    throw ReferenceError("unknown entity '" + id + "'");
  };

  bool opens_unit = false;
  for (const RawClause& c : sentence.clauses) {
    if (c.kind != ClauseKind::TenselessAdjunct) opens_unit = true;
  }
  if (sentence.clauses.empty()) {
    throw DegenerateInputError("sentence has no clauses");
  }
  if (!opens_unit) {
    throw DegenerateInputError(
        "sentence contains only tenseless adjuncts and cannot form a unit");
  }

  std::vector<CenteringUnit> units;
  std::vector<Mention> pending_initial;
  for (const RawClause& clause : sentence.clauses) {
    std::vector<Mention> mentions;
    mentions.reserve(clause.mentions.size());
    for (const MentionAnnotation& a : clause.mentions) {
      Mention m;
      m.entity = resolve(a.entity_id);
      m.form = a.form;
      m.function = a.gf;
      m.empathy = a.empathy;
      if (a.possessor_id) m.possessor = resolve(*a.possessor_id);
      m.contraindexed = a.contraindexed;
      m.set_reference = a.set_ref;
      m.agr_gender = a.gender;
      m.agr_number = a.number;
      mentions.push_back(std::move(m));
    }
    if (clause.kind == ClauseKind::TenselessAdjunct) {
      auto& target = units.empty() ? pending_initial : units.back().mentions;
      target.insert(target.end(), mentions.begin(), mentions.end());
    } else {
      CenteringUnit unit;
      unit.clause_kind = clause.kind;
      unit.mentions = std::move(pending_initial);
      pending_initial.clear();
      unit.mentions.insert(unit.mentions.end(), mentions.begin(), mentions.end());
      units.push_back(std::move(unit));
    }
  }

  for (CenteringUnit& unit : units) {
    int pos = 0;
    int empathy_count = 0;
    for (Mention& m : unit.mentions) {
      m.surface_position = pos++;
      if (m.empathy) ++empathy_count;
    }
    if (empathy_count > 1) {
      throw ConsistencyError("more than one empathy mention in one unit");
    }
  }
  return units;
}

CenteringUnit filter_mentions(CenteringUnit unit,
                              const std::vector<Entity>& registry) {
  std::vector<Mention> kept;
  kept.reserve(unit.mentions.size());
  for (Mention& m : unit.mentions) {
    std::optional<ExclusionReason> reason;
    if (m.form == Form::Deictic) {
      reason = ExclusionReason::DeicticForm;
    } else if (m.form == Form::OtherAnaphor) {
      reason = ExclusionReason::OtherAnaphor;
    } else if (m.form == Form::SetExpression || m.set_reference) {
      reason = ExclusionReason::SetReference;
    } else if (m.entity.valid() &&
               registry.at(static_cast<size_t>(m.entity.value)).person !=
                   Person::Third) {
      reason = ExclusionReason::NonThirdPerson;
    }
    if (reason) {
      unit.excluded.push_back(ExcludedMention{std::move(m), *reason});
    } else {
      kept.push_back(std::move(m));
    }
  }
  unit.mentions = std::move(kept);
  return unit;
}

AnnotatedDocument parse_corpus(std::string_view text, const ParseOptions& options,
                               std::string_view source_name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source_name) + ": " + e.what());
  }
  if (!root.is_object()) {
    throw ParseError(at(source_name, "$", "document root must be an object"));
  }

  AnnotatedDocument doc;
  // "analysis" is the output-only block of a previously serialized result;
  // it is always skipped on input.
  check_fields(root, {"entities", "segments", "analysis"}, source_name, "$",
               options, &doc.warnings);

  const json& entities = require(root, "entities", source_name, "$");
  if (!entities.is_array()) {
    throw ParseError(at(source_name, "entities", "must be an array"));
  }
  std::set<std::string> seen_ids;
  for (size_t i = 0; i < entities.size(); ++i) {
    const std::string path = "entities[" + std::to_string(i) + "]";
    const json& node = entities[i];
    if (!node.is_object()) throw ParseError(at(source_name, path, "entity must be an object"));
    check_fields(node, {"id", "animate", "gender", "number", "person"},
                 source_name, path, options, &doc.warnings);
    Entity e;
    e.id = require_string(node, "id", source_name, path);
    if (e.id.empty()) throw ParseError(at(source_name, path, "entity id must be non-empty"));
    if (!seen_ids.insert(e.id).second) {
      throw RegistryError(at(source_name, path, "duplicate entity id '" + e.id + "'"));
    }
    e.animate = optional_bool(node, "animate", false, source_name, path);
    if (node.contains("gender")) {
      e.gender = parse_gender(require_string(node, "gender", source_name, path),
                              source_name, path);
    }
    if (node.contains("number")) {
      e.number = parse_number(require_string(node, "number", source_name, path),
                              source_name, path);
    }
    if (node.contains("person")) {
      const json& p = node["person"];
      if (!p.is_number_integer()) {
        throw ParseError(at(source_name, path, "person must be an integer"));
      }
      e.person = parse_person(p.get<int>(), source_name, path);
    }
    doc.discourse.entities.push_back(std::move(e));
  }

  const json& segments = require(root, "segments", source_name, "$");
  if (!segments.is_array()) {
    throw ParseError(at(source_name, "segments", "must be an array"));
  }
  for (size_t si = 0; si < segments.size(); ++si) {
    const std::string spath = "segments[" + std::to_string(si) + "]";
    const json& snode = segments[si];
    if (!snode.is_object()) throw ParseError(at(source_name, spath, "segment must be an object"));
    check_fields(snode, {"sentences"}, source_name, spath, options, &doc.warnings);
    RawSegment segment;
    const json& sentences = require(snode, "sentences", source_name, spath);
    if (!sentences.is_array()) {
      throw ParseError(at(source_name, spath + ".sentences", "must be an array"));
    }
    for (size_t ti = 0; ti < sentences.size(); ++ti) {
      const std::string tpath = spath + ".sentences[" + std::to_string(ti) + "]";
      const json& tnode = sentences[ti];
      if (!tnode.is_object()) throw ParseError(at(source_name, tpath, "sentence must be an object"));
      check_fields(tnode, {"clauses"}, source_name, tpath, options, &doc.warnings);
      RawSentence sentence;
      const json& clauses = require(tnode, "clauses", source_name, tpath);
      if (!clauses.is_array()) {
        throw ParseError(at(source_name, tpath + ".clauses", "must be an array"));
      }
      for (size_t ci = 0; ci < clauses.size(); ++ci) {
        const std::string cpath = tpath + ".clauses[" + std::to_string(ci) + "]";
        const json& cnode = clauses[ci];
        if (!cnode.is_object()) throw ParseError(at(source_name, cpath, "clause must be an object"));
        check_fields(cnode, {"kind", "mentions"}, source_name, cpath, options,
                     &doc.warnings);
        RawClause clause;
        clause.kind = parse_kind(require_string(cnode, "kind", source_name, cpath),
                                 source_name, cpath);
        if (cnode.contains("mentions")) {
          const json& mentions = cnode["mentions"];
          if (!mentions.is_array()) {
            throw ParseError(at(source_name, cpath + ".mentions", "must be an array"));
          }
          for (size_t mi = 0; mi < mentions.size(); ++mi) {
            const std::string mpath = cpath + ".mentions[" + std::to_string(mi) + "]";
            MentionAnnotation a = parse_mention(mentions[mi], options, source_name,
                                                mpath, &doc.warnings);
            if (!a.entity_id.empty() &&
                !std::any_of(doc.discourse.entities.begin(),
                             doc.discourse.entities.end(),
                             [&](const Entity& e) { return e.id == a.entity_id; })) {
              throw ReferenceError(
                  at(source_name, mpath, "unknown entity '" + a.entity_id + "'"));
            }
            if (a.possessor_id &&
                !std::any_of(doc.discourse.entities.begin(),
                             doc.discourse.entities.end(),
                             [&](const Entity& e) { return e.id == *a.possessor_id; })) {
              throw ReferenceError(
                  at(source_name, mpath, "unknown entity '" + *a.possessor_id + "'"));
            }
            clause.mentions.push_back(std::move(a));
          }
        }
        sentence.clauses.push_back(std::move(clause));
      }
      segment.sentences.push_back(std::move(sentence));
    }
    doc.segments.push_back(std::move(segment));
  }

  // Segment into units and filter mentions.
  int unit_counter = 0;
  for (size_t si = 0; si < doc.segments.size(); ++si) {
    Segment segment;
    for (size_t ti = 0; ti < doc.segments[si].sentences.size(); ++ti) {
      std::vector<CenteringUnit> units;
      try {
        units = segment_units(doc.segments[si].sentences[ti],
                              doc.discourse.entities, options.allow_unresolved);
      } catch (const DegenerateInputError& e) {
        throw DegenerateInputError(
            at(source_name,
               "segments[" + std::to_string(si) + "].sentences[" + std::to_string(ti) + "]",
               e.what()));
      } catch (const ConsistencyError& e) {
        throw ConsistencyError(
            at(source_name,
               "segments[" + std::to_string(si) + "].sentences[" + std::to_string(ti) + "]",
               e.what()));
      }
      for (CenteringUnit& unit : units) {
        ++unit_counter;
        unit.id = "u" + std::to_string(unit_counter);
        unit.segment_index = static_cast<int>(si);
        unit.segment_initial = segment.units.empty();
        for (Mention& m : unit.mentions) {
          m.id = unit.id + ".m" + std::to_string(m.surface_position + 1);
        }
        segment.units.push_back(filter_mentions(std::move(unit), doc.discourse.entities));
      }
    }
    doc.discourse.segments.push_back(std::move(segment));
  }
  return doc;
}

namespace {

ordered_json mention_to_json(const MentionAnnotation& m) {
  ordered_json node;
  if (!m.entity_id.empty()) node["entity"] = m.entity_id;
  node["form"] = to_string(m.form);
  node["gf"] = to_string(m.gf);
  if (m.empathy) node["empathy"] = true;
  if (m.possessor_id) node["possessor"] = *m.possessor_id;
  if (m.contraindexed) node["contraindexed"] = true;
  if (m.set_ref) node["set_ref"] = true;
  if (m.gender) node["gender"] = to_string(*m.gender);
  if (m.number) node["number"] = to_string(*m.number);
  return node;
}

}  // namespace

std::string serialize_analysis(const AnnotatedDocument& document,
                               const AnalysisResult& result) {
  const std::vector<Entity>& registry = result.discourse.entities;
  const auto eid = [&](EntityId id) { return registry.at(static_cast<size_t>(id.value)).id; };

  ordered_json root;
  root["entities"] = ordered_json::array();
  for (const Entity& e : registry) {
    ordered_json node;
    node["id"] = e.id;
    node["animate"] = e.animate;
    node["gender"] = to_string(e.gender);
    node["number"] = to_string(e.number);
    node["person"] = e.person == Person::First ? 1 : e.person == Person::Second ? 2 : 3;
    root["entities"].push_back(std::move(node));
  }

  root["segments"] = ordered_json::array();
  for (const RawSegment& segment : document.segments) {
    ordered_json snode;
    snode["sentences"] = ordered_json::array();
    for (const RawSentence& sentence : segment.sentences) {
      ordered_json tnode;
      tnode["clauses"] = ordered_json::array();
      for (const RawClause& clause : sentence.clauses) {
        ordered_json cnode;
        cnode["kind"] = to_string(clause.kind);
        cnode["mentions"] = ordered_json::array();
        for (const MentionAnnotation& m : clause.mentions) {
          cnode["mentions"].push_back(mention_to_json(m));
        }
        tnode["clauses"].push_back(std::move(cnode));
      }
      snode["sentences"].push_back(std::move(tnode));
    }
    root["segments"].push_back(std::move(snode));
  }

  ordered_json units = ordered_json::array();
  for (const Segment& segment : result.discourse.segments) {
    for (const CenteringUnit& unit : segment.units) {
      ordered_json node;
      node["id"] = unit.id;
      node["segment"] = unit.segment_index;
      node["clause_kind"] = to_string(unit.clause_kind);
      node["segment_initial"] = unit.segment_initial;
      ordered_json mentions = ordered_json::array();
      for (const Mention& m : unit.mentions) {
        ordered_json mnode;
        mnode["id"] = m.id;
        mnode["entity"] = m.entity.valid() ? ordered_json(eid(m.entity)) : ordered_json(nullptr);
        mnode["form"] = to_string(m.form);
        mnode["gf"] = to_string(m.function);
        mentions.push_back(std::move(mnode));
      }
      node["mentions"] = std::move(mentions);
      ordered_json excluded = ordered_json::array();
      for (const ExcludedMention& em : unit.excluded) {
        ordered_json enode;
        enode["id"] = em.mention.id;
        enode["entity"] = em.mention.entity.valid() ? ordered_json(eid(em.mention.entity))
                                                    : ordered_json(nullptr);
        enode["form"] = to_string(em.mention.form);
        enode["reason"] = to_string(em.reason);
        excluded.push_back(std::move(enode));
      }
      node["excluded"] = std::move(excluded);
      ordered_json cf = ordered_json::array();
      for (EntityId e : unit.cf) cf.push_back(eid(e));
      node["cf"] = std::move(cf);
      if (unit.cb) {
        node["cb"] = eid(*unit.cb);
      } else if (unit.cb_unspecified) {
        node["cb"] = "?";
      } else {
        node["cb"] = nullptr;
      }
      node["cp"] = unit.cp ? ordered_json(eid(*unit.cp)) : ordered_json(nullptr);
      node["transition"] = to_string(unit.transition);
      node["sequence"] = to_string(unit.sequence);
      units.push_back(std::move(node));
    }
  }

  ordered_json records = ordered_json::array();
  for (const ExpressionRecord& r : result.expression_records) {
    ordered_json node;
    node["mention"] = r.mention_id;
    node["unit"] = r.unit_id;
    node["form"] = to_string(r.form);
    node["gf"] = to_string(r.function);
    node["tag"] = to_string(r.tag);
    node["sequence"] = to_string(r.sequence);
    records.push_back(std::move(node));
  }

  ordered_json violations = ordered_json::array();
  for (const Rule1Violation& v : result.rule1_violations) {
    ordered_json node;
    node["unit"] = v.unit_id;
    node["detail"] = v.detail;
    violations.push_back(std::move(node));
  }

  ordered_json felicity = ordered_json::array();
  for (const FelicityFinding& f : result.felicity_findings) {
    ordered_json node;
    node["unit"] = f.unit_id;
    node["kind"] = to_string(f.kind);
    node["detail"] = f.detail;
    felicity.push_back(std::move(node));
  }

  root["analysis"] = ordered_json{{"units", std::move(units)},
                                  {"records", std::move(records)},
                                  {"rule1_violations", std::move(violations)},
                                  {"felicity", std::move(felicity)}};
  return root.dump(2) + "\n";
}

}  // namespace centering
