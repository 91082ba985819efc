#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "error.hpp"
#include "feature_id.hpp"
#include "table.hpp"
#include "xml.hpp"

namespace lg2lmf {

enum class Status { to_be_encoded, to_be_completed, completed };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::completed: return "completed";
    case Status::to_be_completed: return "to be completed";
    case Status::to_be_encoded: return "to be encoded";
  }
  return "";
}

inline std::optional<Status> parse_status(std::string_view s) {
  if (s == "completed") return Status::completed;
  if (s == "to be completed") return Status::to_be_completed;
  if (s == "to be encoded") return Status::to_be_encoded;
  return std::nullopt;
}

// Exactly one third encoded stays "to be completed".
inline Status compute_status(int encoded, int unencoded, Findings* findings = nullptr,
                             const std::string& location = {}) {
  if (encoded < 0 || unencoded < 0)
    throw Error("BAD_VALUE", "negative feature count", location);
  if (encoded == 0 && unencoded == 0) {
    if (findings)
      findings->warn("NO_FEATURES", "entry has no applicable feature; status 'to be encoded'",
                     location);
    return Status::to_be_encoded;
  }
  if (unencoded == 0)
    return Status::completed;
  if (static_cast<long long>(encoded) * 3 < static_cast<long long>(encoded) + unencoded)
    return Status::to_be_encoded;
  return Status::to_be_completed;
}

inline std::string make_entry_id(Category category, std::string_view class_id, int row) {
  return std::string(category_code(category)) + "_" + std::string(class_id) + "_" +
         std::to_string(row);
}

struct PositiveFeature {
  std::string id;  // normalized
  FeatureExpr expr;
  ResolvedValue value;
  FeatureAction action;

  bool operator==(const PositiveFeature&) const = default;
};

struct FeatureTree {
  std::map<int, std::vector<PositiveFeature>> arguments;  // by slot
  std::vector<PositiveFeature> constructions;
  std::vector<PositiveFeature> lexeme_properties;
  std::vector<PositiveFeature> other;

  bool empty() const {
    return arguments.empty() && constructions.empty() && lexeme_properties.empty() &&
           other.empty();
  }
  std::vector<const PositiveFeature*> all() const {
    std::vector<const PositiveFeature*> out;
    for (const auto& [slot, fs] : arguments)
      for (const auto& f : fs)
        out.push_back(&f);
    for (const auto* branch : {&constructions, &lexeme_properties, &other})
      for (const auto& f : *branch)
        out.push_back(&f);
    return out;
  }
  const PositiveFeature* find(std::string_view id) const {
    for (const auto* f : all())
      if (f->id == id)
        return f;
    return nullptr;
  }
  bool operator==(const FeatureTree&) const = default;
};

struct LGLexEntry {
  std::string entry_id;
  Category category = Category::verb;
  std::string lemma;
  std::optional<std::string> translation;
  std::optional<std::string> example;
  std::string class_id;
  int row = 0;
  FeatureTree features;
  int encoded_count = 0;
  int unencoded_count = 0;

  Status status(Findings* findings = nullptr) const {
    return compute_status(encoded_count, unencoded_count, findings, entry_id);
  }
};

inline std::optional<int> slot_of(const FeatureAction& action) {
  if (auto* a = std::get_if<ConstituentAction>(&action)) return a->slot.index;
  if (auto* a = std::get_if<IntroducerAction>(&action)) return a->slot.index;
  if (auto* a = std::get_if<RestrictionAction>(&action)) return a->slot.index;
  return std::nullopt;
}

inline LGLexEntry build_lglex_entry(const EntryRecord& record, const FeatureCatalog& catalog,
                                    Findings* findings = nullptr) {
  LGLexEntry e;
  e.category = catalog.category;
  e.entry_id = make_entry_id(e.category, record.class_id, record.row);
  e.lemma = record.lemma;
  if (!record.translation.empty())
    e.translation = record.translation;
  if (!record.example.empty())
    e.example = record.example;
  e.class_id = record.class_id;
  e.row = record.row;
  e.encoded_count = record.encoded_count;
  e.unencoded_count = record.unencoded_count;

  for (const auto& [id, value] : record.resolved) {
    if (!value.is_positive())
      continue;
    PositiveFeature f{id, parse_feature_id(id), value, {}};
    f.action = classify_feature(f.expr, catalog, findings);
    switch (kind_of(f.action)) {
      case ActionKind::constituent:
      case ActionKind::introducer:
      case ActionKind::restriction:
        e.features.arguments[*slot_of(f.action)].push_back(std::move(f));
        break;
      case ActionKind::construction:
      case ActionKind::redistribution:
        e.features.constructions.push_back(std::move(f));
        break;
      case ActionKind::lexeme_property:
      case ActionKind::mwe_trigger:
        e.features.lexeme_properties.push_back(std::move(f));
        break;
      case ActionKind::ignore:
        e.features.other.push_back(std::move(f));
        break;
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Intermediate dump
// ---------------------------------------------------------------------------

inline XmlNode lglex_feature_node(const PositiveFeature& f) {
  XmlNode n("feature");
  n.set("id", f.id);
  n.set("kind", to_string(kind_of(f.action)));
  n.set("value", f.value.kind == ResolvedValue::Kind::lexical ? f.value.text : "+");
  return n;
}

inline XmlNode lglex_entry_node(const LGLexEntry& e) {
  XmlNode n("entry");
  n.set("id", e.entry_id);
  n.set("status", to_string(e.status()));
  n.set("class", e.class_id);
  n.set("row", std::to_string(e.row));
  n.set("encoded", std::to_string(e.encoded_count));
  n.set("unencoded", std::to_string(e.unencoded_count));
  auto& lemma = n.add("lemma");
  lemma.set("writtenForm", e.lemma);
  if (e.translation)
    lemma.set("translation", *e.translation);
  if (e.example)
    lemma.set("example", *e.example);
  auto& args = n.add("arguments");
  for (const auto& [slot, fs] : e.features.arguments) {
    auto& a = args.add("argument");
    a.set("slot", std::to_string(slot));
    for (const auto& f : fs)
      a.add(lglex_feature_node(f));
  }
  auto branch = [&n](const char* name, const std::vector<PositiveFeature>& fs) {
    auto& b = n.add(name);
    for (const auto& f : fs)
      b.add(lglex_feature_node(f));
  };
  branch("constructions", e.features.constructions);
  branch("lexeme-properties", e.features.lexeme_properties);
  branch("other", e.features.other);
  return n;
}

inline std::string dump_lglex(const std::vector<LGLexEntry>& entries, Category category) {
  XmlNode root("LGLex");
  root.set("category", to_string(category));
  for (const auto& e : entries)
    root.add(lglex_entry_node(e));
  return write_xml(root);
}

} // namespace lg2lmf
