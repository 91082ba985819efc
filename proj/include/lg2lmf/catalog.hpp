#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"
#include "feature_id.hpp"
#include "mnemonic.hpp"
#include "table.hpp"
#include "text.hpp"

namespace lg2lmf {

enum class Restriction { human, non_human };
enum class Mood { indicative, subjunctive };
enum class Role { location, source, destination };
enum class PropertyName { voice, auxiliary, negation, non_argumental_clitic };

inline const char* to_string(Restriction r) {
  return r == Restriction::human ? "human" : "non-human";
}
inline const char* to_string(Mood m) {
  return m == Mood::indicative ? "indicative" : "subjunctive";
}
inline const char* to_string(Role r) {
  switch (r) {
    case Role::location: return "location";
    case Role::source: return "source";
    case Role::destination: return "destination";
  }
  return "";
}
inline const char* to_string(PropertyName p) {
  switch (p) {
    case PropertyName::voice: return "voice";
    case PropertyName::auxiliary: return "auxiliary";
    case PropertyName::negation: return "negation";
    case PropertyName::non_argumental_clitic: return "non-argumental-clitic";
  }
  return "";
}

inline std::optional<Restriction> parse_restriction(std::string_view s) {
  if (s == "human") return Restriction::human;
  if (s == "non-human") return Restriction::non_human;
  return std::nullopt;
}
inline std::optional<Mood> parse_mood(std::string_view s) {
  if (s == "indicative") return Mood::indicative;
  if (s == "subjunctive") return Mood::subjunctive;
  return std::nullopt;
}
inline std::optional<Role> parse_role(std::string_view s) {
  if (s == "location") return Role::location;
  if (s == "source") return Role::source;
  if (s == "destination") return Role::destination;
  return std::nullopt;
}

// The redistributions the function deduction knows about, in set-member order.
inline constexpr std::array<std::string_view, 4> kRedistributions = {
    "actif", "passif", "actif_impersonnel", "passif_impersonnel"};

inline bool is_known_redistribution(std::string_view label) {
  for (auto r : kRedistributions)
    if (r == label)
      return true;
  return false;
}

// ---------------------------------------------------------------------------
// Feature actions
// ---------------------------------------------------------------------------

struct ConstituentAction {
  ArgSlot slot;
  std::string token;  // realization token, e.g. "scompl", "à-sn", "cla"
  std::optional<Mood> mood;
  std::vector<int> controller_slots;
  bool operator==(const ConstituentAction&) const = default;
};

struct IntroducerAction {
  ArgSlot slot;
  std::vector<std::string> prepositions;  // empty: taken from a lexical cell
  std::optional<Role> role;               // set for locative introducers
  bool operator==(const IntroducerAction&) const = default;
};

struct RestrictionAction {
  ArgSlot slot;
  Restriction value = Restriction::human;
  bool operator==(const RestrictionAction&) const = default;
};

struct LexemePropertyAction {
  PropertyName name = PropertyName::auxiliary;
  std::string value;
  bool operator==(const LexemePropertyAction&) const = default;
};

struct RedistributionAction {
  std::string label;  // without '%'
  bool operator==(const RedistributionAction&) const = default;
};

struct ConstructionAction {
  std::string pattern_id;
  bool operator==(const ConstructionAction&) const = default;
};

struct MweTriggerAction {
  std::string pattern;
  std::vector<std::string> components;  // pseudo-entries preceding the verb, e.g. PRO_en
  bool operator==(const MweTriggerAction&) const = default;
};

struct IgnoreAction {
  bool operator==(const IgnoreAction&) const = default;
};

using FeatureAction =
    std::variant<ConstituentAction, IntroducerAction, RestrictionAction, LexemePropertyAction,
                 RedistributionAction, ConstructionAction, MweTriggerAction, IgnoreAction>;

enum class ActionKind {
  constituent,
  introducer,
  restriction,
  lexeme_property,
  redistribution,
  construction,
  mwe_trigger,
  ignore,
};

inline ActionKind kind_of(const FeatureAction& a) { return static_cast<ActionKind>(a.index()); }

inline const char* to_string(ActionKind k) {
  switch (k) {
    case ActionKind::constituent: return "constituent";
    case ActionKind::introducer: return "introducer";
    case ActionKind::restriction: return "restriction";
    case ActionKind::lexeme_property: return "lexeme-property";
    case ActionKind::redistribution: return "redistribution";
    case ActionKind::construction: return "construction";
    case ActionKind::mwe_trigger: return "mwe-trigger";
    case ActionKind::ignore: return "ignore";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Construction templates and MWE patterns
// ---------------------------------------------------------------------------

struct SlotRef {
  ArgSlot slot;
  std::string preposition;  // "dans-N1" introduces the nominal realization
  bool operator==(const SlotRef&) const = default;
};

// One argument of a construction template: "Suj:cln|N0", "Obl:(de-sinf)".
struct ArgSpec {
  std::string function;
  bool optional = false;
  std::vector<std::string> literals;
  std::optional<SlotRef> slot;
  bool operator==(const ArgSpec&) const = default;
};

struct ControlDef {
  std::string function;  // the controlled argument, by function label
  std::vector<int> controller_slots;
  bool operator==(const ControlDef&) const = default;
};

struct ConstructionDef {
  std::string id;
  std::vector<ArgSpec> args;
  std::vector<std::string> labels;  // extra @-labels, without '@'
  std::vector<ControlDef> controls;
  bool operator==(const ConstructionDef&) const = default;
};

struct MweComponentRole {
  int rank = 0;
  std::string function;     // "head" for the lexeme at the root node
  std::string constituent;  // empty for the head
  bool operator==(const MweComponentRole&) const = default;
};

struct MwePatternDef {
  std::string id;
  std::vector<MweComponentRole> components;  // ordered by rank
  bool operator==(const MwePatternDef&) const = default;
};

struct FeatureCatalog {
  Category category = Category::verb;
  std::string version;
  std::map<std::string, FeatureAction> features;  // normalized feature id -> action
  std::map<std::string, ConstructionDef> constructions;
  std::map<std::string, MwePatternDef> patterns;

  const FeatureAction* find(std::string_view feature_id) const {
    auto it = features.find(normalize_feature_id(feature_id));
    return it == features.end() ? nullptr : &it->second;
  }
};

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

namespace detail {

struct CatalogEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct CatalogBlock {
  std::string type;  // feature | construction | mwe-pattern
  std::string id;
  std::size_t line = 0;
  std::vector<CatalogEntry> entries;
};

class BlockReader {
public:
  explicit BlockReader(const CatalogBlock& b) : block_(b) {}

  std::string where(std::size_t line) const {
    return "line " + std::to_string(line) + " ([" + block_.type + "] " + block_.id + ")";
  }
  std::string where() const { return where(block_.line); }

  std::optional<std::string> get(std::string_view key) {
    std::optional<std::string> out;
    for (const auto& e : block_.entries) {
      if (e.key != key)
        continue;
      if (out)
        throw Error("CATALOG_SYNTAX", "key '" + e.key + "' given twice", where(e.line));
      out = e.value;
    }
    used_.emplace(key);
    return out;
  }
  std::string require(std::string_view key) {
    auto v = get(key);
    if (!v)
      throw Error("CATALOG_SYNTAX", "missing key '" + std::string(key) + "'", where());
    return *v;
  }
  std::vector<CatalogEntry> all(std::string_view key) {
    std::vector<CatalogEntry> out;
    for (const auto& e : block_.entries)
      if (e.key == key)
        out.push_back(e);
    used_.emplace(key);
    return out;
  }
  ArgSlot slot() {
    auto s = require("slot");
    auto v = parse_int(s);
    if (!v || *v < 0)
      throw Error("CATALOG_VALUE", "slot must be a non-negative integer, got '" + s + "'",
                  where());
    return ArgSlot{*v};
  }
  std::vector<int> slot_list(const std::string& text, std::size_t line) {
    std::vector<int> out;
    for (const auto& w : split_words(text)) {
      auto v = parse_int(w);
      if (!v || *v < 0)
        throw Error("CATALOG_VALUE", "bad slot '" + w + "'", where(line));
      out.push_back(*v);
    }
    return out;
  }
  // Every key present must have been consumed by the kind's reader.
  void finish() {
    for (const auto& e : block_.entries)
      if (!used_.count(e.key))
        throw Error("CATALOG_SYNTAX", "key '" + e.key + "' not allowed here", where(e.line));
  }

private:
  const CatalogBlock& block_;
  std::set<std::string, std::less<>> used_;
};

inline FeatureAction read_action(BlockReader& r) {
  const std::string kind = r.require("kind");
  FeatureAction action;
  if (kind == "constituent") {
    ConstituentAction a;
    a.slot = r.slot();
    a.token = r.require("value");
    auto real = parse_realization(a.token);
    if (!real || has_any(a.token, ":,;[]()|@%"))
      throw Error("CATALOG_VALUE", "unknown realization token '" + a.token + "'", r.where());
    if (auto m = r.get("mood")) {
      a.mood = parse_mood(*m);
      if (!a.mood)
        throw Error("CATALOG_VALUE", "mood must be indicative or subjunctive", r.where());
    }
    for (const auto& e : r.all("control")) {
      auto slots = r.slot_list(e.value, e.line);
      a.controller_slots.insert(a.controller_slots.end(), slots.begin(), slots.end());
    }
    if (!a.controller_slots.empty() && !is_clausal(constituent_of(*real)))
      throw Error("CATALOG_VALUE", "control given for non-clausal realization '" + a.token + "'",
                  r.where());
    action = a;
  } else if (kind == "introducer") {
    IntroducerAction a;
    a.slot = r.slot();
    if (auto p = r.get("prepositions"))
      a.prepositions = split_words(*p);
    if (auto loc = r.get("locative")) {
      if (*loc == "yes")
        a.role = Role::location;
      else if (*loc != "no" && !(a.role = parse_role(*loc)))
        throw Error("CATALOG_VALUE",
                    "locative must be yes, no, location, source or destination", r.where());
    }
    action = a;
  } else if (kind == "restriction") {
    RestrictionAction a;
    a.slot = r.slot();
    auto v = r.require("value");
    auto parsed = parse_restriction(v);
    if (!parsed)
      throw Error("CATALOG_VALUE", "restriction must be human or non-human, got '" + v + "'",
                  r.where());
    a.value = *parsed;
    action = a;
  } else if (kind == "lexeme-property") {
    LexemePropertyAction a;
    auto name = r.require("name");
    a.value = r.require("value");
    if (name == "voice") {
      a.name = PropertyName::voice;
      if (a.value != "active" && a.value != "passive")
        throw Error("CATALOG_VALUE", "voice must be active or passive", r.where());
    } else if (name == "auxiliary") {
      a.name = PropertyName::auxiliary;
      if (a.value != "avoir" && a.value != "être")
        throw Error("CATALOG_VALUE", "auxiliary must be avoir or être", r.where());
    } else if (name == "negation") {
      a.name = PropertyName::negation;
    } else if (name == "non-argumental-clitic") {
      a.name = PropertyName::non_argumental_clitic;
      if (a.value != "reflexive" && a.value != "impersonal")
        throw Error("CATALOG_VALUE", "non-argumental-clitic must be reflexive or impersonal",
                    r.where());
    } else {
      throw Error("CATALOG_VALUE", "unknown lexeme property '" + name + "'", r.where());
    }
    action = a;
  } else if (kind == "redistribution") {
    RedistributionAction a;
    auto label = r.require("label");
    a.label = starts_with(label, "%") ? label.substr(1) : label;
    if (!is_known_redistribution(a.label))
      throw Error("CATALOG_VALUE", "unknown redistribution '%" + a.label + "'", r.where());
    action = a;
  } else if (kind == "construction") {
    action = ConstructionAction{r.require("pattern-id")};
  } else if (kind == "mwe-trigger") {
    MweTriggerAction a;
    a.pattern = r.require("pattern");
    a.components = split_words(r.require("component"));
    if (a.components.empty())
      throw Error("CATALOG_VALUE", "mwe-trigger needs at least one component", r.where());
    action = a;
  } else if (kind == "ignore") {
    action = IgnoreAction{};
  } else {
    throw Error("CATALOG_KIND", "unknown kind '" + kind + "'", r.where());
  }
  r.finish();
  return action;
}

inline std::optional<SlotRef> slot_ref(std::string_view item) {
  std::string prep;
  auto dash = item.rfind('-');
  if (dash != std::string_view::npos) {
    prep = std::string(item.substr(0, dash));
    item = item.substr(dash + 1);
  }
  if (item.size() < 2 || item[0] != 'N' || has_any(prep, ":,;[]()|@%"))
    return std::nullopt;
  auto n = parse_int(item.substr(1));
  if (!n || *n < 0)
    return std::nullopt;
  return SlotRef{ArgSlot{*n}, prep};
}

inline ConstructionDef read_construction(BlockReader& r, const std::string& id) {
  ConstructionDef def;
  def.id = id;
  std::set<std::string> functions;
  for (const auto& raw : split(r.require("args"), ',')) {
    std::string item = collapse_spaces(raw);
    auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0)
      throw Error("CATALOG_VALUE", "argument '" + item + "' lacks a function label", r.where());
    ArgSpec spec;
    spec.function = item.substr(0, colon);
    if (!functions.insert(spec.function).second)
      throw Error("CATALOG_VALUE", "function label '" + spec.function + "' used twice",
                  r.where());
    std::string body = item.substr(colon + 1);
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
      spec.optional = true;
      body = body.substr(1, body.size() - 2);
    }
    for (const auto& tok : split(body, '|')) {
      if (auto ref = slot_ref(tok)) {
        if (spec.slot)
          throw Error("CATALOG_VALUE", "argument '" + item + "' references two slots",
                      r.where());
        spec.slot = ref;
      } else if (parse_realization(tok) && !has_any(tok, ":,;[]()|@%")) {
        spec.literals.push_back(tok);
      } else {
        throw Error("CATALOG_VALUE", "unknown realization '" + tok + "' in '" + item + "'",
                    r.where());
      }
    }
    def.args.push_back(std::move(spec));
  }
  if (auto labels = r.get("labels")) {
    for (auto& l : split_words(*labels)) {
      if (!starts_with(l, "@") || l.size() < 2)
        throw Error("CATALOG_VALUE", "label '" + l + "' must start with '@'", r.where());
      def.labels.push_back(l.substr(1));
    }
  }
  for (const auto& e : r.all("control")) {
    auto colon = e.value.find(':');
    if (colon == std::string::npos)
      throw Error("CATALOG_VALUE", "control must read 'Function: slots'", r.where(e.line));
    ControlDef c;
    c.function = std::string(trim(std::string_view(e.value).substr(0, colon)));
    c.controller_slots = r.slot_list(e.value.substr(colon + 1), e.line);
    if (!functions.count(c.function))
      throw Error("CATALOG_VALUE", "control names unknown argument '" + c.function + "'",
                  r.where(e.line));
    if (c.controller_slots.empty())
      throw Error("CATALOG_VALUE", "control lists no controller", r.where(e.line));
    def.controls.push_back(std::move(c));
  }
  r.finish();
  return def;
}

inline MwePatternDef read_pattern(BlockReader& r, const std::string& id) {
  MwePatternDef def;
  def.id = id;
  int heads = 0;
  for (const auto& e : r.all("component")) {
    auto words = split_words(e.value);
    auto rank = words.empty() ? std::nullopt : parse_int(words[0]);
    if (!rank || words.size() < 2 || words.size() > 3)
      throw Error("CATALOG_VALUE", "component must read '<rank> <function> [constituent]'",
                  r.where(e.line));
    MweComponentRole role{*rank, words[1], words.size() == 3 ? words[2] : std::string{}};
    if (role.function == "head")
      ++heads;
    else if (role.constituent.empty())
      throw Error("CATALOG_VALUE", "non-head component needs a constituent", r.where(e.line));
    def.components.push_back(std::move(role));
  }
  std::sort(def.components.begin(), def.components.end(),
            [](const auto& a, const auto& b) { return a.rank < b.rank; });
  for (std::size_t i = 0; i < def.components.size(); ++i)
    if (def.components[i].rank != static_cast<int>(i) + 1)
      throw Error("CATALOG_VALUE", "component ranks must be 1..k without gaps", r.where());
  if (def.components.size() < 2 || heads != 1)
    throw Error("CATALOG_VALUE", "a pattern needs two or more components, exactly one head",
                r.where());
  r.finish();
  return def;
}

} // namespace detail

// Line-oriented block format:
//
//   category = verb
//   version = fixture-1
//
//   [feature] N0 =: Nhum
//   kind = restriction
//   slot = 0
//   value = human
//
//   [construction] tr
//   args = Suj:cln|N0, Obj:N1
//
//   [mwe-pattern] en-V_y-V
//   component = 1 adjunct clitic-pronoun
//   component = 2 head
//
// '#' starts a comment line.
inline FeatureCatalog load_catalog(std::string_view bytes) {
  FeatureCatalog catalog;
  std::vector<detail::CatalogBlock> blocks;
  std::vector<detail::CatalogEntry> globals;

  std::size_t line_no = 0;
  for (const auto& raw_line : split(bytes, '\n')) {
    ++line_no;
    std::string_view line = trim(raw_line);
    if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF")
      line = trim(line.substr(3));
    if (line.empty() || line.front() == '#')
      continue;
    if (line.front() == '[') {
      auto close = line.find(']');
      if (close == std::string_view::npos)
        throw Error("CATALOG_SYNTAX", "unterminated block header",
                    "line " + std::to_string(line_no));
      detail::CatalogBlock b;
      b.type = std::string(trim(line.substr(1, close - 1)));
      b.id = collapse_spaces(line.substr(close + 1));
      b.line = line_no;
      if (b.type != "feature" && b.type != "construction" && b.type != "mwe-pattern")
        throw Error("CATALOG_SYNTAX", "unknown block type '" + b.type + "'",
                    "line " + std::to_string(line_no));
      if (b.id.empty())
        throw Error("CATALOG_SYNTAX", "block without identifier", "line " + std::to_string(line_no));
      blocks.push_back(std::move(b));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error("CATALOG_SYNTAX", "expected 'key = value'", "line " + std::to_string(line_no));
    detail::CatalogEntry e{std::string(trim(line.substr(0, eq))),
                           std::string(trim(line.substr(eq + 1))), line_no};
    if (blocks.empty())
      globals.push_back(std::move(e));
    else
      blocks.back().entries.push_back(std::move(e));
  }

  for (const auto& g : globals) {
    if (g.key == "category")
      catalog.category = parse_category(g.value);
    else if (g.key == "version")
      catalog.version = g.value;
    else
      throw Error("CATALOG_SYNTAX", "unknown global key '" + g.key + "'",
                  "line " + std::to_string(g.line));
  }

  for (const auto& b : blocks) {
    detail::BlockReader reader(b);
    if (b.type == "feature") {
      std::string id = normalize_feature_id(b.id);
      if (catalog.features.count(id))
        throw Error("CATALOG_DUPLICATE", "feature '" + b.id + "' declared twice", reader.where());
      catalog.features.emplace(id, detail::read_action(reader));
    } else if (b.type == "construction") {
      if (catalog.constructions.count(b.id))
        throw Error("CATALOG_DUPLICATE", "construction '" + b.id + "' declared twice",
                    reader.where());
      catalog.constructions.emplace(b.id, detail::read_construction(reader, b.id));
    } else {
      if (catalog.patterns.count(b.id))
        throw Error("CATALOG_DUPLICATE", "pattern '" + b.id + "' declared twice", reader.where());
      catalog.patterns.emplace(b.id, detail::read_pattern(reader, b.id));
    }
  }

  // Cross-block checks.
  std::map<std::pair<int, std::string>, std::pair<std::string, std::vector<int>>> controls;
  for (const auto& [id, action] : catalog.features) {
    if (auto* c = std::get_if<ConstructionAction>(&action)) {
      if (!catalog.constructions.count(c->pattern_id))
        throw Error("CATALOG_REFERENCE",
                    "feature '" + id + "' uses undeclared construction '" + c->pattern_id + "'");
    }
    if (auto* c = std::get_if<ConstituentAction>(&action)) {
      auto key = std::make_pair(c->slot.index, c->token);
      auto [it, fresh] = controls.emplace(key, std::make_pair(id, c->controller_slots));
      if (!fresh && it->second.second != c->controller_slots)
        throw Error("CATALOG_AMBIGUOUS", "features '" + it->second.first + "' and '" + id +
                                             "' give slot " + std::to_string(c->slot.index) +
                                             " the realization '" + c->token +
                                             "' with different controllers");
    }
  }
  return catalog;
}

// Unknown features degrade to `ignore`, with a warning.
inline FeatureAction classify_feature(const FeatureExpr& expr, const FeatureCatalog& catalog,
                                      Findings* findings = nullptr) {
  if (const FeatureAction* a = catalog.find(expr.raw))
    return *a;
  if (findings)
    findings->warn("UNKNOWN_FEATURE",
                   "feature '" + normalize_feature_id(expr.raw) + "' is not in the catalog; ignored");
  return IgnoreAction{};
}

} // namespace lg2lmf
