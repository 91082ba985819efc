#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "entry.hpp"
#include "error.hpp"
#include "frame.hpp"
#include "xml.hpp"

namespace lg2lmf {

inline constexpr std::string_view kToolName = "lg2lmf";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct LexicalEntryOut {
  std::string id;
  Status status = Status::completed;
  std::string part_of_speech = "verb";
  std::string lemma;
  std::optional<std::string> translation;
  std::optional<std::string> example;
  std::vector<std::string> frame_set_refs;
  std::optional<MweUse> mwe;

  bool operator==(const LexicalEntryOut&) const = default;
};

struct SourceInfo {
  std::string file;
  std::string crc32;

  bool operator==(const SourceInfo&) const = default;
};

struct LmfMetadata {
  std::string language = "fra";
  std::string category = "verb";
  std::string tool = std::string(kToolName) + " " + std::string(kToolVersion);
  std::vector<SourceInfo> sources;

  bool operator==(const LmfMetadata&) const = default;
};

struct LmfDocument {
  LmfMetadata meta;
  std::vector<LexicalEntryOut> entries;
  std::vector<FrameSet> frame_sets;
  std::vector<Frame> frames;
  std::vector<MwePatternDef> patterns;

  const LexicalEntryOut* find_entry(std::string_view id) const {
    for (const auto& e : entries)
      if (e.id == id)
        return &e;
    return nullptr;
  }

  bool operator==(const LmfDocument&) const = default;
};

// Sorts every block by id (byte order).
inline void sort_blocks(LmfDocument& doc) {
  std::sort(doc.entries.begin(), doc.entries.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(doc.frame_sets.begin(), doc.frame_sets.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(doc.frames.begin(), doc.frames.end(),
            [](const auto& a, const auto& b) { return a.id() < b.id(); });
  std::sort(doc.patterns.begin(), doc.patterns.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

inline XmlNode entry_node(const LexicalEntryOut& e) {
  XmlNode n("LexicalEntry");
  n.set("id", e.id);
  n.set("status", to_string(e.status));
  if (e.mwe)
    n.set("mwePattern", e.mwe->pattern_id);
  n.add(feat("partOfSpeech", e.part_of_speech));
  auto& lemma = n.add("Lemma");
  lemma.add(feat("writtenForm", e.lemma));
  if (e.translation)
    lemma.add(feat("translation", *e.translation));
  if (e.example)
    lemma.add(feat("example", *e.example));
  if (e.mwe) {
    auto& list = n.add("ListOfComponents");
    for (const auto& c : e.mwe->components)
      list.add("Component").set("entry", c);
  }
  n.add("SyntacticBehaviour").set("subcategorizationFrameSets", join(e.frame_set_refs, " "));
  return n;
}

inline XmlNode frame_set_node(const FrameSet& s) {
  XmlNode n("SubcategorizationFrameSet");
  n.set("id", s.id);
  n.set("subcategorizationFrames", join(s.frame_ids, " "));
  return n;
}

inline XmlNode argument_node(const Argument& a) {
  XmlNode n("SyntacticArgument");
  n.add(feat("id", std::to_string(a.id)));
  n.add(feat("syntacticFunction", to_string(a.function)));
  std::vector<std::string> cs;
  for (auto c : a.constituents)
    cs.push_back(to_string(c));
  n.add(feat("syntacticConstituent", join(cs, " ")));
  if (!a.introducers.empty())
    n.add(feat("introducer", join(a.introducers, " ")));
  if (a.optional)
    n.add(feat("optionality", "optional"));
  if (a.mood)
    n.add(feat("mood", to_string(*a.mood)));
  if (!a.restriction.empty()) {
    std::vector<std::string> rs;
    for (auto r : a.restriction)
      rs.push_back(to_string(r));
    n.add(feat("restriction", join(rs, " ")));
  }
  if (!a.control.empty()) {
    std::vector<std::string> ids;
    for (int c : a.control)
      ids.push_back(std::to_string(c));
    n.add(feat("control", join(ids, " ")));
  }
  if (a.role)
    n.add(feat("role", to_string(*a.role)));
  return n;
}

inline XmlNode frame_node(const Frame& f) {
  XmlNode n("SubcategorizationFrame");
  n.set("id", f.id());
  auto& props = n.add("LexemeProperty");
  props.add(feat("voice", f.props.voice));
  props.add(feat("auxiliary", f.props.auxiliary));
  if (f.props.negation)
    props.add(feat("negation", "yes"));
  if (f.props.non_argumental_clitic)
    props.add(feat("non-argumental-clitic", *f.props.non_argumental_clitic));
  for (const auto& a : f.arguments)
    n.add(argument_node(a));
  return n;
}

inline XmlNode pattern_node(const MwePatternDef& p) {
  XmlNode n("MWEPattern");
  n.set("id", p.id);
  auto& root = n.add("MWENode");
  std::optional<int> head;
  for (const auto& c : p.components) {
    if (c.function == "head") {
      head = c.rank;
      continue;
    }
    auto& edge = root.add("MWEEdge");
    edge.add(feat("function", c.function));
    auto& node = edge.add("MWENode");
    node.add(feat("syntacticConstituent", c.constituent));
    node.add("MWELex").add(feat("componentRank", std::to_string(c.rank)));
  }
  if (head)
    root.add("MWELex").add(feat("componentRank", std::to_string(*head)));
  return n;
}

inline XmlNode document_node(const LmfDocument& doc) {
  XmlNode root("LexicalResource");
  auto& info = root.add("GlobalInformation");
  info.add(feat("language", doc.meta.language));
  info.add(feat("category", doc.meta.category));
  info.add(feat("tool", doc.meta.tool));
  for (const auto& s : doc.meta.sources)
    info.add("Source").set("file", s.file).set("crc32", s.crc32);
  auto& lexicon = root.add("Lexicon");
  for (const auto& e : doc.entries)
    lexicon.add(entry_node(e));
  for (const auto& s : doc.frame_sets)
    lexicon.add(frame_set_node(s));
  for (const auto& f : doc.frames)
    lexicon.add(frame_node(f));
  for (const auto& p : doc.patterns)
    lexicon.add(pattern_node(p));
  return root;
}

// Blocks are written in id order whatever the order in `doc`.
inline std::string emit_lmf(LmfDocument doc) {
  sort_blocks(doc);
  return write_xml(document_node(doc));
}

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

struct LmfParse {
  LmfDocument doc;
  Findings findings;
  std::set<std::string> unparsed_frame_ids;  // frames kept out of `doc`
  std::vector<std::string> raw_order[4];     // ids as they appeared, per block
};

namespace detail {

class LmfReader {
public:
  LmfParse out;

  void structural(const std::string& what, const std::string& where) {
    throw Error("XML_STRUCTURE", what, where);
  }

  // att/val pairs of the <feat> children; `attr` accepted with a warning.
  std::vector<std::pair<std::string, std::string>> feats(const XmlNode& n,
                                                         const std::string& where) {
    std::vector<std::pair<std::string, std::string>> fs;
    for (const auto& c : n.children) {
      if (c.name != "feat")
        continue;
      const std::string* att = c.attribute("att");
      if (!att) {
        att = c.attribute("attr");
        if (att)
          compat(where);
      }
      const std::string* val = c.attribute("val");
      if (!att || !val)
        structural("<feat> needs att and val", where);
      fs.emplace_back(*att, collapse_spaces(*val));
    }
    return fs;
  }

  void compat(const std::string& where) {
    if (compat_reported_.insert(where).second)
      out.findings.warn("COMPAT_ATTR", "'attr' used instead of 'att'", where);
  }

  static const std::string* lookup(const std::vector<std::pair<std::string, std::string>>& fs,
                                   std::string_view key) {
    for (const auto& [k, v] : fs)
      if (k == key)
        return &v;
    return nullptr;
  }

  std::string required(const std::vector<std::pair<std::string, std::string>>& fs,
                       std::string_view key, const std::string& where) {
    if (const auto* v = lookup(fs, key))
      return *v;
    out.findings.error("MISSING_FEAT", "missing feat '" + std::string(key) + "'", where);
    return {};
  }

  void only_children(const XmlNode& n, std::initializer_list<std::string_view> allowed,
                     const std::string& where) {
    for (const auto& c : n.children)
      if (std::find(allowed.begin(), allowed.end(), c.name) == allowed.end())
        structural("unknown element <" + c.name + "> inside <" + n.name + ">", where);
  }

  std::string attr(const XmlNode& n, std::string_view key, const std::string& where) {
    if (const auto* v = n.attribute(key))
      return collapse_spaces(*v);
    structural("<" + n.name + "> lacks attribute '" + std::string(key) + "'", where);
    return {};
  }

  void read_info(const XmlNode& n) {
    only_children(n, {"feat", "Source"}, "GlobalInformation");
    auto fs = feats(n, "GlobalInformation");
    if (auto* v = lookup(fs, "language")) out.doc.meta.language = *v;
    if (auto* v = lookup(fs, "category")) out.doc.meta.category = *v;
    if (auto* v = lookup(fs, "tool")) out.doc.meta.tool = *v;
    for (const auto& c : n.children)
      if (c.name == "Source")
        out.doc.meta.sources.push_back(
            {attr(c, "file", "GlobalInformation"), attr(c, "crc32", "GlobalInformation")});
  }

  void read_entry(const XmlNode& n) {
    LexicalEntryOut e;
    e.id = attr(n, "id", "LexicalEntry");
    const std::string where = "LexicalEntry " + e.id;
    only_children(n, {"feat", "Lemma", "ListOfComponents", "SyntacticBehaviour"}, where);
    std::string status = attr(n, "status", where);
    if (auto s = parse_status(status))
      e.status = *s;
    else
      out.findings.error("ILLEGAL_STATUS", "status '" + status + "' is not legal", where);
    auto fs = feats(n, where);
    e.part_of_speech = required(fs, "partOfSpeech", where);
    std::optional<std::string> pattern;
    if (const auto* p = n.attribute("mwePattern"))
      pattern = *p;
    std::vector<std::string> components;
    bool behaviour = false;
    bool has_lemma = false;
    for (const auto& c : n.children) {
      if (c.name == "Lemma") {
        has_lemma = true;
        only_children(c, {"feat"}, where);
        auto lf = feats(c, where);
        e.lemma = required(lf, "writtenForm", where);
        if (auto* v = lookup(lf, "translation")) e.translation = *v;
        if (auto* v = lookup(lf, "example")) e.example = *v;
      } else if (c.name == "ListOfComponents") {
        only_children(c, {"Component"}, where);
        for (const auto& comp : c.children)
          components.push_back(attr(comp, "entry", where));
      } else if (c.name == "SyntacticBehaviour") {
        behaviour = true;
        e.frame_set_refs = split_words(attr(c, "subcategorizationFrameSets", where));
      }
    }
    if (!has_lemma)
      out.findings.error("MISSING_FEAT", "entry has no Lemma", where);
    if (!behaviour)
      out.findings.error("MISSING_FEAT", "entry has no SyntacticBehaviour", where);
    if (pattern)
      e.mwe = MweUse{*pattern, components};
    else if (!components.empty())
      out.findings.error("MWE_COMPONENTS", "components listed without mwePattern", where);
    out.raw_order[0].push_back(e.id);
    out.doc.entries.push_back(std::move(e));
  }

  void read_set(const XmlNode& n) {
    FrameSet s;
    s.id = attr(n, "id", "SubcategorizationFrameSet");
    only_children(n, {}, "SubcategorizationFrameSet " + s.id);
    s.frame_ids = split_words(attr(n, "subcategorizationFrames", "SubcategorizationFrameSet " + s.id));
    out.raw_order[1].push_back(s.id);
    out.doc.frame_sets.push_back(std::move(s));
  }

  template <typename T, typename Parse>
  std::optional<T> value(const std::string& text, Parse parse, const std::string& what,
                         const std::string& where) {
    auto v = parse(text);
    if (!v)
      out.findings.error("BAD_VALUE", what + " '" + text + "' is not legal", where);
    return v;
  }

  Argument read_argument(const XmlNode& n, const std::string& where) {
    only_children(n, {"feat"}, where);
    auto fs = feats(n, where);
    Argument a;
    if (auto id = value<int>(required(fs, "id", where), parse_int, "argument id", where))
      a.id = *id;
    if (auto f = value<SyntacticFunction>(required(fs, "syntacticFunction", where),
                                          parse_function, "syntacticFunction", where))
      a.function = *f;
    for (const auto& c : split_words(required(fs, "syntacticConstituent", where)))
      if (auto k = value<Constituent>(c, parse_constituent, "constituent", where))
        a.constituents.push_back(*k);
    if (auto* v = lookup(fs, "introducer"))
      a.introducers = split_words(*v);
    if (auto* v = lookup(fs, "optionality")) {
      if (*v == "optional")
        a.optional = true;
      else
        out.findings.error("BAD_VALUE", "optionality '" + *v + "' is not legal", where);
    }
    if (auto* v = lookup(fs, "mood"))
      a.mood = value<Mood>(*v, parse_mood, "mood", where);
    if (auto* v = lookup(fs, "restriction"))
      for (const auto& r : split_words(*v))
        if (auto k = value<Restriction>(r, parse_restriction, "restriction", where))
          a.restriction.push_back(*k);
    if (auto* v = lookup(fs, "control"))
      for (const auto& c : split_words(*v))
        if (auto k = value<int>(c, parse_int, "control", where))
          a.control.push_back(*k);
    if (auto* v = lookup(fs, "role"))
      a.role = value<Role>(*v, parse_role, "role", where);
    return a;
  }

  void read_frame(const XmlNode& n) {
    std::string id = attr(n, "id", "SubcategorizationFrame");
    const std::string where = "SubcategorizationFrame " + id;
    only_children(n, {"LexemeProperty", "SyntacticArgument"}, where);
    out.raw_order[2].push_back(id);
    Frame f;
    try {
      f.mnemonic = parse_mnemonic(id);
    } catch (const Error& e) {
      out.findings.error("MNEMONIC_PARSE", e.what(), where);
      out.unparsed_frame_ids.insert(id);
      return;
    }
    for (const auto& c : n.children) {
      if (c.name == "LexemeProperty") {
        only_children(c, {"feat"}, where);
        auto fs = feats(c, where);
        f.props.voice = required(fs, "voice", where);
        f.props.auxiliary = required(fs, "auxiliary", where);
        if (f.props.voice != "active" && f.props.voice != "passive")
          out.findings.error("BAD_VALUE", "voice '" + f.props.voice + "' is not legal", where);
        if (f.props.auxiliary != "avoir" && f.props.auxiliary != "être")
          out.findings.error("BAD_VALUE", "auxiliary '" + f.props.auxiliary + "' is not legal",
                             where);
        if (auto* v = lookup(fs, "negation"))
          f.props.negation = *v == "yes";
        if (auto* v = lookup(fs, "non-argumental-clitic"))
          f.props.non_argumental_clitic = *v;
      } else {
        f.arguments.push_back(read_argument(c, where));
      }
    }
    out.doc.frames.push_back(std::move(f));
  }

  void read_pattern(const XmlNode& n) {
    MwePatternDef p;
    p.id = attr(n, "id", "MWEPattern");
    const std::string where = "MWEPattern " + p.id;
    only_children(n, {"MWENode"}, where);
    if (n.children.size() != 1)
      structural("a pattern has exactly one root MWENode", where);
    const XmlNode& root = n.children[0];
    only_children(root, {"MWEEdge", "MWELex", "feat"}, where);
    auto rank_of = [&](const XmlNode& lex) -> int {
      only_children(lex, {"feat"}, where);
      auto fs = feats(lex, where);
      auto r = value<int>(required(fs, "componentRank", where), parse_int, "componentRank",
                          where);
      return r.value_or(0);
    };
    for (const auto& c : root.children) {
      if (c.name == "MWELex") {
        p.components.push_back({rank_of(c), "head", {}});
      } else if (c.name == "MWEEdge") {
        only_children(c, {"feat", "MWENode"}, where);
        MweComponentRole role;
        role.function = required(feats(c, where), "function", where);
        for (const auto& node : c.children) {
          if (node.name != "MWENode")
            continue;
          only_children(node, {"feat", "MWELex"}, where);
          role.constituent = required(feats(node, where), "syntacticConstituent", where);
          for (const auto& lex : node.children)
            if (lex.name == "MWELex")
              role.rank = rank_of(lex);
        }
        p.components.push_back(std::move(role));
      }
    }
    std::stable_sort(p.components.begin(), p.components.end(),
                     [](const auto& a, const auto& b) { return a.rank < b.rank; });
    out.raw_order[3].push_back(p.id);
    out.doc.patterns.push_back(std::move(p));
  }

private:
  std::set<std::string> compat_reported_;
};

} // namespace detail

// Lenient: structural problems throw, semantic ones become findings.
inline LmfParse parse_lmf(std::string_view bytes) {
  auto roots = parse_xml(bytes);
  if (roots.size() != 1 || roots[0].name != "LexicalResource")
    throw Error("XML_STRUCTURE", "document root must be a single <LexicalResource>");
  detail::LmfReader r;
  const XmlNode& root = roots[0];
  r.only_children(root, {"GlobalInformation", "Lexicon"}, "LexicalResource");
  if (root.children.size() != 2 || root.children[0].name != "GlobalInformation" ||
      root.children[1].name != "Lexicon")
    throw Error("XML_STRUCTURE", "<LexicalResource> must hold <GlobalInformation> then <Lexicon>");
  for (const auto& c : root.children) {
    if (c.name == "GlobalInformation") {
      r.read_info(c);
      continue;
    }
    r.only_children(c, {"LexicalEntry", "SubcategorizationFrameSet", "SubcategorizationFrame",
                        "MWEPattern"},
                    "Lexicon");
    for (const auto& n : c.children) {
      if (n.name == "LexicalEntry") r.read_entry(n);
      else if (n.name == "SubcategorizationFrameSet") r.read_set(n);
      else if (n.name == "SubcategorizationFrame") r.read_frame(n);
      else r.read_pattern(n);
    }
  }
  return std::move(r.out);
}

} // namespace lg2lmf
