#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "frame.hpp"
#include "lmf.hpp"
#include "mnemonic.hpp"

namespace lg2lmf {

namespace detail {

inline void check_blocks(const LmfParse& p, Findings& f) {
  static const char* names[4] = {"LexicalEntry", "SubcategorizationFrameSet",
                                 "SubcategorizationFrame", "MWEPattern"};
  for (int b = 0; b < 4; ++b) {
    const auto& ids = p.raw_order[b];
    std::set<std::string> seen;
    for (const auto& id : ids)
      if (!seen.insert(id).second)
        f.error("DUPLICATE_ID", std::string(names[b]) + " id appears twice", id);
    for (std::size_t i = 1; i < ids.size(); ++i)
      if (ids[i] < ids[i - 1]) {
        f.error("UNSORTED_BLOCK", std::string(names[b]) + " elements are not sorted by id",
                ids[i]);
        break;
      }
  }
}

inline void check_frame(const Frame& fr, Findings& f) {
  const std::string id = fr.id();
  if (fr.mnemonic.redistributions.size() != 1)
    f.error("MNEMONIC_NONCANONICAL", "a frame id carries exactly one redistribution", id);
  const int n = static_cast<int>(fr.arguments.size());
  for (int i = 0; i < n; ++i)
    if (fr.arguments[static_cast<std::size_t>(i)].id != i) {
      f.error("ARG_ID_GAP", "argument ids are not 0.." + std::to_string(n - 1) + " in order", id);
      break;
    }
  if (fr.mnemonic.args.size() != fr.arguments.size())
    f.error("ARG_COUNT_MISMATCH",
            "id lists " + std::to_string(fr.mnemonic.args.size()) + " arguments, element has " +
                std::to_string(n),
            id);
  for (const auto& a : fr.arguments) {
    for (int c : a.control) {
      if (c < 0 || c >= n)
        f.error("CONTROL_OUT_OF_RANGE",
                "argument " + std::to_string(a.id) + " names controller " + std::to_string(c) +
                    " outside 0.." + std::to_string(n - 1),
                id);
      else if (c == a.id)
        f.error("CONTROL_SELF", "argument " + std::to_string(a.id) + " controls itself", id);
    }
    if (a.mood && std::find(a.constituents.begin(), a.constituents.end(),
                            Constituent::completive_clause) == a.constituents.end())
      f.error("MOOD_WITHOUT_COMPLETIVE",
              "argument " + std::to_string(a.id) + " has a mood but no completive clause", id);
  }
}

inline bool same_distribution(const Frame& a, const Frame& b) {
  if (a.arguments.size() != b.arguments.size())
    return false;
  for (std::size_t i = 0; i < a.arguments.size(); ++i) {
    const auto& x = a.arguments[i];
    const auto& y = b.arguments[i];
    if (x.constituents != y.constituents || x.restriction != y.restriction ||
        x.optional != y.optional || x.introducers != y.introducers)
      return false;
  }
  return true;
}

inline void check_set(const FrameSet& s, const std::map<std::string, const Frame*>& frames,
                      const std::set<std::string>& unparsed, Findings& f) {
  if (s.frame_ids.empty() || s.frame_ids.size() > kMaxSetSize)
    f.error("SET_SIZE",
            "set has " + std::to_string(s.frame_ids.size()) + " members; allowed 1..4", s.id);
  try {
    parse_mnemonic(s.id);
  } catch (const Error& e) {
    f.error("MNEMONIC_PARSE", e.what(), s.id);
  }
  std::vector<const Frame*> members;
  for (const auto& m : s.frame_ids) {
    auto it = frames.find(m);
    if (it != frames.end())
      members.push_back(it->second);
    else if (!unparsed.count(m))
      f.error("DANGLING_REF", "set '" + s.id + "' references absent frame '" + m + "'", s.id);
  }
  if (members.empty())
    return;
  const std::string stem = print_stem(members[0]->mnemonic);
  for (const auto* m : members)
    if (print_stem(m->mnemonic) != stem) {
      f.error("SET_HETEROGENEOUS", "members differ outside the redistribution section", s.id);
      return;
    }
  if (members.size() == s.frame_ids.size()) {
    std::vector<std::string> labels;
    for (const auto* m : members)
      for (const auto& r : m->mnemonic.redistributions)
        labels.push_back("%" + r);
    bool ordered = true;
    for (std::size_t i = 1; i < members.size(); ++i)
      if (redistribution_less(members[i]->mnemonic.redistributions.at(0),
                              members[i - 1]->mnemonic.redistributions.at(0)))
        ordered = false;
    if (!ordered || s.id != stem + ";" + join(labels, ","))
      f.error("MNEMONIC_NONCANONICAL",
              "set id or member order does not follow the canonical form", s.id);
  }
  for (std::size_t i = 1; i < members.size(); ++i)
    if (!same_distribution(*members[0], *members[i]))
      f.error("REDUNDANCY_MISMATCH",
              "members disagree on argument distribution '" + members[i]->id() + "'", s.id);
}

inline void check_pattern(const MwePatternDef& p, Findings& f) {
  int heads = 0;
  bool contiguous = true;
  for (std::size_t i = 0; i < p.components.size(); ++i) {
    heads += p.components[i].function == "head";
    contiguous = contiguous && p.components[i].rank == static_cast<int>(i) + 1;
  }
  if (!contiguous || heads != 1 || p.components.size() < 2)
    f.error("PATTERN_RANKS", "component ranks must be 1..k with exactly one head", p.id);
}

} // namespace detail

// Every document-level invariant; appends to the parse findings.
inline Findings check_document(const LmfParse& p) {
  Findings f = p.findings;
  const LmfDocument& doc = p.doc;
  detail::check_blocks(p, f);

  std::map<std::string, const Frame*> frames;
  for (const auto& fr : doc.frames) {
    frames.emplace(fr.id(), &fr);
    detail::check_frame(fr, f);
  }
  std::set<std::string> sets;
  for (const auto& s : doc.frame_sets) {
    sets.insert(s.id);
    detail::check_set(s, frames, p.unparsed_frame_ids, f);
  }
  std::map<std::string, const MwePatternDef*> patterns;
  for (const auto& pat : doc.patterns) {
    patterns.emplace(pat.id, &pat);
    detail::check_pattern(pat, f);
  }
  for (const auto& e : doc.entries) {
    if (e.frame_set_refs.empty())
      f.error("EMPTY_FRAME_SETS", "entry lists no frame set", e.id);
    for (const auto& r : e.frame_set_refs)
      if (!sets.count(r))
        f.error("DANGLING_REF", "entry '" + e.id + "' references absent set '" + r + "'", e.id);
    if (e.mwe) {
      auto it = patterns.find(e.mwe->pattern_id);
      if (it == patterns.end())
        f.error("DANGLING_REF",
                "entry '" + e.id + "' references absent pattern '" + e.mwe->pattern_id + "'",
                e.id);
      if (e.mwe->components.size() < 2 ||
          (it != patterns.end() && it->second->components.size() != e.mwe->components.size()))
        f.error("MWE_COMPONENTS", "component count does not match the pattern", e.id);
    }
  }
  return f;
}

inline const std::set<std::string>& compatibility_codes() {
  static const std::set<std::string> codes = {"COMPAT_ATTR"};
  return codes;
}

// Never throws on bad content: structural failures become a single finding.
inline Findings validate_lmf(std::string_view bytes, bool strict = false) {
  Findings f;
  try {
    f = check_document(parse_lmf(bytes));
  } catch (const Error& e) {
    f.error(e.code(), e.what());
  }
  if (strict)
    f.escalate(compatibility_codes());
  return f;
}

// Strict reader: the first error is thrown; warnings go to `warnings`.
inline LmfDocument read_lmf(std::string_view bytes, Findings* warnings = nullptr) {
  LmfParse p = parse_lmf(bytes);
  Findings f = check_document(p);
  for (const auto& item : f.items()) {
    if (item.severity == Severity::error)
      throw Error(item.code, item.message, item.location);
    if (warnings)
      warnings->add(item);
  }
  return std::move(p.doc);
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

struct StatsReport {
  std::size_t entries = 0;
  std::size_t distinct_lemmas = 0;
  std::size_t frames = 0;
  std::size_t frame_sets = 0;
  std::map<std::size_t, std::size_t> set_size_histogram;
  std::map<std::string, std::size_t> status_histogram;
  std::size_t mwe_entries = 0;
  std::size_t warnings = 0;

  bool operator==(const StatsReport&) const = default;
};

inline StatsReport compute_stats(const LmfDocument& doc, std::size_t warnings = 0) {
  StatsReport r;
  r.entries = doc.entries.size();
  r.frames = doc.frames.size();
  r.frame_sets = doc.frame_sets.size();
  r.warnings = warnings;
  for (std::size_t k = 1; k <= kMaxSetSize; ++k)
    r.set_size_histogram[k] = 0;
  for (auto s : {Status::completed, Status::to_be_completed, Status::to_be_encoded})
    r.status_histogram[to_string(s)] = 0;
  std::set<std::string> lemmas;
  for (const auto& e : doc.entries) {
    lemmas.insert(e.lemma);
    ++r.status_histogram[to_string(e.status)];
    if (e.mwe)
      ++r.mwe_entries;
  }
  r.distinct_lemmas = lemmas.size();
  for (const auto& s : doc.frame_sets)
    ++r.set_size_histogram[s.frame_ids.size()];
  return r;
}

inline std::string stats_text(const StatsReport& r) {
  std::string out;
  auto line = [&out](const std::string& k, std::size_t v) {
    out += k + ": " + std::to_string(v) + "\n";
  };
  line("entries", r.entries);
  line("distinct lemmas", r.distinct_lemmas);
  line("frames", r.frames);
  line("frame sets", r.frame_sets);
  for (const auto& [size, count] : r.set_size_histogram)
    line("  sets of " + std::to_string(size), count);
  for (const auto& [status, count] : r.status_histogram)
    line("  " + status, count);
  line("mwe entries", r.mwe_entries);
  line("warnings", r.warnings);
  return out;
}

} // namespace lg2lmf
