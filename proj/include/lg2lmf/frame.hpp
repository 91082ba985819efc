#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "catalog.hpp"
#include "entry.hpp"
#include "error.hpp"
#include "mnemonic.hpp"

namespace lg2lmf {

enum class SyntacticFunction { subject, object, agent, inverted_subject };

inline const char* to_string(SyntacticFunction f) {
  switch (f) {
    case SyntacticFunction::subject: return "subject";
    case SyntacticFunction::object: return "object";
    case SyntacticFunction::agent: return "agent";
    case SyntacticFunction::inverted_subject: return "inverted-subject";
  }
  return "";
}

inline std::optional<SyntacticFunction> parse_function(std::string_view s) {
  if (s == "subject") return SyntacticFunction::subject;
  if (s == "object") return SyntacticFunction::object;
  if (s == "agent") return SyntacticFunction::agent;
  if (s == "inverted-subject") return SyntacticFunction::inverted_subject;
  return std::nullopt;
}

struct Argument {
  int id = 0;
  SyntacticFunction function = SyntacticFunction::subject;
  std::vector<Constituent> constituents;
  std::vector<std::string> introducers;
  std::vector<Restriction> restriction;  // human before non-human
  bool optional = false;
  std::optional<Mood> mood;
  std::vector<int> control;
  std::optional<Role> role;

  bool operator==(const Argument&) const = default;
};

struct LexemeProps {
  std::string voice = "active";
  std::string auxiliary = "avoir";
  bool negation = false;
  std::optional<std::string> non_argumental_clitic;

  bool operator==(const LexemeProps&) const = default;
};

struct Frame {
  MnemonicId mnemonic;
  LexemeProps props;
  std::vector<Argument> arguments;

  std::string id() const { return print_mnemonic(mnemonic); }
  bool operator==(const Frame&) const = default;
};

// %actif, %passif, %actif_impersonnel, then the rest lexicographically.
inline std::pair<int, std::string> redistribution_order(const std::string& label) {
  for (std::size_t i = 0; i < 3; ++i)
    if (kRedistributions[i] == label)
      return {static_cast<int>(i), label};
  return {3, label};
}

inline bool redistribution_less(const std::string& a, const std::string& b) {
  return redistribution_order(a) < redistribution_order(b);
}

inline SyntacticFunction deduce_function(int position, std::string_view redistribution) {
  if (position < 0)
    throw Error("BAD_VALUE", "negative argument position");
  if (redistribution == "actif")
    return position == 0 ? SyntacticFunction::subject : SyntacticFunction::object;
  if (redistribution == "passif")
    return position == 0   ? SyntacticFunction::agent
           : position == 1 ? SyntacticFunction::subject
                           : SyntacticFunction::object;
  if (redistribution == "actif_impersonnel")
    return position == 0 ? SyntacticFunction::inverted_subject : SyntacticFunction::object;
  if (redistribution == "passif_impersonnel")
    return position == 0   ? SyntacticFunction::agent
           : position == 1 ? SyntacticFunction::inverted_subject
                           : SyntacticFunction::object;
  throw Error("UNKNOWN_REDISTRIBUTION",
              "no function mapping for redistribution '%" + std::string(redistribution) + "'");
}

// Adds controllers to argument `target`, keeping the list sorted and unique.
inline Frame& assign_control(Frame& frame, int target, const std::vector<int>& controllers) {
  const int n = static_cast<int>(frame.arguments.size());
  if (target < 0 || target >= n)
    throw Error("CONTROL_OUT_OF_RANGE", "controlled argument " + std::to_string(target) +
                                            " does not exist", frame.id());
  auto& list = frame.arguments[static_cast<std::size_t>(target)].control;
  for (int c : controllers) {
    if (c < 0 || c >= n)
      throw Error("CONTROL_OUT_OF_RANGE",
                  "controller " + std::to_string(c) + " outside 0.." + std::to_string(n - 1),
                  frame.id());
    if (c == target)
      throw Error("CONTROL_SELF", "argument " + std::to_string(c) + " controls itself",
                  frame.id());
    list.push_back(c);
  }
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
  return frame;
}

namespace detail {

// Everything the entry says about one argument slot.
struct SlotFacts {
  std::set<Restriction> restrictions;
  std::vector<std::string> tokens;
  std::optional<Mood> mood;
  std::map<std::string, std::vector<int>> controllers;  // token -> controller slots
  std::vector<std::string> prepositions;
  std::optional<Role> role;
  bool any = false;
};

struct EntryFacts {
  std::map<int, SlotFacts> slots;
  bool reflexive = false;
  bool impersonal = false;
  bool negation = false;
  bool voice_passive = false;
  std::string auxiliary = "avoir";
  std::vector<std::string> redistributions;
  std::vector<std::string> constructions;
};

inline void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end())
    v.push_back(s);
}

inline EntryFacts gather(const LGLexEntry& entry) {
  EntryFacts facts;
  facts.redistributions.push_back("actif");
  for (const auto& [slot, features] : entry.features.arguments) {
    auto& s = facts.slots[slot];
    for (const auto& f : features) {
      s.any = true;
      if (auto* c = std::get_if<ConstituentAction>(&f.action)) {
        add_unique(s.tokens, c->token);
        if (c->mood)
          s.mood = c->mood;
        if (!c->controller_slots.empty()) {
          auto& list = s.controllers[c->token];
          list.insert(list.end(), c->controller_slots.begin(), c->controller_slots.end());
        }
      } else if (auto* r = std::get_if<RestrictionAction>(&f.action)) {
        s.restrictions.insert(r->value);
      } else if (auto* i = std::get_if<IntroducerAction>(&f.action)) {
        std::vector<std::string> preps = i->prepositions;
        if (preps.empty() && f.value.kind == ResolvedValue::Kind::lexical)
          for (const auto& p : split(f.value.text, '+'))
            if (auto t = collapse_spaces(p); !t.empty())
              preps.push_back(t);
        for (const auto& p : preps)
          add_unique(s.prepositions, p);
        if (i->role)
          s.role = i->role;
      }
    }
  }
  for (const auto& f : entry.features.constructions) {
    if (auto* c = std::get_if<ConstructionAction>(&f.action))
      add_unique(facts.constructions, c->pattern_id);
    else if (auto* r = std::get_if<RedistributionAction>(&f.action))
      add_unique(facts.redistributions, r->label);
  }
  std::sort(facts.redistributions.begin(), facts.redistributions.end(), redistribution_less);
  for (const auto& f : entry.features.lexeme_properties) {
    auto* p = std::get_if<LexemePropertyAction>(&f.action);
    if (!p)
      continue;
    switch (p->name) {
      case PropertyName::voice: facts.voice_passive = p->value == "passive"; break;
      case PropertyName::auxiliary: facts.auxiliary = p->value; break;
      case PropertyName::negation: facts.negation = true; break;
      case PropertyName::non_argumental_clitic:
        (p->value == "impersonal" ? facts.impersonal : facts.reflexive) = true;
        break;
    }
  }
  return facts;
}

inline std::string label_safe(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (is_space(c) || c == ',' || c == ';' || c == '[' || c == ']') ? '_' : c;
  return out;
}

inline bool is_impersonal_redistribution(std::string_view r) {
  return r.size() > 12 && r.substr(r.size() - 12) == "_impersonnel";
}

} // namespace detail

// One frame per (construction feature x redistribution) the entry licenses.
inline std::vector<Frame> compile_frames(const LGLexEntry& entry, const FeatureCatalog& catalog,
                                         Findings* findings = nullptr) {
  using detail::SlotFacts;
  const auto facts = detail::gather(entry);
  std::vector<Frame> frames;
  const SlotFacts empty_slot;

  for (const auto& pattern_id : facts.constructions) {
    auto def_it = catalog.constructions.find(pattern_id);
    if (def_it == catalog.constructions.end())
      throw Error("CATALOG_REFERENCE", "construction '" + pattern_id + "' is not declared",
                  entry.entry_id);
    const ConstructionDef& def = def_it->second;

    // Shared by every redistribution of this construction.
    std::vector<MnemonicArg> margs;
    std::vector<const SlotFacts*> facts_of;
    for (const auto& spec : def.args) {
      MnemonicArg a;
      a.function = spec.function;
      a.optional = spec.optional;
      a.realizations = spec.literals;
      const SlotFacts* sf = nullptr;
      if (spec.slot) {
        auto it = facts.slots.find(spec.slot->slot.index);
        sf = it == facts.slots.end() ? &empty_slot : &it->second;
        std::string nominal = spec.slot->preposition.empty() ? "sn"
                                                             : spec.slot->preposition + "-sn";
        if (!sf->any && findings)
          findings->warn("EMPTY_SLOT",
                         "construction '" + pattern_id + "' uses slot N" +
                             std::to_string(spec.slot->slot.index) +
                             " which has no distributional feature",
                         entry.entry_id);
        if (sf->tokens.empty() || !sf->restrictions.empty())
          a.realizations.push_back(nominal);
        a.realizations.insert(a.realizations.end(), sf->tokens.begin(), sf->tokens.end());
      }
      std::sort(a.realizations.begin(), a.realizations.end(), [](const auto& x, const auto& y) {
        return realization_rank(x) < realization_rank(y);
      });
      a.realizations.erase(std::unique(a.realizations.begin(), a.realizations.end()),
                           a.realizations.end());
      if (a.realizations.empty())
        throw Error("CATALOG_VALUE", "construction '" + pattern_id + "' argument '" +
                                         a.function + "' has no realization",
                    entry.entry_id);
      margs.push_back(std::move(a));
      facts_of.push_back(sf);
    }

    auto has_token = [&](std::size_t i, Constituent c) {
      for (const auto& t : margs[i].realizations)
        if (auto r = parse_realization(t); r && constituent_of(*r) == c)
          return true;
      return false;
    };

    // @-section
    std::vector<std::string> labels;
    if (facts.reflexive) labels.push_back("pron");
    if (facts.impersonal) labels.push_back("impers");
    if (facts.negation) labels.push_back("neg");
    labels.push_back(facts.auxiliary);
    {
      std::vector<std::tuple<int, std::string>> restriction_labels;
      for (std::size_t i = 0; i < margs.size(); ++i) {
        if (!facts_of[i])
          continue;
        for (auto r : facts_of[i]->restrictions)
          restriction_labels.emplace_back(r == Restriction::non_human ? 0 : 1,
                                          margs[i].function);
      }
      std::sort(restriction_labels.begin(), restriction_labels.end());
      for (const auto& [rank, fn] : restriction_labels)
        labels.push_back(fn + (rank == 0 ? "N-hum" : "Nhum"));
    }
    for (std::size_t i = 0; i < margs.size(); ++i)
      if (facts_of[i] && facts_of[i]->mood && has_token(i, Constituent::completive_clause))
        labels.push_back(margs[i].function +
                         (*facts_of[i]->mood == Mood::subjunctive ? "Subj" : "Ind"));
    for (std::size_t i = 0; i < margs.size(); ++i) {
      if (!facts_of[i])
        continue;
      if (!facts_of[i]->prepositions.empty())
        labels.push_back(margs[i].function + "Prep=" +
                         detail::label_safe(join(facts_of[i]->prepositions, "+")));
      if (facts_of[i]->role)
        labels.push_back(margs[i].function + "Role=" + to_string(*facts_of[i]->role));
    }
    for (const auto& l : def.labels)
      detail::add_unique(labels, l);

    for (const auto& redistribution : facts.redistributions) {
      if (starts_with(redistribution, "passif") &&
          (margs.size() < 2 || margs[1].function != "Obj"))
        continue;
      Frame frame;
      frame.mnemonic.args = margs;
      frame.mnemonic.features = labels;
      frame.mnemonic.redistributions = {redistribution};

      frame.props.voice =
          starts_with(redistribution, "passif") || facts.voice_passive ? "passive" : "active";
      frame.props.auxiliary = facts.auxiliary;
      frame.props.negation = facts.negation;
      if (facts.impersonal || detail::is_impersonal_redistribution(redistribution))
        frame.props.non_argumental_clitic = "impersonal";
      else if (facts.reflexive)
        frame.props.non_argumental_clitic = "reflexive";

      for (std::size_t i = 0; i < margs.size(); ++i) {
        Argument arg;
        arg.id = static_cast<int>(i);
        arg.function = deduce_function(arg.id, redistribution);
        arg.optional = margs[i].optional;
        for (const auto& t : margs[i].realizations) {
          auto c = constituent_of(*parse_realization(t));
          if (std::find(arg.constituents.begin(), arg.constituents.end(), c) ==
              arg.constituents.end())
            arg.constituents.push_back(c);
        }
        if (const SlotFacts* sf = facts_of[i]) {
          arg.restriction.assign(sf->restrictions.begin(), sf->restrictions.end());
          arg.introducers = sf->prepositions;
          arg.role = sf->role;
          if (sf->mood) {
            if (has_token(i, Constituent::completive_clause))
              arg.mood = sf->mood;
            else if (findings)
              findings->warn("MOOD_WITHOUT_COMPLETIVE",
                             "mood dropped from argument '" + margs[i].function +
                                 "' which has no completive clause",
                             entry.entry_id);
          }
        }
        frame.arguments.push_back(std::move(arg));
      }

      auto position_of_slot = [&](int slot) -> std::optional<int> {
        for (std::size_t j = 0; j < def.args.size(); ++j)
          if (def.args[j].slot && def.args[j].slot->slot.index == slot)
            return static_cast<int>(j);
        return std::nullopt;
      };
      auto positions = [&](const std::vector<int>& slots) {
        std::vector<int> out;
        for (int s : slots) {
          if (auto p = position_of_slot(s))
            out.push_back(*p);
          else if (findings)
            findings->warn("CONTROL_SLOT_ABSENT",
                           "controller N" + std::to_string(s) + " is not an argument of '" +
                               pattern_id + "'",
                           entry.entry_id);
        }
        return out;
      };

      for (std::size_t i = 0; i < margs.size(); ++i) {
        if (!facts_of[i])
          continue;
        for (const auto& [token, slots] : facts_of[i]->controllers) {
          if (std::find(margs[i].realizations.begin(), margs[i].realizations.end(), token) ==
              margs[i].realizations.end())
            continue;
          if (auto p = positions(slots); !p.empty())
            assign_control(frame, static_cast<int>(i), p);
        }
      }
      for (const auto& c : def.controls) {
        std::size_t target = 0;
        while (target < margs.size() && margs[target].function != c.function)
          ++target;
        bool clausal = false;
        for (auto k : frame.arguments[target].constituents)
          clausal = clausal || is_clausal(k);
        if (!clausal)
          throw Error("CATALOG_VALUE",
                      "construction '" + pattern_id + "' controls non-clausal argument '" +
                          c.function + "'",
                      entry.entry_id);
        if (auto p = positions(c.controller_slots); !p.empty())
          assign_control(frame, static_cast<int>(target), p);
      }
      frames.push_back(std::move(frame));
    }
  }

  if (frames.empty() && findings)
    findings->warn("NO_FRAMES", "entry licenses no construction", entry.entry_id);
  return frames;
}

// ---------------------------------------------------------------------------
// Frozen clitics
// ---------------------------------------------------------------------------

struct MweUse {
  std::string pattern_id;
  std::vector<std::string> components;

  bool operator==(const MweUse&) const = default;
};

inline std::optional<MweUse> detect_frozen_clitic(const LGLexEntry& entry,
                                                  const FeatureCatalog& catalog) {
  for (const auto& f : entry.features.lexeme_properties) {
    auto* t = std::get_if<MweTriggerAction>(&f.action);
    if (!t)
      continue;
    auto it = catalog.patterns.find(t->pattern);
    if (it == catalog.patterns.end())
      throw Error("MWE_PATTERN", "feature '" + f.id + "' triggers undeclared pattern '" +
                                     t->pattern + "'",
                  entry.entry_id);
    MweUse use{t->pattern, t->components};
    use.components.push_back(std::string(category_code(entry.category)) + "_" + entry.lemma);
    if (use.components.size() != it->second.components.size())
      throw Error("MWE_COMPONENTS",
                  "pattern '" + t->pattern + "' has " +
                      std::to_string(it->second.components.size()) + " components, entry gives " +
                      std::to_string(use.components.size()),
                  entry.entry_id);
    return use;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Interning and sets
// ---------------------------------------------------------------------------

class FrameStore {
public:
  // Returns the frame id. Equal ids must carry equal content.
  const std::string& intern(Frame frame) {
    std::string id = frame.id();
    auto it = frames_.find(id);
    if (it == frames_.end())
      return frames_.emplace(std::move(id), std::move(frame)).first->first;
    if (!(it->second == frame))
      throw Error("INTERNAL_CONSISTENCY",
                  "two frames share the identifier but differ in content", id);
    return it->first;
  }
  const Frame* find(const std::string& id) const {
    auto it = frames_.find(id);
    return it == frames_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, Frame>& frames() const { return frames_; }
  std::size_t size() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }

private:
  std::map<std::string, Frame> frames_;
};

struct FrameSet {
  std::string id;
  std::vector<std::string> frame_ids;

  bool operator==(const FrameSet&) const = default;
};

inline constexpr std::size_t kMaxSetSize = 4;

// Frames of one entry sharing arguments and @-features form a set; sets come
// out in first-occurrence order of their stems.
inline std::vector<FrameSet> group_entry_frames(const std::vector<std::string>& frame_ids) {
  std::vector<std::string> stems;
  std::map<std::string, std::vector<std::string>> members;
  std::map<std::string, std::vector<std::string>> labels;
  for (const auto& id : frame_ids) {
    auto m = parse_mnemonic(id);
    if (m.redistributions.size() != 1)
      throw Error("MNEMONIC_PARSE", "a frame id carries exactly one redistribution", id);
    std::string stem = print_stem(m);
    if (!members.count(stem))
      stems.push_back(stem);
    auto& ids = members[stem];
    if (std::find(ids.begin(), ids.end(), id) != ids.end())
      continue;
    ids.push_back(id);
    labels[stem].push_back(m.redistributions[0]);
  }
  std::vector<FrameSet> out;
  for (const auto& stem : stems) {
    auto& ids = members[stem];
    auto& ls = labels[stem];
    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return redistribution_less(ls[a], ls[b]); });
    FrameSet set;
    std::vector<std::string> percent;
    for (auto i : order) {
      set.frame_ids.push_back(ids[i]);
      percent.push_back("%" + ls[i]);
    }
    set.id = stem + ";" + join(percent, ",");
    if (set.frame_ids.size() > kMaxSetSize)
      throw Error("SET_SIZE", "set has " + std::to_string(set.frame_ids.size()) +
                                  " members; at most 4 allowed", set.id);
    out.push_back(std::move(set));
  }
  return out;
}

struct SetGrouping {
  std::map<std::string, FrameSet> sets;
  std::vector<std::vector<std::string>> entry_sets;  // per entry, set ids
};

inline SetGrouping group_into_sets(const std::vector<std::vector<std::string>>& entry_frames) {
  SetGrouping g;
  for (const auto& ids : entry_frames) {
    std::vector<std::string> refs;
    for (auto& set : group_entry_frames(ids)) {
      refs.push_back(set.id);
      auto [it, fresh] = g.sets.emplace(set.id, set);
      if (!fresh && !(it->second == set))
        throw Error("INTERNAL_CONSISTENCY", "set identifier maps to different members", set.id);
    }
    g.entry_sets.push_back(std::move(refs));
  }
  return g;
}

} // namespace lg2lmf
