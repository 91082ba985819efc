#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "text.hpp"

namespace lg2lmf {

// ---------------------------------------------------------------------------
// Realization tokens ("cln", "sn", "de-sinf", "à-sn", ...) and the LMF
// constituents they stand for.
// ---------------------------------------------------------------------------

enum class Constituent {
  np,
  pp,
  infinitive_clause,
  completive_clause,
  wh_completive_clause,
  adj,
  clitic_nominative,
  clitic_accusative,
  clitic_pronoun,
};

inline const char* to_string(Constituent c) {
  switch (c) {
    case Constituent::np: return "NP";
    case Constituent::pp: return "PP";
    case Constituent::infinitive_clause: return "infinitive-clause";
    case Constituent::completive_clause: return "completive-clause";
    case Constituent::wh_completive_clause: return "wh-completive-clause";
    case Constituent::adj: return "adj";
    case Constituent::clitic_nominative: return "clitic-nominative";
    case Constituent::clitic_accusative: return "clitic-accusative";
    case Constituent::clitic_pronoun: return "clitic-pronoun";
  }
  return "";
}

inline std::optional<Constituent> parse_constituent(std::string_view s) {
  for (Constituent c : {Constituent::np, Constituent::pp, Constituent::infinitive_clause,
                        Constituent::completive_clause, Constituent::wh_completive_clause,
                        Constituent::adj, Constituent::clitic_nominative,
                        Constituent::clitic_accusative, Constituent::clitic_pronoun})
    if (s == to_string(c))
      return c;
  return std::nullopt;
}

inline bool is_clausal(Constituent c) {
  return c == Constituent::infinitive_clause || c == Constituent::completive_clause ||
         c == Constituent::wh_completive_clause;
}

struct Realization {
  std::string preposition;  // empty when the realization is not introduced
  std::string base;         // sn, sinf, scompl, qcompl, sa, cln, cla, cld, ...
};

inline bool is_clitic_base(std::string_view b) { return starts_with(b, "cl"); }

inline bool is_known_base(std::string_view b) {
  return b == "sn" || b == "sinf" || b == "scompl" || b == "qcompl" || b == "sa" ||
         is_clitic_base(b);
}

// Splits at the last '-' so that multi-word prepositions survive.
inline std::optional<Realization> parse_realization(std::string_view token) {
  Realization r;
  auto dash = token.rfind('-');
  if (dash == std::string_view::npos) {
    r.base = std::string(token);
  } else {
    r.preposition = std::string(token.substr(0, dash));
    r.base = std::string(token.substr(dash + 1));
    if (r.preposition.empty())
      return std::nullopt;
  }
  if (!is_known_base(r.base))
    return std::nullopt;
  if (!r.preposition.empty() && is_clitic_base(r.base))
    return std::nullopt;
  return r;
}

inline Constituent constituent_of(const Realization& r) {
  if (r.base == "sn")
    return r.preposition.empty() ? Constituent::np : Constituent::pp;
  if (r.base == "sinf")
    return Constituent::infinitive_clause;
  if (r.base == "scompl")
    return Constituent::completive_clause;
  if (r.base == "qcompl")
    return Constituent::wh_completive_clause;
  if (r.base == "sa")
    return Constituent::adj;
  if (r.base == "cln")
    return Constituent::clitic_nominative;
  if (r.base == "cla")
    return Constituent::clitic_accusative;
  return Constituent::clitic_pronoun;
}

// Canonical order of realizations inside one argument: nominative clitic,
// clauses, prepositional phrases, noun phrases, adjectives, other clitics.
inline std::tuple<int, int, std::string> realization_rank(std::string_view token) {
  auto r = parse_realization(token);
  if (!r)
    return {99, 0, std::string(token)};
  int group = 8;
  if (r->base == "cln") group = 0;
  else if (r->base == "scompl") group = 1;
  else if (r->base == "qcompl") group = 2;
  else if (r->base == "sinf") group = 3;
  else if (r->base == "sn") group = r->preposition.empty() ? 5 : 4;
  else if (r->base == "sa") group = 6;
  else if (r->base == "cla") group = 7;
  return {group, r->preposition.empty() ? 0 : 1, std::string(token)};
}

// ---------------------------------------------------------------------------
// Mnemonic identifiers: [Suj:cln|sn,Obl:(de-sinf)];@pron,@être;%actif
// ---------------------------------------------------------------------------

struct MnemonicArg {
  std::string function;  // Suj, Obj, Obl, Loc, Att, ...
  bool optional = false;
  std::vector<std::string> realizations;

  bool operator==(const MnemonicArg&) const = default;
};

struct MnemonicId {
  std::vector<MnemonicArg> args;
  std::vector<std::string> features;         // without the leading '@'
  std::vector<std::string> redistributions;  // without the leading '%'

  bool operator==(const MnemonicId&) const = default;
};

// Arguments and @-features; frames of one set share it.
inline std::string print_stem(const MnemonicId& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.args.size(); ++i) {
    const auto& a = m.args[i];
    if (i)
      out += ',';
    out += a.function;
    out += ':';
    if (a.optional)
      out += '(';
    out += join(a.realizations, "|");
    if (a.optional)
      out += ')';
  }
  out += "];";
  for (std::size_t i = 0; i < m.features.size(); ++i) {
    if (i)
      out += ',';
    out += '@';
    out += m.features[i];
  }
  return out;
}

inline std::string print_mnemonic(const MnemonicId& m) {
  std::string out = print_stem(m) + ";";
  for (std::size_t i = 0; i < m.redistributions.size(); ++i) {
    if (i)
      out += ',';
    out += '%';
    out += m.redistributions[i];
  }
  return out;
}

namespace detail {

inline bool has_any(std::string_view s, std::string_view chars) {
  for (char c : s)
    if (is_space(c) || chars.find(c) != std::string_view::npos)
      return true;
  return false;
}

inline std::vector<std::string> split_labels(std::string_view section, char sigil,
                                             std::string_view what, std::string_view id) {
  std::vector<std::string> out;
  if (section.empty())
    return out;
  for (const auto& item : split(section, ',')) {
    if (item.size() < 2 || item[0] != sigil)
      throw Error("MNEMONIC_SYNTAX",
                  std::string(what) + " '" + item + "' must start with '" + sigil + "'",
                  std::string(id));
    std::string label = item.substr(1);
    if (has_any(label, "[];,"))
      throw Error("MNEMONIC_SYNTAX", "illegal character in label '" + item + "'",
                  std::string(id));
    out.push_back(std::move(label));
  }
  return out;
}

} // namespace detail

inline MnemonicId parse_mnemonic(std::string_view s) {
  const std::string id(s);
  auto fail = [&](const std::string& why) -> Error {
    return Error("MNEMONIC_SYNTAX", why, id);
  };
  if (s.empty() || s.front() != '[')
    throw fail("identifier must start with '['");
  auto close = s.find(']');
  if (close == std::string_view::npos)
    throw fail("unbalanced brackets");
  std::string_view args = s.substr(1, close - 1);
  if (args.find('[') != std::string_view::npos)
    throw fail("unbalanced brackets");
  std::string_view rest = s.substr(close + 1);
  if (rest.empty() || rest.front() != ';')
    throw fail("expected three ';'-separated sections");
  auto sections = split(rest.substr(1), ';');
  if (sections.size() != 2)
    throw fail("expected three ';'-separated sections, got " +
               std::to_string(sections.size() + 1));

  MnemonicId m;
  if (!args.empty()) {
    for (const auto& raw : split(args, ',')) {
      auto colon = raw.find(':');
      if (colon == std::string::npos || colon == 0)
        throw fail("argument '" + raw + "' lacks a function label");
      MnemonicArg a;
      a.function = raw.substr(0, colon);
      if (detail::has_any(a.function, ":,;[]()|@%"))
        throw fail("illegal character in function label '" + a.function + "'");
      std::string_view body = std::string_view(raw).substr(colon + 1);
      bool open = !body.empty() && body.front() == '(';
      bool shut = !body.empty() && body.back() == ')';
      if (open != shut || (open && body.size() < 2))
        throw fail("unbalanced parentheses in '" + raw + "'");
      if (open) {
        a.optional = true;
        body = body.substr(1, body.size() - 2);
      }
      if (body.empty())
        throw fail("empty realization list in '" + raw + "'");
      for (const auto& tok : split(body, '|')) {
        if (tok.empty())
          throw fail("empty realization in '" + raw + "'");
        if (detail::has_any(tok, ":,;[]()|"))
          throw fail("illegal character in realization '" + tok + "'");
        a.realizations.push_back(tok);
      }
      m.args.push_back(std::move(a));
    }
  }
  m.features = detail::split_labels(sections[0], '@', "feature label", id);
  m.redistributions = detail::split_labels(sections[1], '%', "redistribution", id);
  if (m.redistributions.empty())
    throw fail("no redistribution label");
  return m;
}

} // namespace lg2lmf
