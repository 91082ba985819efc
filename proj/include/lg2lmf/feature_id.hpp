#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <variant>

#include "text.hpp"

namespace lg2lmf {

// Feature identifiers appear with "=" and "=:" interchangeably and with
// irregular spacing. Table headers, the table of classes and the catalog are
// all keyed by this normal form.
inline std::string normalize_feature_id(std::string_view raw) {
  auto words = split_words(raw);
  for (auto& w : words)
    if (w == "=")
      w = "=:";
  return join(words, " ");
}

struct ArgSlot {
  int index = 0;
  bool operator==(const ArgSlot&) const = default;
};

// "N0 =: Nhum"
struct Distribution {
  ArgSlot slot;
  std::string shape;
  bool operator==(const Distribution&) const = default;
};

// "N0 V de N2"
struct Construction {
  std::string pattern;
  bool operator==(const Construction&) const = default;
};

// "Ppv =: en figé"
struct CliticSpec {
  std::string value;
  bool frozen = false;
  bool operator==(const CliticSpec&) const = default;
};

struct Opaque {
  bool operator==(const Opaque&) const = default;
};

struct FeatureExpr {
  std::string raw;
  std::variant<Distribution, Construction, CliticSpec, Opaque> parsed;

  bool operator==(const FeatureExpr&) const = default;
  bool is_opaque() const { return std::holds_alternative<Opaque>(parsed); }
};

namespace detail {

inline std::optional<int> slot_token(std::string_view t) {
  if (t.size() < 2 || t[0] != 'N')
    return std::nullopt;
  return parse_int(t.substr(1));
}

inline bool is_verb_token(std::string_view t) {
  if (t.empty() || t[0] != 'V')
    return false;
  if (t.size() == 1)
    return true;
  unsigned char next = static_cast<unsigned char>(t[1]);
  return t[1] == '-' || std::islower(next) || std::isdigit(next);
}

} // namespace detail

// Total: identifiers no rule recognises come back as Opaque.
inline FeatureExpr parse_feature_id(std::string_view raw) {
  FeatureExpr expr{std::string(raw), Opaque{}};
  auto words = split_words(normalize_feature_id(raw));
  if (words.empty())
    return expr;

  if (words.size() >= 3 && words[1] == "=:") {
    std::vector<std::string> rest(words.begin() + 2, words.end());
    if (auto slot = detail::slot_token(words[0]); slot && *slot >= 0) {
      expr.parsed = Distribution{ArgSlot{*slot}, join(rest, " ")};
    } else if (words[0] == "Ppv") {
      bool frozen = rest.size() >= 2 && rest.back() == "figé";
      if (frozen)
        rest.pop_back();
      expr.parsed = CliticSpec{join(rest, " "), frozen};
    }
    return expr;
  }

  bool has_binder = false;
  bool has_verb = false;
  for (const auto& w : words) {
    has_binder = has_binder || w == "=:";
    has_verb = has_verb || detail::is_verb_token(w);
  }
  if (!has_binder && has_verb)
    expr.parsed = Construction{join(words, " ")};
  return expr;
}

// Prints the parsed form back. For every non-Opaque expression this equals
// normalize_feature_id(raw).
inline std::string render_feature_id(const FeatureExpr& expr) {
  struct Visitor {
    const FeatureExpr& e;
    std::string operator()(const Distribution& d) const {
      return "N" + std::to_string(d.slot.index) + " =: " + d.shape;
    }
    std::string operator()(const Construction& c) const { return c.pattern; }
    std::string operator()(const CliticSpec& c) const {
      return "Ppv =: " + c.value + (c.frozen ? " figé" : "");
    }
    std::string operator()(const Opaque&) const { return e.raw; }
  };
  return std::visit(Visitor{expr}, expr.parsed);
}

} // namespace lg2lmf
