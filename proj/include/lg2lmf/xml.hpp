#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/property_tree/detail/rapidxml.hpp>

#include "error.hpp"
#include "text.hpp"

namespace lg2lmf {

struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlNode> children;
  std::string text;

  XmlNode() = default;
  explicit XmlNode(std::string n) : name(std::move(n)) {}

  XmlNode& set(std::string key, std::string value) {
    for (auto& [k, v] : attributes)
      if (k == key) {
        v = std::move(value);
        return *this;
      }
    attributes.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes)
      if (k == key)
        return &v;
    return nullptr;
  }
  XmlNode& add(XmlNode child) {
    children.push_back(std::move(child));
    return children.back();
  }
  XmlNode& add(std::string child_name) { return add(XmlNode(std::move(child_name))); }

  bool operator==(const XmlNode&) const = default;
};

// <feat att="..." val="..."/>
inline XmlNode feat(std::string att, std::string val) {
  XmlNode n("feat");
  n.set("att", std::move(att));
  n.set("val", std::move(val));
  return n;
}

// id, status, then the rest alphabetically.
inline bool attribute_less(const std::string& a, const std::string& b) {
  auto rank = [](const std::string& k) { return k == "id" ? 0 : k == "status" ? 1 : 2; };
  if (rank(a) != rank(b))
    return rank(a) < rank(b);
  return a < b;
}

inline std::string xml_escape(std::string_view s, bool attribute) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) out += "&quot;";
        else out += c;
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20)
          throw Error("XML_CHAR", "control character in XML content: '" + std::string(s) + "'");
        out += c;
    }
  }
  return out;
}

namespace detail {

inline void write_node(std::string& out, const XmlNode& n, int depth) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  out += indent + "<" + n.name;
  auto attrs = n.attributes;
  std::stable_sort(attrs.begin(), attrs.end(),
                   [](const auto& a, const auto& b) { return attribute_less(a.first, b.first); });
  for (const auto& [k, v] : attrs)
    out += " " + k + "=\"" + xml_escape(v, true) + "\"";
  if (n.children.empty() && n.text.empty()) {
    out += "/>\n";
    return;
  }
  out += ">";
  if (n.children.empty()) {
    out += xml_escape(n.text, false) + "</" + n.name + ">\n";
    return;
  }
  out += "\n";
  if (!n.text.empty())
    out += indent + "  " + xml_escape(n.text, false) + "\n";
  for (const auto& c : n.children)
    write_node(out, c, depth + 1);
  out += indent + "</" + n.name + ">\n";
}

namespace rx = boost::property_tree::detail::rapidxml;

inline XmlNode from_rapidxml(const rx::xml_node<char>& n) {
  XmlNode node(std::string(n.name(), n.name_size()));
  for (auto* a = n.first_attribute(); a; a = a->next_attribute())
    node.attributes.emplace_back(std::string(a->name(), a->name_size()),
                                 std::string(a->value(), a->value_size()));
  for (auto* c = n.first_node(); c; c = c->next_sibling()) {
    if (c->type() == rx::node_element)
      node.children.push_back(from_rapidxml(*c));
    else if (c->type() == rx::node_data || c->type() == rx::node_cdata)
      node.text += std::string(trim(std::string_view(c->value(), c->value_size())));
  }
  return node;
}

} // namespace detail

inline std::string write_xml(const std::vector<XmlNode>& roots, bool declaration = true) {
  std::string out;
  if (declaration)
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  for (const auto& r : roots)
    detail::write_node(out, r, 0);
  return out;
}

inline std::string write_xml(const XmlNode& root, bool declaration = true) {
  return write_xml(std::vector<XmlNode>{root}, declaration);
}

// Accepts several top-level elements, so fragments parse too.
// Comments and the declaration are dropped.
inline std::vector<XmlNode> parse_xml(std::string_view bytes) {
  namespace rx = detail::rx;
  std::vector<char> buffer(bytes.begin(), bytes.end());
  buffer.push_back('\0');
  rx::xml_document<char> doc;
  try {
    doc.parse<rx::parse_validate_closing_tags | rx::parse_trim_whitespace>(buffer.data());
  } catch (const rx::parse_error& e) {
    auto offset = static_cast<std::size_t>(e.where<char>() - buffer.data());
    auto line = 1 + std::count(bytes.begin(), bytes.begin() + std::min(offset, bytes.size()), '\n');
    throw Error("XML_SYNTAX", e.what(), "line " + std::to_string(line));
  }
  std::vector<XmlNode> roots;
  for (auto* c = doc.first_node(); c; c = c->next_sibling())
    if (c->type() == rx::node_element)
      roots.push_back(detail::from_rapidxml(*c));
  return roots;
}

namespace detail {

inline void canonical_node(XmlNode& n) {
  for (auto& [k, v] : n.attributes) {
    if (k == "attr")
      k = "att";
    v = collapse_spaces(v);
  }
  n.text = collapse_spaces(n.text);
  for (auto& c : n.children)
    canonical_node(c);
}

} // namespace detail

// Whitespace-insensitive, attribute-order-insensitive normal form; `attr` is
// read as `att`. The XML declaration is dropped.
inline std::string canonicalize(std::string_view bytes) {
  auto roots = parse_xml(bytes);
  for (auto& r : roots)
    detail::canonical_node(r);
  return write_xml(roots, false);
}

} // namespace lg2lmf
