#include <gtest/gtest.h>

#include "support.hpp"

using namespace lg2lmf;

TEST(Xml, EscapesAndLayout) {
  XmlNode root("a");
  root.set("z", "1").set("status", "s").set("id", "x&<>\"").set("b", "2");
  root.add(feat("k", "v"));
  root.add("empty");
  EXPECT_EQ(write_xml(root),
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            "<a id=\"x&amp;&lt;&gt;&quot;\" status=\"s\" b=\"2\" z=\"1\">\n"
            "  <feat att=\"k\" val=\"v\"/>\n"
            "  <empty/>\n"
            "</a>\n");
  EXPECT_EQ(write_xml(XmlNode("b"), false), "<b/>\n");
}

TEST(Xml, ControlCharactersRejected) {
  XmlNode n("a");
  n.set("id", std::string("x\x01y"));
  try {
    write_xml(n);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "XML_CHAR");
  }
}

TEST(Xml, ParseRoundTrip) {
  XmlNode root("r");
  root.set("id", "é & ü");
  root.add("c").set("v", "<1>");
  auto back = parse_xml(write_xml(root));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], root);
}

TEST(Xml, SyntaxErrors) {
  for (const char* bad : {"<a>", "<a></b>", "<a x=1/>", "</a>"}) {
    try {
      parse_xml(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), "XML_SYNTAX") << bad;
    }
  }
}

TEST(Xml, CanonicalFormIgnoresLayout) {
  std::string a = "<?xml version=\"1.0\"?>\n<!-- note -->\n<x id=\"p\n   q\"><feat attr=\"a\" val=\"b\"/></x>";
  std::string b = "<x   id = \"p q\" >\n  <feat val=\"b\" att=\"a\" />\n</x>\n";
  EXPECT_EQ(canonicalize(a), canonicalize(b));
  EXPECT_EQ(canonicalize(canonicalize(a)), canonicalize(a));
  EXPECT_EQ(canonicalize(a).rfind("<?xml", 0), std::string::npos);
  EXPECT_NE(canonicalize("<x v=\"1\"/>"), canonicalize("<x v=\"2\"/>"));
}

TEST(Xml, SeveralRootsKeepOrder) {
  auto roots = parse_xml("<a/><b/>");
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0].name, "a");
  EXPECT_EQ(roots[1].name, "b");
}
