#include <gtest/gtest.h>

#include "lg2lmf/text.hpp"

using namespace lg2lmf;

TEST(Text, TrimAndCollapse) {
  EXPECT_EQ(trim("  a b\t\n"), "a b");
  EXPECT_EQ(trim(""), "");
  EXPECT_EQ(collapse_spaces("  N0   =:\tNhum "), "N0 =: Nhum");
}

TEST(Text, SplitKeepsEmptyPieces) {
  EXPECT_EQ(split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(split("", ','), (std::vector<std::string>{""}));
  EXPECT_EQ(split_words(" x  y "), (std::vector<std::string>{"x", "y"}));
}

TEST(Text, ParseInt) {
  EXPECT_EQ(parse_int(" 42 "), 42);
  EXPECT_EQ(parse_int("-3"), -3);
  EXPECT_FALSE(parse_int("4x"));
  EXPECT_FALSE(parse_int(""));
}

TEST(Text, Join) {
  std::vector<std::string> v{"a", "b", "c"};
  EXPECT_EQ(join(v, " "), "a b c");
  EXPECT_EQ(join(std::vector<std::string>{}, ","), "");
}
