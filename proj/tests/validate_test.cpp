#include <gtest/gtest.h>

#include "support.hpp"

using namespace lg2lmf;
using namespace testing_support;

namespace {

const LmfDocument& mini() {
  static const LmfDocument d = convert_corpus("mini_corpus").doc;
  return d;
}

Findings check(const LmfDocument& d) { return validate_lmf(emit_lmf(d)); }

bool only_error(const Findings& f, const std::string& code) {
  bool seen = false;
  for (const auto& i : f.items())
    if (i.severity == Severity::error) {
      if (i.code != code)
        return false;
      seen = true;
    }
  return seen;
}

}

TEST(Validate, ConvertedOutputPasses) {
  auto f = check(mini());
  EXPECT_TRUE(f.passed());
  EXPECT_TRUE(f.items().empty());
  EXPECT_TRUE(validate_lmf(emit_lmf(sample_corpus().doc), true).passed());
}

TEST(Validate, DanglingSetReference) {
  auto d = mini();
  d.entries[0].frame_set_refs.push_back("[Suj:sn];;%actif");
  EXPECT_TRUE(only_error(check(d), "DANGLING_REF"));
}

TEST(Validate, DanglingFrameReference) {
  auto d = mini();
  d.frames.erase(d.frames.begin());
  EXPECT_TRUE(check(d).has_code("DANGLING_REF"));
}

TEST(Validate, ArgumentIdGap) {
  auto d = mini();
  d.frames[0].arguments.back().id += 1;
  EXPECT_TRUE(only_error(check(d), "ARG_ID_GAP"));
}

TEST(Validate, ControlOutOfRange) {
  auto d = mini();
  d.frames[0].arguments[0].control = {9};
  EXPECT_TRUE(only_error(check(d), "CONTROL_OUT_OF_RANGE"));
  d.frames[0].arguments[0].control = {0};
  EXPECT_TRUE(only_error(check(d), "CONTROL_SELF"));
}

TEST(Validate, OversizedSet) {
  auto d = mini();
  auto& s = d.frame_sets[0];
  while (s.frame_ids.size() < 5)
    s.frame_ids.push_back(s.frame_ids[0]);
  EXPECT_TRUE(check(d).has_code("SET_SIZE"));
}

TEST(Validate, HeterogeneousSet) {
  auto d = mini();
  ASSERT_GE(d.frame_sets.size(), 2u);
  d.frame_sets[0].frame_ids.push_back(d.frame_sets[1].frame_ids[0]);
  EXPECT_TRUE(check(d).has_code("SET_HETEROGENEOUS"));
}

TEST(Validate, IllegalStatus) {
  std::string xml = emit_lmf(mini());
  auto at = xml.find("status=\"");
  ASSERT_NE(at, std::string::npos);
  auto end = xml.find('"', at + 8);
  xml.replace(at + 8, end - at - 8, "finished");
  EXPECT_TRUE(only_error(validate_lmf(xml), "ILLEGAL_STATUS"));
}

TEST(Validate, UnsortedBlock) {
  std::string xml = write_xml(document_node([] {
    auto d = mini();
    std::reverse(d.entries.begin(), d.entries.end());
    return d;
  }()));
  EXPECT_TRUE(only_error(validate_lmf(xml), "UNSORTED_BLOCK"));
}

TEST(Validate, DuplicateId) {
  auto d = mini();
  d.entries.push_back(d.entries.back());
  EXPECT_TRUE(check(d).has_code("DUPLICATE_ID"));
}

TEST(Validate, MoodWithoutCompletive) {
  auto d = mini();
  d.frames[0].arguments[0].mood = Mood::subjunctive;
  EXPECT_TRUE(check(d).has_code("MOOD_WITHOUT_COMPLETIVE"));
}

TEST(Validate, EmptyFrameSets) {
  auto d = mini();
  d.entries[0].frame_set_refs.clear();
  EXPECT_TRUE(only_error(check(d), "EMPTY_FRAME_SETS"));
}

TEST(Validate, StrictEscalatesCompatibility) {
  std::string xml = emit_lmf(mini());
  auto at = xml.find(" att=");
  xml.replace(at, 5, " attr=");
  EXPECT_TRUE(validate_lmf(xml).passed());
  auto strict = validate_lmf(xml, true);
  EXPECT_FALSE(strict.passed());
  EXPECT_TRUE(only_error(strict, "COMPAT_ATTR"));
}

TEST(Validate, GarbageIsAFindingNotAThrow) {
  auto f = validate_lmf("not xml at all <");
  EXPECT_FALSE(f.passed());
  EXPECT_THROW(read_lmf("<LexicalResource/>"), Error);
}

TEST(Stats, MiniCorpus) {
  auto r = compute_stats(mini());
  EXPECT_EQ(r.entries, 5u);
  EXPECT_EQ(r.distinct_lemmas, 5u);
  EXPECT_EQ(r.frames, 4u);
  EXPECT_EQ(r.frame_sets, 4u);
  EXPECT_EQ(r.set_size_histogram, (std::map<std::size_t, std::size_t>{{1, 3}, {2, 1}, {3, 0}, {4, 0}}));
  EXPECT_EQ(r.mwe_entries, 0u);
  std::size_t total = 0;
  for (const auto& [k, v] : r.status_histogram)
    total += v;
  EXPECT_EQ(total, 5u);
  EXPECT_EQ(r.status_histogram.size(), 3u);
}

TEST(Stats, TextReport) {
  auto text = stats_text(compute_stats(mini(), 2));
  EXPECT_NE(text.find("entries: 5\n"), std::string::npos);
  EXPECT_NE(text.find("  sets of 2: 1\n"), std::string::npos);
  EXPECT_NE(text.find("warnings: 2\n"), std::string::npos);
}

TEST(Stats, SampleCorpus) {
  auto r = compute_stats(sample_corpus().doc);
  EXPECT_EQ(r.entries, 124u);
  EXPECT_EQ(r.mwe_entries, 3u);
}

TEST(Stats, EmptyDocument) {
  auto doc = read_lmf(emit_lmf(LmfDocument{}));
  auto r = compute_stats(doc);
  EXPECT_EQ(r.entries, 0u);
  EXPECT_EQ(r.frames, 0u);
  EXPECT_EQ(r.frame_sets, 0u);
  for (const auto& [k, v] : r.set_size_histogram)
    EXPECT_EQ(v, 0u) << k;
  for (const auto& [k, v] : r.status_histogram)
    EXPECT_EQ(v, 0u) << k;
}
