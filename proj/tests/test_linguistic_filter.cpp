#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mwt/linguistic_filter.hpp"
#include "oracles.hpp"

namespace mwt {
namespace {

const TagsetMap kMap{{"N", PosCategory::Noun},
                     {"A", PosCategory::Adjective},
                     {"P", PosCategory::Preposition},
                     {"V", PosCategory::Verb}};

std::vector<std::string> surfaces(const std::vector<CandidateOccurrence>& occs) {
  std::vector<std::string> out;
  for (const auto& o : occs) out.push_back(o.surface());
  return out;
}

TEST(Extract, NounNounBigram) {
  const auto occs = extract_candidates(parse_tagged_corpus("تلوث/N الهواء/N", kMap));
  ASSERT_EQ(occs.size(), 1u);
  EXPECT_EQ(occs[0].pattern, PatternId::P1);
  EXPECT_EQ(occs[0].length(), 2u);
}

TEST(Extract, NounPrepNoun) {
  const auto occs = extract_candidates(parse_tagged_corpus("برميل/N من/P النفط/N", kMap));
  ASSERT_EQ(occs.size(), 1u);
  EXPECT_EQ(occs[0].pattern, PatternId::P2);
  EXPECT_EQ(occs[0].length(), 3u);
}

TEST(Extract, MustStartWithNoun) {
  EXPECT_TRUE(extract_candidates(parse_tagged_corpus("A/A B/N", kMap)).empty());
}

TEST(Extract, NestedMatchesAreAllReported) {
  const auto occs = extract_candidates(parse_tagged_corpus("A/N B/N C/N", kMap), 3);
  // ordered by start, then length
  EXPECT_EQ(surfaces(occs), (std::vector<std::string>{"A B", "A B C", "B C"}));
  EXPECT_EQ(oracle::slice_ids(occs), oracle::brute_force_slices(parse_tagged_corpus("A/N B/N C/N", kMap), 3));
}

TEST(Extract, PatternsDoNotCompose) {
  // Noun Adj Prep Noun: only the P1 bigram, no 4-token match
  const auto occs = extract_candidates(parse_tagged_corpus("A/N B/A P/P C/N", kMap), 4);
  EXPECT_EQ(surfaces(occs), (std::vector<std::string>{"A B"}));
}

TEST(Extract, PrepositionPatternNeedsLengthThree) {
  const auto c = parse_tagged_corpus("A/N P/P C/N", kMap);
  EXPECT_TRUE(extract_candidates(c, 2).empty());
  EXPECT_EQ(extract_candidates(c, 3).size(), 1u);
}

TEST(Extract, NeverCrossesSentences) {
  const auto occs = extract_candidates(parse_tagged_corpus("A/N\nB/N\nC/N D/N", kMap));
  ASSERT_EQ(occs.size(), 1u);
  EXPECT_EQ(occs[0].surface(), "C D");
}

TEST(Extract, RejectsShortLMax) {
  EXPECT_THROW(extract_candidates(Corpus{}, 1), std::invalid_argument);
  EXPECT_TRUE(extract_candidates(Corpus{}, 3).empty());
}

TEST(ExtractProperty, MatchesBruteForceAndIsMonotoneInLMax) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto c = oracle::random_corpus(rng, 50);
    std::vector<oracle::SliceId> previous;
    for (std::size_t l_max = 2; l_max <= 5; ++l_max) {
      const auto ids = oracle::slice_ids(extract_candidates(c, l_max));
      ASSERT_EQ(ids, oracle::brute_force_slices(c, l_max)) << "l_max=" << l_max;
      ASSERT_TRUE(std::includes(ids.begin(), ids.end(), previous.begin(), previous.end()));
      previous = ids;
    }
  }
}

TEST(ExtractProperty, ThreadCountDoesNotChangeOutput) {
  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto c = oracle::random_corpus(rng, 400);
    EXPECT_EQ(extract_candidates(c, 3, 1), extract_candidates(c, 3, 4));
  }
}

}  // namespace
}  // namespace mwt
