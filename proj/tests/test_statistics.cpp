#include <gtest/gtest.h>

#include <random>

#include "mwt/linguistic_filter.hpp"
#include "mwt/statistics.hpp"
#include "oracles.hpp"

namespace mwt {
namespace {

using oracle::make_term;

const TagsetMap kMap{{"N", PosCategory::Noun},
                     {"A", PosCategory::Adjective},
                     {"P", PosCategory::Preposition},
                     {"V", PosCategory::Verb}};

TEST(Nesting, LongerContainerOnly) {
  const std::vector<CandidateTerm> terms = {make_term({"X", "Y"}, 5), make_term({"X", "Y", "Z"}, 2)};
  const auto idx = build_nesting_index(terms);
  EXPECT_EQ(idx.of(0), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(idx.of(1).empty());
}

TEST(Nesting, SingleTerm) {
  EXPECT_TRUE(build_nesting_index({make_term({"X", "Y"}, 1)}).of(0).empty());
}

TEST(Nesting, SharedContainer) {
  const std::vector<CandidateTerm> terms = {make_term({"X", "Y"}, 1), make_term({"X", "Y", "Z"}, 1),
                                            make_term({"Y", "Z"}, 1)};
  const auto idx = build_nesting_index(terms);
  EXPECT_EQ(idx.of(0), (std::vector<std::size_t>{1}));
  EXPECT_EQ(idx.of(2), (std::vector<std::size_t>{1}));
}

TEST(Nesting, RepeatedSubKeyCountedOnce) {
  const std::vector<CandidateTerm> terms = {make_term({"X", "Y"}, 1), make_term({"X", "Y", "X", "Y"}, 1)};
  EXPECT_EQ(build_nesting_index(terms).of(0), (std::vector<std::size_t>{1}));
}

TEST(Nesting, DuplicateKeysRejected) {
  EXPECT_THROW(build_nesting_index({make_term({"X", "Y"}, 1), make_term({"X", "Y"}, 2)}), std::invalid_argument);
}

TEST(NestingProperty, EqualsPairwiseBruteForce) {
  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    const auto terms = oracle::random_terms(rng, 200, 5, 5);
    const auto idx = build_nesting_index(terms);
    ASSERT_EQ(idx.containers, oracle::brute_force_nesting(terms));
    for (std::size_t a = 0; a < terms.size(); ++a)
      for (auto b : idx.of(a)) {
        EXPECT_NE(a, b);
        EXPECT_GT(terms[b].length(), terms[a].length());
      }
  }
}

TEST(Context, WindowKeepsContentCategories) {
  const auto c = parse_tagged_corpus("big/A X/N Y/N now/O", kMap);
  const auto terms = group_variants(extract_candidates(c));
  ASSERT_EQ(terms.size(), 1u);
  const auto profile = build_context_profiles(c, terms, 5);
  EXPECT_EQ(profile.context[0], (std::map<std::string, std::size_t>{{"big", 1}}));
  EXPECT_EQ(profile.n, 1u);
  EXPECT_EQ(profile.t("big"), 1u);
}

TEST(Context, WindowIsBounded) {
  const auto c = parse_tagged_corpus("far/V a/V b/V X/N Y/N c/V d/V far2/V", kMap);
  const auto terms = group_variants(extract_candidates(c));
  const auto profile = build_context_profiles(c, terms, 2);
  EXPECT_EQ(profile.context[0], (std::map<std::string, std::size_t>{{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}));
}

TEST(Context, WholeSentenceCandidateHasNoWindowContext) {
  const auto c = parse_tagged_corpus("X/N Y/N\n", kMap);
  const auto terms = group_variants(extract_candidates(c));
  EXPECT_TRUE(build_context_profiles(c, terms, 5).context[0].empty());
}

TEST(Context, SyntacticVariantAdditionsCount) {
  const auto c = parse_tagged_corpus("X/N Y/N W/N\nX/N Y/N W/N\n", kMap);
  const auto terms = group_variants(extract_candidates(c));
  // keys: (X,Y), (X,Y,W), (Y,W)
  std::size_t xy = terms.size();
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (terms[i].key.stems == std::vector<std::string>{"X", "Y"}) xy = i;
  ASSERT_LT(xy, terms.size());
  const auto profile = build_context_profiles(c, terms, 5);
  // two from the window, two from the variant (X,Y,W) with f = 2
  EXPECT_EQ(profile.context[xy].at("W"), 4u);
}

TEST(ContextProperty, SpreadCountsCandidates) {
  std::mt19937 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto c = oracle::random_corpus(rng, 120);
    const auto terms = group_variants(extract_candidates(c));
    if (terms.empty()) continue;
    const auto profile = build_context_profiles(c, terms, 5);
    std::map<std::string, std::size_t> spread;
    for (const auto& ctx : profile.context)
      for (const auto& [stem, count] : ctx) {
        EXPECT_GE(count, 1u);
        ++spread[stem];
      }
    EXPECT_EQ(spread, profile.spread);
    for (const auto& [stem, t] : profile.spread) EXPECT_LE(t, profile.n);

    // reversing sentence order changes no count
    Corpus reversed = c;
    std::reverse(reversed.sentences.begin(), reversed.sentences.end());
    const auto rterms = group_variants(extract_candidates(reversed));
    EXPECT_EQ(build_context_profiles(reversed, rterms, 5).context, profile.context);
  }
}

TEST(Bigrams, Probabilities) {
  // 100 tokens in one sentence: A B appears 4 times, A and B 10 times each
  std::vector<std::string> s;
  for (int i = 0; i < 4; ++i) s.insert(s.end(), {"A", "B"});
  for (int i = 0; i < 6; ++i) s.insert(s.end(), {"A", "x"});
  for (int i = 0; i < 6; ++i) s.insert(s.end(), {"y", "B"});
  while (s.size() < 100) s.push_back("z");
  const auto bs = build_bigram_stats(StemmedCorpus{s});
  EXPECT_EQ(bs.token_count(), 100u);
  EXPECT_EQ(bs.pair_total(), 99u);
  EXPECT_DOUBLE_EQ(bs.p("A", "B"), 4.0 / 99.0);
  EXPECT_DOUBLE_EQ(bs.p("A"), 0.1);
  EXPECT_DOUBLE_EQ(bs.p("B"), 0.1);
}

TEST(Bigrams, TwoTokenCorpus) {
  const auto bs = build_bigram_stats(parse_tagged_corpus("A/N B/N", kMap));
  EXPECT_DOUBLE_EQ(bs.p("A", "B"), 1.0);
  EXPECT_DOUBLE_EQ(bs.p("B", "A"), 0.0);
}

TEST(Bigrams, PairsDoNotCrossSentences) {
  const auto bs = build_bigram_stats(parse_tagged_corpus("A/N\nB/N C/N", kMap));
  EXPECT_EQ(bs.pair_total(), 1u);
  EXPECT_EQ(bs.count("A", "B"), 0u);
}

TEST(Bigrams, ComparedByStem) {
  const auto bs = build_bigram_stats(parse_tagged_corpus("تلوث/N المياه/N\nتلوث/N مياه/N", kMap));
  EXPECT_EQ(bs.count("تلوث", "ميا"), 2u);
}

TEST(Bigrams, EmptyCorpusIsAnError) { EXPECT_THROW(build_bigram_stats(Corpus{}), std::invalid_argument); }

TEST(BigramsProperty, ProbabilitiesAreConsistent) {
  std::mt19937 rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto c = oracle::random_corpus(rng, 200);
    if (c.empty()) continue;
    const auto bs = build_bigram_stats(c);
    double total = 0;
    for (const auto& [w, n] : bs.unigrams()) total += bs.p(w);
    EXPECT_NEAR(total, 1.0, 1e-12);

    BigramStats halves;
    const auto stems = stem_corpus(c);
    BigramStats first, second;
    for (std::size_t s = 0; s < stems.size(); ++s) (s % 2 ? second : first).add_sentence(stems[s]);
    halves.merge(second);
    halves.merge(first);
    for (const auto& [w, n] : bs.unigrams()) EXPECT_EQ(halves.count(w), n);
  }
}

TEST(Contingency, CountsOverTerms) {
  const std::vector<CandidateTerm> terms = {make_term({"X", "Y"}, 1), make_term({"X", "Z"}, 1),
                                            make_term({"Q", "R"}, 1)};
  EXPECT_EQ(build_contingency("X", "Y", terms), (ContingencyTable{1, 1, 0, 1}));
  EXPECT_EQ(build_contingency("A", "B", terms), (ContingencyTable{0, 0, 0, 3}));
  EXPECT_EQ(build_contingency("X", "X", {make_term({"X", "Y"}, 1)}), (ContingencyTable{1, 0, 0, 0}));
}

TEST(ContingencyProperty, IndexAgreesWithScanAndSumsToN) {
  std::mt19937 rng(9);
  for (int i = 0; i < 30; ++i) {
    const auto terms = oracle::random_terms(rng, 80, 6, 4);
    const TermStemIndex idx(terms);
    for (int x = 0; x < 7; ++x)
      for (int y = 0; y < 7; ++y) {
        const auto wi = "w" + std::to_string(x);
        const auto wj = "w" + std::to_string(y);
        const auto t = idx.table(wi, wj);
        ASSERT_EQ(t, build_contingency(wi, wj, terms));
        ASSERT_EQ(t.total(), terms.size());
      }
  }
}

}  // namespace
}  // namespace mwt
