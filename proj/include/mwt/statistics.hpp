#pragma once

// Global count structures shared by the association measures.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mwt/corpus.hpp"
#include "mwt/normalization.hpp"

namespace mwt {

// Stem of every corpus token, same shape as Corpus::sentences.
using StemmedCorpus = std::vector<std::vector<std::string>>;

inline StemmedCorpus stem_corpus(const Corpus& corpus) {
  StemmedCorpus out;
  out.reserve(corpus.sentences.size());
  for (const auto& sentence : corpus.sentences) {
    std::vector<std::string> stems;
    stems.reserve(sentence.size());
    for (const auto& tok : sentence) stems.push_back(stem_word(tok.surface));
    out.push_back(std::move(stems));
  }
  return out;
}

// containers[a] = T_a, the indices of strictly longer candidates whose key
// contains the key of a contiguously. Indices are ascending.
struct NestingIndex {
  std::vector<std::vector<std::size_t>> containers;

  const std::vector<std::size_t>& of(std::size_t term) const { return containers.at(term); }
  bool nested(std::size_t term) const { return !containers.at(term).empty(); }
};

inline NestingIndex build_nesting_index(const std::vector<CandidateTerm>& terms) {
  std::map<StemKey, std::size_t> by_key;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!by_key.emplace(terms[i].key, i).second)
      throw std::invalid_argument("duplicate candidate key: " + terms[i].key.str());
  }

  NestingIndex idx;
  idx.containers.resize(terms.size());
  StemKey probe;
  for (std::size_t b = 0; b < terms.size(); ++b) {
    const auto& stems = terms[b].key.stems;
    for (std::size_t len = 1; len < stems.size(); ++len) {
      for (std::size_t start = 0; start + len <= stems.size(); ++start) {
        probe.stems.assign(stems.begin() + start, stems.begin() + start + len);
        auto it = by_key.find(probe);
        if (it == by_key.end()) continue;
        auto& list = idx.containers[it->second];
        // b is visited in ascending order; a repeated sub-key inside b must
        // only be recorded once.
        if (list.empty() || list.back() != b) list.push_back(b);
      }
    }
  }
  return idx;
}

struct ContextProfile {
  // per candidate: context stem -> f_a(b)
  std::vector<std::map<std::string, std::size_t>> context;
  // context stem -> t(b), the number of candidates having b in context
  std::map<std::string, std::size_t> spread;
  // total number of candidate terms
  std::size_t n = 0;

  std::size_t t(const std::string& stem) const {
    auto it = spread.find(stem);
    return it == spread.end() ? 0 : it->second;
  }
};

inline bool is_context_category(PosCategory c) {
  return c == PosCategory::Noun || c == PosCategory::Adjective || c == PosCategory::Verb;
}

inline ContextProfile build_context_profiles(const Corpus& corpus, const StemmedCorpus& stems,
                                             const std::vector<CandidateTerm>& terms,
                                             const NestingIndex& nesting, std::size_t window = 5) {
  if (window < 1) throw std::invalid_argument("context window must be at least 1");
  ContextProfile profile;
  profile.n = terms.size();
  profile.context.resize(terms.size());

  for (std::size_t a = 0; a < terms.size(); ++a) {
    auto& ctx = profile.context[a];
    for (const auto& occ : terms[a].occurrences) {
      const auto& sentence = corpus.sentences.at(occ.sentence);
      const auto& sstems = stems.at(occ.sentence);
      const std::size_t lo = occ.start >= window ? occ.start - window : 0;
      const std::size_t end = occ.start + occ.length;
      const std::size_t hi = std::min(sentence.size(), end + window);
      for (std::size_t i = lo; i < hi; ++i) {
        if (i >= occ.start && i < end) continue;
        if (is_context_category(sentence[i].pos)) ++ctx[sstems[i]];
      }
    }
    // Words a longer candidate adds to this one count as context, once per
    // occurrence of that longer candidate.
    for (std::size_t b : nesting.of(a)) {
      for (auto& stem : added_stems(terms[b].key, terms[a].key)) ctx[stem] += terms[b].f;
    }
  }

  for (const auto& ctx : profile.context)
    for (const auto& [stem, count] : ctx) ++profile.spread[stem];
  return profile;
}

inline ContextProfile build_context_profiles(const Corpus& corpus, const std::vector<CandidateTerm>& terms,
                                             std::size_t window = 5) {
  return build_context_profiles(corpus, stem_corpus(corpus), terms, build_nesting_index(terms), window);
}

// Unigram and adjacent-pair counts over token stems. Pairs never cross a
// sentence boundary, so the pair total is N_w minus the sentence count.
class BigramStats {
 public:
  BigramStats() = default;

  double p(const std::string& w) const {
    auto it = unigrams_.find(w);
    return it == unigrams_.end() || tokens_ == 0 ? 0.0
                                                  : static_cast<double>(it->second) / static_cast<double>(tokens_);
  }

  double p(const std::string& wi, const std::string& wj) const {
    if (pair_total_ == 0) return 0.0;
    auto it = pairs_.find({wi, wj});
    return it == pairs_.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(pair_total_);
  }

  std::size_t token_count() const noexcept { return tokens_; }
  std::size_t pair_total() const noexcept { return pair_total_; }
  std::size_t count(const std::string& w) const {
    auto it = unigrams_.find(w);
    return it == unigrams_.end() ? 0 : it->second;
  }
  std::size_t count(const std::string& wi, const std::string& wj) const {
    auto it = pairs_.find({wi, wj});
    return it == pairs_.end() ? 0 : it->second;
  }
  const std::map<std::string, std::size_t>& unigrams() const noexcept { return unigrams_; }

  void add_sentence(const std::vector<std::string>& sentence) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      ++unigrams_[sentence[i]];
      if (i + 1 < sentence.size()) ++pairs_[{sentence[i], sentence[i + 1]}];
    }
    tokens_ += sentence.size();
    if (!sentence.empty()) pair_total_ += sentence.size() - 1;
  }

  // Counts are additive, so shards can be merged in any order.
  void merge(const BigramStats& other) {
    for (const auto& [w, c] : other.unigrams_) unigrams_[w] += c;
    for (const auto& [pr, c] : other.pairs_) pairs_[pr] += c;
    tokens_ += other.tokens_;
    pair_total_ += other.pair_total_;
  }

 private:
  std::map<std::string, std::size_t> unigrams_;
  std::map<std::pair<std::string, std::string>, std::size_t> pairs_;
  std::size_t tokens_ = 0;
  std::size_t pair_total_ = 0;
};

inline BigramStats build_bigram_stats(const StemmedCorpus& stems) {
  BigramStats bs;
  for (const auto& s : stems) bs.add_sentence(s);
  if (bs.token_count() == 0) throw std::invalid_argument("bigram statistics need a non-empty corpus");
  return bs;
}

inline BigramStats build_bigram_stats(const Corpus& corpus) { return build_bigram_stats(stem_corpus(corpus)); }

struct ContingencyTable {
  std::size_t a = 0;  // terms containing both stems
  std::size_t b = 0;  // first stem only
  std::size_t c = 0;  // second stem only
  std::size_t d = 0;  // neither

  std::size_t total() const noexcept { return a + b + c + d; }
  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

// Counts over candidate terms, not corpus positions.
inline ContingencyTable build_contingency(const std::string& wi, const std::string& wj,
                                          const std::vector<CandidateTerm>& terms) {
  ContingencyTable t;
  for (const auto& term : terms) {
    const bool has_i = term.key.has_stem(wi);
    const bool has_j = term.key.has_stem(wj);
    if (has_i && has_j) ++t.a;
    else if (has_i) ++t.b;
    else if (has_j) ++t.c;
    else ++t.d;
  }
  return t;
}

// stem -> ascending indices of the candidates whose key contains it.
// Answers contingency queries with one sorted intersection.
class TermStemIndex {
 public:
  explicit TermStemIndex(const std::vector<CandidateTerm>& terms) : n_(terms.size()) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (const auto& s : terms[i].key.stems) {
        auto& list = postings_[s];
        if (list.empty() || list.back() != i) list.push_back(i);
      }
    }
  }

  ContingencyTable table(const std::string& wi, const std::string& wj) const {
    const auto& pi = postings(wi);
    const auto& pj = postings(wj);
    std::size_t both = 0;
    if (wi == wj) {
      both = pi.size();
    } else {
      auto x = pi.begin();
      auto y = pj.begin();
      while (x != pi.end() && y != pj.end()) {
        if (*x < *y) ++x;
        else if (*y < *x) ++y;
        else { ++both; ++x; ++y; }
      }
    }
    ContingencyTable t;
    t.a = both;
    t.b = pi.size() - both;
    t.c = pj.size() - both;
    t.d = n_ - t.a - t.b - t.c;
    return t;
  }

  std::size_t size() const noexcept { return n_; }

 private:
  const std::vector<std::size_t>& postings(const std::string& s) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = postings_.find(s);
    return it == postings_.end() ? kEmpty : it->second;
  }

  std::map<std::string, std::vector<std::size_t>> postings_;
  std::size_t n_ = 0;
};

}  // namespace mwt
