#pragma once

// Brute-force reference implementations and random input generators used by
// the unit and acceptance suites. Nothing here calls the code paths it
// checks: predicates, containment and counting are re-derived from scratch.

#include <algorithm>
#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "mwt/corpus.hpp"
#include "mwt/linguistic_filter.hpp"
#include "mwt/normalization.hpp"

namespace mwt::oracle {

// (doc, sent, start, length, pattern) tuples of every slice of length
// 2..l_max that satisfies a pattern predicate.
using SliceId = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, int>;

inline std::vector<SliceId> brute_force_slices(const Corpus& corpus, std::size_t l_max) {
  auto noun = [](const TaggedToken& t) { return t.pos == PosCategory::Noun; };
  auto noun_or_adj = [](const TaggedToken& t) {
    return t.pos == PosCategory::Noun || t.pos == PosCategory::Adjective;
  };
  std::vector<SliceId> out;
  for (const auto& s : corpus.sentences) {
    for (std::size_t start = 0; start < s.size(); ++start) {
      for (std::size_t len = 2; len <= l_max && start + len <= s.size(); ++len) {
        bool p1 = noun(s[start]);
        for (std::size_t k = 1; k < len; ++k) p1 = p1 && noun_or_adj(s[start + k]);
        const bool p2 = len == 3 && noun(s[start]) && s[start + 1].pos == PosCategory::Preposition &&
                        noun(s[start + 2]);
        if (p1) out.emplace_back(s[start].doc_id, s[start].sent_idx, start, len, 1);
        if (p2) out.emplace_back(s[start].doc_id, s[start].sent_idx, start, len, 2);
      }
    }
  }
  return out;
}

inline std::vector<SliceId> slice_ids(const std::vector<CandidateOccurrence>& occs) {
  std::vector<SliceId> out;
  for (const auto& o : occs)
    out.emplace_back(o.doc_id, o.sent_idx, o.start_idx, o.length(), static_cast<int>(o.pattern));
  return out;
}

// Contiguous containment by explicit index comparison.
inline bool contains_contiguous(const std::vector<std::string>& outer, const std::vector<std::string>& inner) {
  if (inner.empty() || inner.size() > outer.size()) return false;
  for (std::size_t s = 0; s + inner.size() <= outer.size(); ++s) {
    bool ok = true;
    for (std::size_t k = 0; k < inner.size() && ok; ++k) ok = outer[s + k] == inner[k];
    if (ok) return true;
  }
  return false;
}

inline std::vector<std::vector<std::size_t>> brute_force_nesting(const std::vector<CandidateTerm>& terms) {
  std::vector<std::vector<std::size_t>> out(terms.size());
  for (std::size_t a = 0; a < terms.size(); ++a)
    for (std::size_t b = 0; b < terms.size(); ++b)
      if (terms[b].key.size() > terms[a].key.size() && contains_contiguous(terms[b].key.stems, terms[a].key.stems))
        out[a].push_back(b);
  return out;
}

inline CandidateTerm make_term(std::vector<std::string> stems, std::size_t f) {
  CandidateTerm t;
  t.key.stems = std::move(stems);
  t.f = f;
  return t;
}

// Random tagged corpus over a tiny vocabulary so that repeats, nesting and
// every pattern shape occur often.
inline Corpus random_corpus(std::mt19937& rng, std::size_t max_tokens) {
  static const std::vector<std::pair<std::string, std::string>> vocab = {
      {"تلوث", "NN"},   {"الهواء", "DTNN"}, {"المياه", "DTNN"}, {"مياه", "NN"},  {"الكيميائي", "DTJJ"},
      {"خطير", "JJ"},   {"من", "IN"},       {"في", "IN"},       {"النفط", "DTNN"}, {"برميل", "NN"},
      {"يهدد", "VBP"},  {"./", "PUNC"},     {"و", "CC"},        {"نفطي", "JJ"},  {"المدن", "DTNNS"},
  };
  std::uniform_int_distribution<std::size_t> total_dist(0, max_tokens);
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  std::uniform_int_distribution<std::size_t> sent_len(1, 12);
  std::bernoulli_distribution new_doc(0.2);

  const auto map = TagsetMap::arabic_treebank();
  std::size_t remaining = total_dist(rng);
  std::string text;
  while (remaining > 0) {
    const std::size_t len = std::min(remaining, sent_len(rng));
    for (std::size_t i = 0; i < len; ++i) {
      const auto& [w, tag] = vocab[word(rng)];
      if (i) text += ' ';
      text += w + "/" + tag;
    }
    text += '\n';
    if (new_doc(rng)) text += '\n';
    remaining -= len;
  }
  return parse_tagged_corpus(text, map);
}

// Random distinct stem keys of length 2..max_len over a small alphabet.
inline std::vector<CandidateTerm> random_terms(std::mt19937& rng, std::size_t count, std::size_t alphabet,
                                               std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(2, max_len);
  std::uniform_int_distribution<std::size_t> sym(0, alphabet - 1);
  std::uniform_int_distribution<std::size_t> freq(1, 9);
  std::set<std::vector<std::string>> seen;
  std::vector<CandidateTerm> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts++ < count * 50) {
    std::vector<std::string> stems(len_dist(rng));
    for (auto& s : stems) s = "w" + std::to_string(sym(rng));
    if (seen.insert(stems).second) out.push_back(make_term(stems, freq(rng)));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return out;
}

}  // namespace mwt::oracle
