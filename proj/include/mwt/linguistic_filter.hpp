#pragma once

// Candidate extraction by syntactic pattern.
//
//   P1  Noun (Noun|Adjective)+      total length 2..l_max
//   P2  Noun Preposition Noun       length 3 (requires l_max >= 3)
//
// Every matching contiguous slice is reported, so nested sub-matches appear
// alongside the longer match that contains them.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mwt/corpus.hpp"
#include "mwt/parallel.hpp"

namespace mwt {

enum class PatternId { P1 = 1, P2 = 2 };

inline std::string_view to_string(PatternId p) { return p == PatternId::P1 ? "P1" : "P2"; }

struct CandidateOccurrence {
  std::vector<TaggedToken> tokens;
  PatternId pattern = PatternId::P1;
  std::size_t sentence = 0;  // index into Corpus::sentences
  std::size_t doc_id = 0;
  std::size_t sent_idx = 0;
  std::size_t start_idx = 0;

  std::size_t length() const noexcept { return tokens.size(); }

  std::string surface() const {
    std::string out;
    for (const auto& t : tokens) {
      if (!out.empty()) out.push_back(' ');
      out += t.surface;
    }
    return out;
  }

  friend bool operator==(const CandidateOccurrence&, const CandidateOccurrence&) = default;
};

inline bool occurrence_order(const CandidateOccurrence& a, const CandidateOccurrence& b) {
  return std::forward_as_tuple(a.doc_id, a.sent_idx, a.start_idx, a.tokens.size(), a.pattern) <
         std::forward_as_tuple(b.doc_id, b.sent_idx, b.start_idx, b.tokens.size(), b.pattern);
}

inline bool matches_p1(std::span<const TaggedToken> slice) {
  if (slice.size() < 2 || slice.front().pos != PosCategory::Noun) return false;
  for (std::size_t i = 1; i < slice.size(); ++i) {
    if (slice[i].pos != PosCategory::Noun && slice[i].pos != PosCategory::Adjective) return false;
  }
  return true;
}

inline bool matches_p2(std::span<const TaggedToken> slice) {
  return slice.size() == 3 && slice[0].pos == PosCategory::Noun &&
         slice[1].pos == PosCategory::Preposition && slice[2].pos == PosCategory::Noun;
}

// Matches within one sentence, already in (start, length, pattern) order.
inline std::vector<CandidateOccurrence> extract_from_sentence(const Sentence& sentence,
                                                              std::size_t sentence_index,
                                                              std::size_t l_max) {
  std::vector<CandidateOccurrence> out;
  const std::span<const TaggedToken> toks(sentence);

  auto emit = [&](std::size_t start, std::size_t len, PatternId p) {
    CandidateOccurrence occ;
    occ.tokens.assign(toks.begin() + start, toks.begin() + start + len);
    occ.pattern = p;
    occ.sentence = sentence_index;
    occ.doc_id = toks[start].doc_id;
    occ.sent_idx = toks[start].sent_idx;
    occ.start_idx = toks[start].tok_idx;
    out.push_back(std::move(occ));
  };

  for (std::size_t start = 0; start < toks.size(); ++start) {
    if (toks[start].pos != PosCategory::Noun) continue;
    // P1 and P2 never match the same slice (P2 has a preposition inside),
    // so per-length emission keeps the required ordering.
    std::size_t p1_end = start + 1;
    while (p1_end < toks.size() && p1_end - start < l_max &&
           (toks[p1_end].pos == PosCategory::Noun || toks[p1_end].pos == PosCategory::Adjective))
      ++p1_end;
    for (std::size_t len = 2; len <= l_max && start + len <= toks.size(); ++len) {
      if (start + len <= p1_end) emit(start, len, PatternId::P1);
      if (len == 3 && matches_p2(toks.subspan(start, 3))) emit(start, len, PatternId::P2);
    }
  }
  return out;
}

inline std::vector<CandidateOccurrence> extract_candidates(const Corpus& corpus, std::size_t l_max = 3,
                                                           std::size_t threads = 1) {
  if (l_max < 2) throw std::invalid_argument("l_max must be at least 2");
  std::vector<std::vector<CandidateOccurrence>> per_sentence(corpus.sentences.size());
  detail::parallel_for(corpus.sentences.size(), threads, [&](std::size_t i) {
    per_sentence[i] = extract_from_sentence(corpus.sentences[i], i, l_max);
  });

  std::size_t total = 0;
  for (const auto& v : per_sentence) total += v.size();
  std::vector<CandidateOccurrence> out;
  out.reserve(total);
  for (auto& v : per_sentence)
    for (auto& occ : v) out.push_back(std::move(occ));
  // Sentences are stored in (doc_id, sent_idx) order, so concatenation is
  // already sorted.
  return out;
}

}  // namespace mwt
