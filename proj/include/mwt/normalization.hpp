#pragma once

// Term variation handling: graphical normalization, light stemming, merging
// of occurrences into stem-keyed candidate terms, and syntactic variant
// (extension) lookup.

#include <algorithm>
#include <array>
#include <cstddef>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mwt/linguistic_filter.hpp"
#include "mwt/utf8.hpp"

namespace mwt {

namespace arabic {
inline constexpr char32_t kAlef = U'ا';
inline constexpr char32_t kAlefHamzaAbove = U'أ';
inline constexpr char32_t kAlefHamzaBelow = U'إ';
inline constexpr char32_t kAlefMadda = U'آ';
inline constexpr char32_t kAlefMaksura = U'ى';
inline constexpr char32_t kYeh = U'ي';
inline constexpr char32_t kTehMarbuta = U'ة';
inline constexpr char32_t kHeh = U'ه';
inline constexpr char32_t kTatweel = U'\u0640';

// Tashkeel (fathatan..sukun) and superscript alef.
inline bool is_diacritic(char32_t c) { return (c >= U'\u064B' && c <= U'\u0652') || c == U'\u0670'; }
}  // namespace arabic

inline std::u32string normalize_graphical(std::u32string_view word) {
  using namespace arabic;
  std::u32string out;
  out.reserve(word.size());
  for (char32_t c : word) {
    if (is_diacritic(c) || c == kTatweel) continue;
    if (c == kAlefHamzaAbove || c == kAlefHamzaBelow || c == kAlefMadda) c = kAlef;
    out.push_back(c);
  }
  if (!out.empty()) {
    if (out.back() == kAlefMaksura) out.back() = kYeh;
    else if (out.back() == kTehMarbuta) out.back() = kHeh;
  }
  return out;
}

inline std::string normalize_graphical(std::string_view word) {
  return utf8::encode(normalize_graphical(utf8::decode(word)));
}

namespace detail {

// Longest first within each list.
inline const std::array<std::u32string_view, 7> kPrefixes = {
    U"وال",
    U"فال",
    U"بال",
    U"كال",
    U"ال",
    U"لل",
    U"و",
};

inline const std::array<std::u32string_view, 9> kSuffixes = {
    U"ها",
    U"ان",
    U"ات",
    U"ون",
    U"ين",
    U"يه",
    U"ية",
    U"ه",
    U"ي",
};

inline constexpr std::size_t kMinAfterPrefix = 2;
inline constexpr std::size_t kMinAfterSuffix = 3;

}  // namespace detail

// One prefix (remainder >= 2 chars), then one suffix (remainder >= 3 chars).
// Expects graphically normalized input.
inline std::u32string light_stem(std::u32string_view word) {
  std::u32string_view w = word;
  for (auto p : detail::kPrefixes) {
    if (w.size() >= p.size() + detail::kMinAfterPrefix && w.starts_with(p)) {
      w.remove_prefix(p.size());
      break;
    }
  }
  for (auto s : detail::kSuffixes) {
    if (w.size() >= s.size() + detail::kMinAfterSuffix && w.ends_with(s)) {
      w.remove_suffix(s.size());
      break;
    }
  }
  return std::u32string(w);
}

inline std::string light_stem(std::string_view word) { return utf8::encode(light_stem(utf8::decode(word))); }

// normalize_graphical followed by light_stem. A word made only of
// diacritics/tatweel keeps its raw form so that stems are never empty.
inline std::string stem_word(std::string_view surface) {
  const auto decoded = utf8::decode(surface);
  auto norm = normalize_graphical(std::u32string_view(decoded));
  if (norm.empty()) return std::string(surface);
  return utf8::encode(light_stem(std::u32string_view(norm)));
}

struct StemKey {
  std::vector<std::string> stems;

  std::size_t size() const noexcept { return stems.size(); }
  bool empty() const noexcept { return stems.empty(); }
  const std::string& operator[](std::size_t i) const { return stems[i]; }

  // Position of the first contiguous occurrence of `inner` inside this key.
  std::optional<std::size_t> find(const StemKey& inner) const {
    if (inner.empty() || inner.size() > size()) return std::nullopt;
    auto it = std::search(stems.begin(), stems.end(), inner.stems.begin(), inner.stems.end());
    if (it == stems.end()) return std::nullopt;
    return static_cast<std::size_t>(it - stems.begin());
  }

  // Strict contiguous containment: `inner` is shorter and appears inside.
  bool strictly_contains(const StemKey& inner) const {
    return inner.size() < size() && find(inner).has_value();
  }

  bool has_stem(std::string_view s) const {
    return std::find(stems.begin(), stems.end(), s) != stems.end();
  }

  std::string str() const {
    std::string out;
    for (const auto& s : stems) {
      if (!out.empty()) out.push_back(' ');
      out += s;
    }
    return out;
  }

  friend auto operator<=>(const StemKey&, const StemKey&) = default;
  friend bool operator==(const StemKey&, const StemKey&) = default;
};

struct OccurrenceRef {
  std::size_t sentence = 0;
  std::size_t start = 0;
  std::size_t length = 0;

  friend auto operator<=>(const OccurrenceRef&, const OccurrenceRef&) = default;
};

struct CandidateTerm {
  StemKey key;
  std::map<std::string, std::size_t> surfaces;  // surface form -> count
  std::size_t f = 0;
  std::set<PatternId> patterns;
  std::vector<OccurrenceRef> occurrences;

  std::size_t length() const noexcept { return key.size(); }

  // Most frequent surface, lexicographically smallest among ties.
  const std::string& sample_surface() const {
    static const std::string kNone;
    auto best = surfaces.end();
    for (auto it = surfaces.begin(); it != surfaces.end(); ++it)
      if (best == surfaces.end() || it->second > best->second) best = it;
    return best == surfaces.end() ? kNone : best->first;
  }
};

inline StemKey candidate_key(const CandidateOccurrence& occ) {
  StemKey key;
  for (const auto& tok : occ.tokens) {
    if (tok.pos == PosCategory::Preposition) continue;
    key.stems.push_back(stem_word(tok.surface));
  }
  if (key.empty()) throw std::logic_error("candidate consists only of prepositions: " + occ.surface());
  return key;
}

// Merges occurrences with equal keys; output is sorted by key.
inline std::vector<CandidateTerm> group_variants(const std::vector<CandidateOccurrence>& occs) {
  std::map<StemKey, CandidateTerm> merged;
  for (const auto& occ : occs) {
    auto key = candidate_key(occ);
    auto& term = merged[key];
    if (term.key.empty()) term.key = std::move(key);
    ++term.f;
    ++term.surfaces[occ.surface()];
    term.patterns.insert(occ.pattern);
    term.occurrences.push_back({occ.sentence, occ.start_idx, occ.tokens.size()});
  }
  std::vector<CandidateTerm> out;
  out.reserve(merged.size());
  for (auto& [key, term] : merged) {
    std::sort(term.occurrences.begin(), term.occurrences.end());
    out.push_back(std::move(term));
  }
  return out;
}

struct SyntacticVariant {
  std::size_t term = 0;  // index into the candidate list
  std::vector<std::string> added_stems;
};

// The stems of `outer` left over once the first contiguous copy of `inner`
// is removed.
inline std::vector<std::string> added_stems(const StemKey& outer, const StemKey& inner) {
  std::vector<std::string> added;
  const auto pos = outer.find(inner);
  if (!pos) return added;
  for (std::size_t i = 0; i < outer.size(); ++i)
    if (i < *pos || i >= *pos + inner.size()) added.push_back(outer[i]);
  return added;
}

inline std::vector<SyntacticVariant> find_syntactic_variants(const CandidateTerm& a,
                                                             const std::vector<CandidateTerm>& all) {
  std::vector<SyntacticVariant> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].key.strictly_contains(a.key)) out.push_back({i, added_stems(all[i].key, a.key)});
  }
  return out;
}

}  // namespace mwt
