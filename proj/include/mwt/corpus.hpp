#pragma once

// Tagged corpus model and the `surface/TAG` reader.
//
// Format: one sentence per line, whitespace-separated `surface/TAG` items.
// The tag is whatever follows the last '/' of an item. A blank line closes
// the current document; the next non-blank line opens document doc_id + 1.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mwt/utf8.hpp"

namespace mwt {

enum class PosCategory { Noun, Adjective, Preposition, Verb, Other };

inline std::string_view to_string(PosCategory c) {
  switch (c) {
    case PosCategory::Noun: return "noun";
    case PosCategory::Adjective: return "adjective";
    case PosCategory::Preposition: return "preposition";
    case PosCategory::Verb: return "verb";
    case PosCategory::Other: return "other";
  }
  return "other";
}

// Accepts the long names above plus the short forms used in config files
// (n, adj, prep, v). Case-insensitive.
inline std::optional<PosCategory> parse_category(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (s == "noun" || s == "n") return PosCategory::Noun;
  if (s == "adjective" || s == "adj") return PosCategory::Adjective;
  if (s == "preposition" || s == "prep") return PosCategory::Preposition;
  if (s == "verb" || s == "v") return PosCategory::Verb;
  if (s == "other") return PosCategory::Other;
  return std::nullopt;
}

struct TaggedToken {
  std::string surface;
  std::string tag;  // raw tag as read, kept for round-tripping
  PosCategory pos = PosCategory::Other;
  std::size_t doc_id = 0;
  std::size_t sent_idx = 0;
  std::size_t tok_idx = 0;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

using Sentence = std::vector<TaggedToken>;

struct Corpus {
  std::vector<Sentence> sentences;
  std::size_t token_count = 0;

  bool empty() const noexcept { return token_count == 0; }
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Raw tag -> category with a fallback. Raw tags are case-sensitive.
class TagsetMap {
 public:
  TagsetMap() = default;
  explicit TagsetMap(PosCategory fallback) : fallback_(fallback) {}
  TagsetMap(std::initializer_list<std::pair<const std::string, PosCategory>> entries,
            PosCategory fallback = PosCategory::Other)
      : entries_(entries), fallback_(fallback) {}

  void set(std::string raw, PosCategory c) { entries_[std::move(raw)] = c; }
  void set_default(PosCategory c) { fallback_ = c; }

  PosCategory lookup(std::string_view raw) const {
    auto it = entries_.find(std::string(raw));
    return it == entries_.end() ? fallback_ : it->second;
  }

  PosCategory fallback() const noexcept { return fallback_; }
  const std::map<std::string, PosCategory>& entries() const noexcept { return entries_; }

  // Penn Arabic Treebank reduced tags as emitted by AMIRA-style taggers.
  static TagsetMap arabic_treebank() {
    TagsetMap m;
    for (const char* t : {"NN", "NNS", "NNP", "NNPS", "DTNN", "DTNNS", "DTNNP", "DTNNPS", "NOUN"})
      m.set(t, PosCategory::Noun);
    for (const char* t : {"JJ", "JJR", "DTJJ", "DTJJR", "ADJ"}) m.set(t, PosCategory::Adjective);
    for (const char* t : {"IN", "PREP"}) m.set(t, PosCategory::Preposition);
    for (const char* t : {"VB", "VBD", "VBN", "VBP", "VBG", "VBZ", "VERB"})
      m.set(t, PosCategory::Verb);
    return m;
  }

  friend bool operator==(const TagsetMap&, const TagsetMap&) = default;

 private:
  std::map<std::string, PosCategory> entries_;
  PosCategory fallback_ = PosCategory::Other;
};

inline PosCategory map_tagset(std::string_view raw, const TagsetMap& map) { return map.lookup(raw); }

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace detail

inline Corpus parse_tagged_corpus(std::istream& in, const TagsetMap& map) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  std::size_t doc_id = 0;
  std::size_t sent_idx = 0;
  bool doc_open = false;

  while (std::getline(in, line)) {
    ++line_no;
    try {
      utf8::decode(line);
    } catch (const utf8::DecodeError& e) {
      throw ParseError(e.what(), line_no, e.offset() + 1);
    }

    Sentence sentence;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && detail::is_space(line[pos])) ++pos;
      if (pos >= line.size()) break;
      const std::size_t start = pos;
      while (pos < line.size() && !detail::is_space(line[pos])) ++pos;
      std::string_view item(line.data() + start, pos - start);

      const auto slash = item.rfind('/');
      if (slash == std::string_view::npos)
        throw ParseError("malformed item '" + std::string(item) + "' (expected surface/TAG)", line_no,
                         start + 1);
      if (slash == 0)
        throw ParseError("empty surface in item '" + std::string(item) + "'", line_no, start + 1);
      if (slash + 1 == item.size())
        throw ParseError("empty tag in item '" + std::string(item) + "'", line_no, start + 1);

      TaggedToken tok;
      tok.surface = std::string(item.substr(0, slash));
      tok.tag = std::string(item.substr(slash + 1));
      tok.pos = map.lookup(tok.tag);
      sentence.push_back(std::move(tok));
    }

    if (sentence.empty()) {
      if (doc_open) {
        ++doc_id;
        sent_idx = 0;
        doc_open = false;
      }
      continue;
    }

    doc_open = true;
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      sentence[i].doc_id = doc_id;
      sentence[i].sent_idx = sent_idx;
      sentence[i].tok_idx = i;
    }
    corpus.token_count += sentence.size();
    corpus.sentences.push_back(std::move(sentence));
    ++sent_idx;
  }
  return corpus;
}

inline Corpus parse_tagged_corpus(std::string_view text, const TagsetMap& map) {
  std::istringstream in{std::string(text)};
  return parse_tagged_corpus(in, map);
}

// Writes the corpus back in the format parse_tagged_corpus reads.
inline void write_tagged_corpus(std::ostream& out, const Corpus& corpus) {
  bool first = true;
  std::size_t last_doc = 0;
  for (const auto& sentence : corpus.sentences) {
    if (sentence.empty()) continue;
    if (!first && sentence.front().doc_id != last_doc) out << '\n';
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i) out << ' ';
      out << sentence[i].surface << '/' << sentence[i].tag;
    }
    out << '\n';
    last_doc = sentence.front().doc_id;
    first = false;
  }
}

// Re-derives categories from raw tags; token count is unchanged.
inline Corpus remap(Corpus corpus, const TagsetMap& map) {
  for (auto& sentence : corpus.sentences)
    for (auto& tok : sentence) tok.pos = map.lookup(tok.tag);
  return corpus;
}

}  // namespace mwt
