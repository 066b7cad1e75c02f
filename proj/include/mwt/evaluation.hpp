#pragma once

// Reference-list evaluation: exact stem-sequence matching and precision@k.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mwt/format.hpp"
#include "mwt/measures.hpp"
#include "mwt/normalization.hpp"

namespace mwt {

struct ReferenceList {
  std::string label;
  std::set<StemKey> keys;

  bool contains(const StemKey& key) const { return keys.contains(key); }
};

// Standalone prepositions dropped from reference entries, compared after
// graphical normalization.
inline std::set<std::string> default_stoplist() {
  return {"من", "في", "على", "الى", "عن", "مع", "حتى", "منذ", "لدى", "عند"};
}

inline std::optional<StemKey> reference_key(std::string_view line, const std::set<std::string>& stoplist) {
  std::istringstream words{std::string(line)};
  StemKey key;
  std::string word;
  while (words >> word) {
    if (stoplist.contains(normalize_graphical(word))) continue;
    key.stems.push_back(stem_word(word));
  }
  if (key.empty()) return std::nullopt;
  return key;
}

inline ReferenceList load_reference(std::istream& in, std::string label,
                                    const std::set<std::string>& stoplist = default_stoplist()) {
  ReferenceList list;
  list.label = std::move(label);
  std::string line;
  while (std::getline(in, line)) {
    if (auto key = reference_key(line, stoplist)) list.keys.insert(std::move(*key));
  }
  if (list.keys.empty()) throw std::runtime_error("reference list '" + list.label + "' is empty");
  return list;
}

inline ReferenceList load_reference(const std::string& path, std::string label,
                                    const std::set<std::string>& stoplist = default_stoplist()) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference list " + path);
  return load_reference(in, std::move(label), stoplist);
}

// First list (in the given order) holding an identical stem sequence.
inline std::optional<std::string> match(const StemKey& key, const std::vector<ReferenceList>& refs) {
  for (const auto& r : refs)
    if (r.contains(key)) return r.label;
  return std::nullopt;
}

inline std::optional<std::string> match(const CandidateTerm& term, const std::vector<ReferenceList>& refs) {
  return match(term.key, refs);
}

struct PrecisionAtK {
  std::size_t k = 0;
  std::size_t considered = 0;  // min(k, ranked candidates)
  std::size_t matched = 0;
  double precision = 0.0;
  std::map<std::string, std::size_t> per_source;
  bool truncated = false;  // k exceeded the ranking length
};

inline PrecisionAtK evaluate_at_k(const ScoreTable& table, const std::vector<CandidateTerm>& terms,
                                  const std::vector<ReferenceList>& refs, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  PrecisionAtK out;
  out.k = k;
  out.considered = std::min(k, table.size());
  out.truncated = k > table.size();
  for (const auto& r : refs) out.per_source[r.label];
  for (std::size_t i = 0; i < out.considered; ++i) {
    if (auto label = match(terms.at(table.rows[i].term), refs)) {
      ++out.matched;
      ++out.per_source[*label];
    }
  }
  out.precision = out.considered == 0 ? 0.0 : static_cast<double>(out.matched) / static_cast<double>(out.considered);
  return out;
}

inline double precision_at_k(const ScoreTable& table, const std::vector<CandidateTerm>& terms,
                             const std::vector<ReferenceList>& refs, std::size_t k) {
  return evaluate_at_k(table, terms, refs, k).precision;
}

struct EvalReport {
  std::vector<std::size_t> ks;
  std::vector<std::string> sources;
  std::vector<MeasureId> measures;
  // cells[m][j] is measure m at ks[j]
  std::vector<std::vector<PrecisionAtK>> cells;
  // Over the top max(k) of every measure: distinct candidates looked at,
  // how many every measure shares, and how many of the distinct ones match.
  std::size_t distinct_evaluated = 0;
  std::size_t shared_by_all = 0;
  std::size_t distinct_attested = 0;
};

inline EvalReport evaluate_all(const std::vector<ScoreTable>& tables, const std::vector<CandidateTerm>& terms,
                               const std::vector<ReferenceList>& refs, const std::vector<std::size_t>& ks) {
  EvalReport report;
  report.ks = ks;
  for (const auto& r : refs) report.sources.push_back(r.label);
  const std::size_t k_max = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());

  std::map<std::size_t, std::size_t> seen;  // term -> number of tables with it in the top k_max
  for (const auto& table : tables) {
    report.measures.push_back(table.measure);
    auto& row = report.cells.emplace_back();
    for (std::size_t k : ks) row.push_back(evaluate_at_k(table, terms, refs, k));
    for (std::size_t i = 0; i < std::min(k_max, table.size()); ++i) ++seen[table.rows[i].term];
  }
  report.distinct_evaluated = seen.size();
  for (const auto& [term, count] : seen) {
    if (count == tables.size()) ++report.shared_by_all;
    if (match(terms.at(term), refs)) ++report.distinct_attested;
  }
  return report;
}

// Precision matrix (measures x k), then one match-count matrix per source.
inline void write_eval_tsv(std::ostream& out, const EvalReport& report) {
  auto header = [&](std::string_view title) {
    out << "# " << title << "\nmeasure";
    for (auto k : report.ks) out << '\t' << k;
    out << '\n';
  };
  header("precision");
  for (std::size_t m = 0; m < report.measures.size(); ++m) {
    out << display_name(report.measures[m]);
    for (const auto& cell : report.cells[m]) out << '\t' << format_real(cell.precision);
    out << '\n';
  }
  for (const auto& source : report.sources) {
    out << '\n';
    header("matches:" + source);
    for (std::size_t m = 0; m < report.measures.size(); ++m) {
      out << display_name(report.measures[m]);
      for (const auto& cell : report.cells[m]) out << '\t' << cell.per_source.at(source);
      out << '\n';
    }
  }
  out << "\n# summary\ndistinct_evaluated\t" << report.distinct_evaluated << "\nshared_by_all\t"
      << report.shared_by_all << "\ndistinct_attested\t" << report.distinct_attested << '\n';
}

inline nlohmann::ordered_json eval_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["k"] = report.ks;
  j["sources"] = report.sources;
  auto& rows = j["measures"] = nlohmann::ordered_json::array();
  for (std::size_t m = 0; m < report.measures.size(); ++m) {
    nlohmann::ordered_json row;
    row["id"] = std::string(to_string(report.measures[m]));
    row["name"] = std::string(display_name(report.measures[m]));
    auto& cells = row["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : report.cells[m]) {
      nlohmann::ordered_json cell;
      cell["k"] = c.k;
      cell["considered"] = c.considered;
      cell["matched"] = c.matched;
      cell["precision"] = rounded_real(c.precision);
      cell["per_source"] = c.per_source;
      cells.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  j["distinct_evaluated"] = report.distinct_evaluated;
  j["shared_by_all"] = report.shared_by_all;
  j["distinct_attested"] = report.distinct_attested;
  return j;
}

}  // namespace mwt
