#pragma once

// Termhood, unithood and context measures for candidate ranking.
//
// The C-value shell takes a pluggable frequency so that the same code gives
// C-value (raw f), TC-value (T-score reweighted F) and LC-value (LLR
// reweighted FL). Each "N" variant mixes the shell with the N-value using
// CombinationWeights.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mwt/normalization.hpp"
#include "mwt/parallel.hpp"
#include "mwt/statistics.hpp"

namespace mwt {

enum class MeasureId { LLR, C, NC, NTC, LLR_C, NLC };

inline constexpr std::array<MeasureId, 6> kAllMeasures = {MeasureId::LLR, MeasureId::C,     MeasureId::NC,
                                                          MeasureId::NTC, MeasureId::LLR_C, MeasureId::NLC};

// Short id used on the command line and in file names.
inline std::string_view to_string(MeasureId m) {
  switch (m) {
    case MeasureId::LLR: return "llr";
    case MeasureId::C: return "c";
    case MeasureId::NC: return "nc";
    case MeasureId::NTC: return "ntc";
    case MeasureId::LLR_C: return "llr_c";
    case MeasureId::NLC: return "nlc";
  }
  return "?";
}

inline std::string_view display_name(MeasureId m) {
  switch (m) {
    case MeasureId::LLR: return "LLR";
    case MeasureId::C: return "C-value";
    case MeasureId::NC: return "NC-value";
    case MeasureId::NTC: return "NTC-value";
    case MeasureId::LLR_C: return "LLR+C-value";
    case MeasureId::NLC: return "NLC-value";
  }
  return "?";
}

inline MeasureId parse_measure(std::string_view id) {
  for (auto m : kAllMeasures)
    if (to_string(m) == id) return m;
  throw std::invalid_argument("unknown measure '" + std::string(id) + "' (expected llr, c, nc, ntc, llr_c or nlc)");
}

struct CombinationWeights {
  double term = 0.8;
  double context = 0.2;
};

inline constexpr double kNegativeInfinity = -std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Scalar formulas

// log2|a| * (freq - mean(container_freqs)); the mean term is dropped when
// the candidate is not nested. Can be negative.
inline double c_value(std::size_t length, double freq, std::span<const double> container_freqs) {
  const double weight = std::log2(static_cast<double>(length));
  if (container_freqs.empty()) return weight * freq;
  const double g = std::accumulate(container_freqs.begin(), container_freqs.end(), 0.0) /
                   static_cast<double>(container_freqs.size());
  return weight * (freq - g);
}

// C-value shell over a candidate list; freq_fn(i) gives the frequency used
// for candidate i (f, F or FL).
template <typename FreqFn>
double c_value(std::size_t term, const std::vector<CandidateTerm>& terms, const NestingIndex& nesting,
               FreqFn&& freq_fn) {
  const auto& containers = nesting.of(term);
  std::vector<double> freqs;
  freqs.reserve(containers.size());
  for (std::size_t b : containers) freqs.push_back(static_cast<double>(freq_fn(b)));
  return c_value(terms[term].length(), static_cast<double>(freq_fn(term)), freqs);
}

inline double c_value(std::size_t term, const std::vector<CandidateTerm>& terms, const NestingIndex& nesting) {
  return c_value(term, terms, nesting, [&](std::size_t i) { return static_cast<double>(terms[i].f); });
}

// Sum over context stems b of f_a(b) * t(b) / n.
inline double n_value(const std::map<std::string, std::size_t>& context, const ContextProfile& profile) {
  if (profile.n == 0) throw std::invalid_argument("N-value needs at least one candidate");
  double sum = 0.0;
  for (const auto& [stem, count] : context)
    sum += static_cast<double>(count) * static_cast<double>(profile.t(stem)) / static_cast<double>(profile.n);
  return sum;
}

inline double n_value(std::size_t term, const ContextProfile& profile) {
  return n_value(profile.context.at(term), profile);
}

inline double combine(double termhood, double nvalue, CombinationWeights w = {}) {
  return w.term * termhood + w.context * nvalue;
}

// (p(wi,wj) - p(wi)p(wj)) / sqrt(p(wi,wj)/N). An unseen pair scores -inf.
inline double t_score(double p_pair, double p_i, double p_j, double n_words) {
  if (p_pair <= 0.0) return kNegativeInfinity;
  return (p_pair - p_i * p_j) / std::sqrt(p_pair / n_words);
}

inline double t_score(const std::string& wi, const std::string& wj, const BigramStats& bs) {
  return t_score(bs.p(wi, wj), bs.p(wi), bs.p(wj), static_cast<double>(bs.token_count()));
}

// F(a): only a strictly positive minimum T-score boosts the frequency.
inline double reweight_by_t_score(double f, double min_t_score) {
  return min_t_score <= 0.0 ? f : f * std::log(2.0 + min_t_score);
}

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Natural-log likelihood ratio of a 2x2 table, with 0 ln 0 = 0 (so the
// all-zero table scores 0).
inline double llr(const ContingencyTable& t) {
  const double a = static_cast<double>(t.a);
  const double b = static_cast<double>(t.b);
  const double c = static_cast<double>(t.c);
  const double d = static_cast<double>(t.d);
  const double n = a + b + c + d;
  return xlogx(a) + xlogx(b) + xlogx(c) + xlogx(d) - xlogx(a + b) - xlogx(a + c) - xlogx(b + d) -
         xlogx(c + d) + xlogx(n);
}

// FL(a) = f(a) * ln(2 + min LLR).
inline double reweight_by_llr(double f, double min_llr) { return f * std::log(2.0 + min_llr); }

// ---------------------------------------------------------------------------
// Per-candidate scoring

// Minimum T-score and minimum LLR over the adjacent stem pairs of each key.
struct Unithood {
  std::vector<double> min_t_score;
  std::vector<double> min_llr;
};

inline Unithood compute_unithood(const std::vector<CandidateTerm>& terms, const BigramStats& bigrams,
                                 const TermStemIndex& stem_index, std::size_t threads = 1) {
  Unithood u;
  u.min_t_score.assign(terms.size(), 0.0);
  u.min_llr.assign(terms.size(), 0.0);
  detail::parallel_for(terms.size(), threads, [&](std::size_t i) {
    const auto& stems = terms[i].key.stems;
    if (stems.size() < 2) throw std::invalid_argument("candidate without a word pair: " + terms[i].key.str());
    double min_t = std::numeric_limits<double>::infinity();
    double min_l = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < stems.size(); ++k) {
      min_t = std::min(min_t, t_score(stems[k], stems[k + 1], bigrams));
      min_l = std::min(min_l, llr(stem_index.table(stems[k], stems[k + 1])));
    }
    u.min_t_score[i] = min_t;
    u.min_llr[i] = min_l;
  });
  return u;
}

struct TermScores {
  double f = 0;
  double min_t_score = 0;
  double min_llr = 0;
  double freq_t = 0;    // F(a)
  double freq_llr = 0;  // FL(a)
  double c = 0;
  double n = 0;
  double nc = 0;
  double tc = 0;
  double ntc = 0;
  double lc = 0;
  double nlc = 0;

  double get(MeasureId m) const {
    switch (m) {
      case MeasureId::LLR: return min_llr;
      case MeasureId::C: return c;
      case MeasureId::NC: return nc;
      case MeasureId::NTC: return ntc;
      case MeasureId::LLR_C: return lc;
      case MeasureId::NLC: return nlc;
    }
    return 0;
  }
};

// LLR+C-value is the LC-value: LLR-reweighted C-value without context.
inline double llr_plus_c_value(const TermScores& s) { return s.lc; }

struct ScoreSheet {
  std::vector<TermScores> rows;

  std::vector<double> values(MeasureId m) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.get(m));
    return out;
  }
};

inline ScoreSheet score_terms(const std::vector<CandidateTerm>& terms, const NestingIndex& nesting,
                              const ContextProfile& context, const Unithood& unithood,
                              CombinationWeights weights = {}, std::size_t threads = 1) {
  const std::size_t n = terms.size();
  if (nesting.containers.size() != n || context.context.size() != n || unithood.min_t_score.size() != n ||
      unithood.min_llr.size() != n)
    throw std::invalid_argument("statistics do not cover the candidate list");

  std::vector<double> freq_t(n);
  std::vector<double> freq_llr(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = static_cast<double>(terms[i].f);
    freq_t[i] = reweight_by_t_score(f, unithood.min_t_score[i]);
    freq_llr[i] = reweight_by_llr(f, unithood.min_llr[i]);
  }

  ScoreSheet sheet;
  sheet.rows.resize(n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    auto& s = sheet.rows[i];
    s.f = static_cast<double>(terms[i].f);
    s.min_t_score = unithood.min_t_score[i];
    s.min_llr = unithood.min_llr[i];
    s.freq_t = freq_t[i];
    s.freq_llr = freq_llr[i];
    s.c = c_value(i, terms, nesting);
    s.n = n_value(i, context);
    s.nc = combine(s.c, s.n, weights);
    s.tc = c_value(i, terms, nesting, [&](std::size_t j) { return freq_t[j]; });
    s.ntc = combine(s.tc, s.n, weights);
    s.lc = c_value(i, terms, nesting, [&](std::size_t j) { return freq_llr[j]; });
    s.nlc = combine(s.lc, s.n, weights);
  });
  return sheet;
}

// ---------------------------------------------------------------------------
// Ranking

struct ScoreTable {
  struct Row {
    std::size_t term = 0;
    double score = 0;
    std::size_t rank = 0;  // 1-based
  };

  MeasureId measure = MeasureId::NLC;
  std::vector<Row> rows;  // in rank order

  std::size_t size() const noexcept { return rows.size(); }

  std::size_t rank_of(std::size_t term) const {
    for (const auto& r : rows)
      if (r.term == term) return r.rank;
    throw std::out_of_range("term not ranked");
  }
};

// Descending score; ties by higher f, then shorter key, then key order.
inline ScoreTable rank(const std::vector<CandidateTerm>& terms, std::span<const double> scores, MeasureId measure) {
  if (scores.size() != terms.size()) throw std::invalid_argument("one score per candidate required");
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (scores[x] != scores[y]) return scores[x] > scores[y];
    if (terms[x].f != terms[y].f) return terms[x].f > terms[y].f;
    if (terms[x].length() != terms[y].length()) return terms[x].length() < terms[y].length();
    return terms[x].key < terms[y].key;
  });
  ScoreTable table;
  table.measure = measure;
  table.rows.reserve(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) table.rows.push_back({order[r], scores[order[r]], r + 1});
  return table;
}

inline ScoreTable rank(const std::vector<CandidateTerm>& terms, const ScoreSheet& sheet, MeasureId measure) {
  const auto values = sheet.values(measure);
  return rank(terms, values, measure);
}

inline ScoreTable rank(const std::vector<CandidateTerm>& terms, const ScoreSheet& sheet, std::string_view measure) {
  return rank(terms, sheet, parse_measure(measure));
}

}  // namespace mwt
