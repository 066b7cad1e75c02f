#pragma once

// End-to-end orchestration: config loading and validation, the in-memory
// analysis, TSV/JSON report writers and the on-disk pipeline run.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "mwt/corpus.hpp"
#include "mwt/evaluation.hpp"
#include "mwt/format.hpp"
#include "mwt/linguistic_filter.hpp"
#include "mwt/measures.hpp"
#include "mwt/normalization.hpp"
#include "mwt/statistics.hpp"

namespace mwt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure inside one pipeline stage; what() is prefixed with the stage name.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& msg)
      : std::runtime_error(stage + ": " + msg), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct ReferenceSpec {
  std::string path;
  std::string label;
};

// `path:label`, split on the last colon; without a label the file stem is used.
inline ReferenceSpec parse_reference_spec(std::string_view spec) {
  ReferenceSpec r;
  const auto colon = spec.rfind(':');
  if (colon == std::string_view::npos) {
    r.path = std::string(spec);
    r.label = std::filesystem::path(r.path).stem().string();
  } else {
    r.path = std::string(spec.substr(0, colon));
    r.label = std::string(spec.substr(colon + 1));
  }
  if (r.path.empty() || r.label.empty()) throw ConfigError("bad reference spec '" + std::string(spec) + "'");
  return r;
}

struct PipelineConfig {
  std::string corpus_path;
  std::filesystem::path base_dir;  // relative paths resolve against this
  TagsetMap tagset = TagsetMap::arabic_treebank();
  std::int64_t l_max = 3;
  std::int64_t window = 5;
  CombinationWeights weights;
  std::vector<MeasureId> measures{kAllMeasures.begin(), kAllMeasures.end()};
  std::vector<std::int64_t> ks = {100, 200, 300};
  std::vector<ReferenceSpec> references;
  std::set<std::string> stoplist = default_stoplist();
  std::string output_dir = "out";
  std::int64_t threads = 1;
  bool record_timing = false;

  std::filesystem::path resolve(const std::string& p) const {
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  }
};

inline std::vector<std::string> validate_config(const PipelineConfig& c) {
  std::vector<std::string> v;
  if (c.weights.term < 0 || c.weights.context < 0) v.push_back("combination weights must be non-negative");
  if (std::abs(c.weights.term + c.weights.context - 1.0) > 1e-9)
    v.push_back("combination weights must sum to 1 (got " + format_real(c.weights.term) + " + " +
                format_real(c.weights.context) + ")");
  if (c.l_max < 2) v.push_back("l_max must be >= 2 (got " + std::to_string(c.l_max) + ")");
  if (c.window < 1) v.push_back("context window must be >= 1 (got " + std::to_string(c.window) + ")");
  if (c.measures.empty()) v.push_back("measure list is empty");
  if (c.ks.empty()) v.push_back("k list is empty");
  bool positive = true;
  bool ascending = true;
  for (std::size_t i = 0; i < c.ks.size(); ++i) {
    if (c.ks[i] <= 0) positive = false;
    if (i > 0 && c.ks[i] <= c.ks[i - 1]) ascending = false;
  }
  if (!positive) v.push_back("k values must be positive");
  if (!ascending) v.push_back("k values must be strictly ascending");
  if (c.threads < 1) v.push_back("threads must be >= 1");
  return v;
}

namespace detail {

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, cur.find_last_not_of(" \t") - b + 1));
    cur.clear();
  };
  for (char ch : s) {
    if (ch == ',') flush();
    else cur.push_back(ch);
  }
  flush();
  return out;
}

inline std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::int64_t out = 0;
  try {
    out = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ConfigError(key + ": expected an integer, got '" + value + "'");
  return out;
}

inline double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ConfigError(key + ": expected a number, got '" + value + "'");
  return out;
}

}  // namespace detail

inline std::vector<std::int64_t> parse_k_list(std::string_view s) {
  std::vector<std::int64_t> out;
  for (const auto& item : detail::split_list(s)) out.push_back(detail::parse_int("k", item));
  return out;
}

inline std::vector<MeasureId> parse_measure_list(std::string_view s) {
  std::vector<MeasureId> out;
  try {
    for (const auto& item : detail::split_list(s)) out.push_back(parse_measure(item));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return out;
}

// INI-style config. Sections: corpus, tagset, extraction, context, measures,
// evaluation, output, runtime. Unknown keys are rejected.
inline PipelineConfig load_config(std::istream& in, const std::filesystem::path& base_dir = {}) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }

  PipelineConfig c;
  c.base_dir = base_dir;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("key '" + section + "' outside of a section");
    auto unknown = [&](const std::string& key) {
      return ConfigError("unknown key '" + key + "' in section [" + section + "]");
    };
    if (section == "tagset") {
      std::string preset = "arabic_treebank";
      if (auto p = body.get_optional<std::string>("preset")) preset = *p;
      if (preset == "arabic_treebank") c.tagset = TagsetMap::arabic_treebank();
      else if (preset == "none") c.tagset = TagsetMap{};
      else throw ConfigError("unknown tagset preset '" + preset + "'");
      for (const auto& [key, node] : body) {
        if (key == "preset") continue;
        auto cat = parse_category(node.data());
        if (!cat) throw ConfigError("tagset: unknown category '" + node.data() + "' for tag '" + key + "'");
        if (key == "default") c.tagset.set_default(*cat);
        else c.tagset.set(key, *cat);
      }
      continue;
    }
    for (const auto& [key, node] : body) {
      const std::string& value = node.data();
      const std::string qualified = section + "." + key;
      if (section == "corpus") {
        if (key == "path") c.corpus_path = value;
        else throw unknown(key);
      } else if (section == "extraction") {
        if (key == "l_max") c.l_max = detail::parse_int(qualified, value);
        else throw unknown(key);
      } else if (section == "context") {
        if (key == "window") c.window = detail::parse_int(qualified, value);
        else throw unknown(key);
      } else if (section == "measures") {
        if (key == "list") c.measures = parse_measure_list(value);
        else if (key == "weight_term") c.weights.term = detail::parse_double(qualified, value);
        else if (key == "weight_context") c.weights.context = detail::parse_double(qualified, value);
        else throw unknown(key);
      } else if (section == "evaluation") {
        if (key == "k") c.ks = parse_k_list(value);
        else if (key == "references") {
          c.references.clear();
          for (const auto& item : detail::split_list(value)) c.references.push_back(parse_reference_spec(item));
        } else if (key == "stoplist") {
          c.stoplist.clear();
          for (const auto& item : detail::split_list(value)) c.stoplist.insert(normalize_graphical(item));
        } else throw unknown(key);
      } else if (section == "output") {
        if (key == "dir") c.output_dir = value;
        else throw unknown(key);
      } else if (section == "runtime") {
        if (key == "threads") c.threads = detail::parse_int(qualified, value);
        else if (key == "record_timing") c.record_timing = value == "true" || value == "1";
        else throw unknown(key);
      } else {
        throw ConfigError("unknown section [" + section + "]");
      }
    }
  }
  return c;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return load_config(in, path.parent_path());
}

// Settings that influence results. Thread count, output location and
// timing are left out so that the snapshot is identical across runs.
inline nlohmann::ordered_json config_snapshot(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  j["corpus"] = c.corpus_path;
  auto& tags = j["tagset"] = nlohmann::ordered_json::object();
  for (const auto& [raw, cat] : c.tagset.entries()) tags[raw] = std::string(to_string(cat));
  j["tagset_default"] = std::string(to_string(c.tagset.fallback()));
  j["l_max"] = c.l_max;
  j["window"] = c.window;
  j["weight_term"] = rounded_real(c.weights.term);
  j["weight_context"] = rounded_real(c.weights.context);
  auto& ms = j["measures"] = nlohmann::ordered_json::array();
  for (auto m : c.measures) ms.push_back(std::string(to_string(m)));
  j["k"] = c.ks;
  auto& refs = j["references"] = nlohmann::ordered_json::array();
  for (const auto& r : c.references) refs.push_back({{"path", r.path}, {"label", r.label}});
  j["stoplist"] = c.stoplist;
  return j;
}

// ---------------------------------------------------------------------------
// In-memory analysis

struct AnalysisOptions {
  std::size_t l_max = 3;
  std::size_t window = 5;
  CombinationWeights weights;
  std::size_t threads = 1;
};

struct Analysis {
  std::vector<CandidateOccurrence> occurrences;
  std::vector<CandidateTerm> terms;
  NestingIndex nesting;
  ContextProfile context;
  BigramStats bigrams;
  Unithood unithood;
  ScoreSheet scores;
};

// Runs every statistical stage; `on_stage(name)` fires before each one so
// callers can label errors or time stages.
template <typename OnStage>
Analysis analyze(const Corpus& corpus, const AnalysisOptions& opt, OnStage&& on_stage) {
  Analysis a;
  on_stage("extract");
  if (corpus.empty()) throw StageError("extract", "corpus is empty");
  a.occurrences = extract_candidates(corpus, opt.l_max, opt.threads);
  if (a.occurrences.empty()) throw StageError("extract", "no candidate matched the syntactic patterns");

  on_stage("normalize");
  a.terms = group_variants(a.occurrences);

  on_stage("statistics");
  const auto stems = stem_corpus(corpus);
  a.nesting = build_nesting_index(a.terms);
  a.context = build_context_profiles(corpus, stems, a.terms, a.nesting, opt.window);
  a.bigrams = build_bigram_stats(stems);

  on_stage("measures");
  const TermStemIndex stem_index(a.terms);
  a.unithood = compute_unithood(a.terms, a.bigrams, stem_index, opt.threads);
  a.scores = score_terms(a.terms, a.nesting, a.context, a.unithood, opt.weights, opt.threads);
  return a;
}

inline Analysis analyze(const Corpus& corpus, const AnalysisOptions& opt = {}) {
  return analyze(corpus, opt, [](std::string_view) {});
}

inline AnalysisOptions analysis_options(const PipelineConfig& c) {
  AnalysisOptions o;
  o.l_max = static_cast<std::size_t>(c.l_max);
  o.window = static_cast<std::size_t>(c.window);
  o.weights = c.weights;
  o.threads = static_cast<std::size_t>(c.threads);
  return o;
}

inline Corpus load_corpus(const std::filesystem::path& path, const TagsetMap& tagset) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus " + path.string());
  return parse_tagged_corpus(in, tagset);
}

// ---------------------------------------------------------------------------
// Writers. Every TSV starts with a '#'-prefixed header line.

inline void write_occurrences_tsv(std::ostream& out, const std::vector<CandidateOccurrence>& occs) {
  out << "#doc\tsentence\tstart\tlength\tpattern\tsurface\n";
  for (const auto& o : occs)
    out << o.doc_id << '\t' << o.sent_idx << '\t' << o.start_idx << '\t' << o.length() << '\t'
        << to_string(o.pattern) << '\t' << o.surface() << '\n';
}

inline void write_candidates_tsv(std::ostream& out, const std::vector<CandidateTerm>& terms) {
  out << "#key\tlength\tf\tpatterns\tsurfaces\n";
  for (const auto& t : terms) {
    out << t.key.str() << '\t' << t.length() << '\t' << t.f << '\t';
    bool first = true;
    for (auto p : t.patterns) {
      out << (first ? "" : ",") << to_string(p);
      first = false;
    }
    out << '\t';
    first = true;
    for (const auto& [surface, count] : t.surfaces) {
      out << (first ? "" : " | ") << surface << " (" << count << ')';
      first = false;
    }
    out << '\n';
  }
}

inline void write_stats_tsv(std::ostream& out, const Analysis& a) {
  out << "#key\tlength\tf\tnested_in\tcontext_words\tmin_t_score\tmin_llr\n";
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const auto& t = a.terms[i];
    out << t.key.str() << '\t' << t.length() << '\t' << t.f << '\t' << a.nesting.of(i).size() << '\t'
        << a.context.context[i].size() << '\t' << format_real(a.unithood.min_t_score[i]) << '\t'
        << format_real(a.unithood.min_llr[i]) << '\n';
  }
}

// top == 0 writes the whole ranking.
inline void write_ranking_tsv(std::ostream& out, const ScoreTable& table, const std::vector<CandidateTerm>& terms,
                              std::size_t top = 0) {
  out << "#rank\tscore\tf\tlength\tkey\tsurface\n";
  const std::size_t limit = top == 0 ? table.size() : std::min(top, table.size());
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& row = table.rows[i];
    const auto& t = terms[row.term];
    out << row.rank << '\t' << format_real(row.score) << '\t' << t.f << '\t' << t.length() << '\t' << t.key.str()
        << '\t' << t.sample_surface() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Pipeline run

struct RunManifest {
  nlohmann::ordered_json config;
  std::size_t token_count = 0;
  std::size_t sentence_count = 0;
  std::size_t occurrence_count = 0;  // candidates before merging
  std::size_t candidate_count = 0;   // after merging
  std::vector<std::string> files;
  std::vector<std::pair<std::string, double>> stage_seconds;

  nlohmann::ordered_json to_json(bool with_timing) const {
    nlohmann::ordered_json j;
    j["config"] = config;
    j["token_count"] = token_count;
    j["sentence_count"] = sentence_count;
    j["occurrence_count"] = occurrence_count;
    j["candidate_count"] = candidate_count;
    j["files"] = files;
    if (with_timing) {
      auto& t = j["stage_seconds"] = nlohmann::ordered_json::object();
      for (const auto& [stage, s] : stage_seconds) t[stage] = s;
    }
    return j;
  }
};

inline RunManifest run_pipeline(const PipelineConfig& config) {
  if (auto violations = validate_config(config); !violations.empty()) {
    std::string msg = "invalid config:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }

  RunManifest manifest;
  manifest.config = config_snapshot(config);
  std::string stage;
  auto clock_start = std::chrono::steady_clock::now();
  auto enter = [&](std::string_view next) {
    const auto now = std::chrono::steady_clock::now();
    if (!stage.empty())
      manifest.stage_seconds.emplace_back(stage, std::chrono::duration<double>(now - clock_start).count());
    stage = std::string(next);
    clock_start = now;
  };

  const auto out_dir = config.resolve(config.output_dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(out_dir / name, std::ios::binary);
    if (!f) throw StageError("write", "cannot create " + (out_dir / name).string());
    manifest.files.push_back(name);
    return f;
  };

  try {
    enter("ingest");
    if (config.corpus_path.empty()) throw StageError("ingest", "no corpus path configured");
    const Corpus corpus = load_corpus(config.resolve(config.corpus_path), config.tagset);
    manifest.token_count = corpus.token_count;
    manifest.sentence_count = corpus.sentences.size();

    const Analysis a = analyze(corpus, analysis_options(config), enter);
    manifest.occurrence_count = a.occurrences.size();
    manifest.candidate_count = a.terms.size();

    enter("rank");
    std::vector<ScoreTable> tables;
    for (auto m : config.measures) tables.push_back(rank(a.terms, a.scores, m));

    std::vector<ReferenceList> refs;
    std::optional<EvalReport> report;
    if (!config.references.empty()) {
      enter("evaluate");
      for (const auto& r : config.references)
        refs.push_back(load_reference(config.resolve(r.path).string(), r.label, config.stoplist));
      std::vector<std::size_t> ks(config.ks.begin(), config.ks.end());
      report = evaluate_all(tables, a.terms, refs, ks);
    }

    enter("write");
    std::filesystem::create_directories(out_dir);
    {
      auto f = open("occurrences.tsv");
      write_occurrences_tsv(f, a.occurrences);
    }
    {
      auto f = open("candidates.tsv");
      write_candidates_tsv(f, a.terms);
    }
    {
      auto f = open("stats.tsv");
      write_stats_tsv(f, a);
    }
    for (const auto& table : tables) {
      auto f = open("rank." + std::string(to_string(table.measure)) + ".tsv");
      write_ranking_tsv(f, table, a.terms);
    }
    if (report) {
      auto tsv = open("eval.tsv");
      write_eval_tsv(tsv, *report);
      auto json = open("eval.json");
      json << eval_json(*report).dump(2) << '\n';
    }
    enter("");
    manifest.files.push_back("manifest.json");
    std::ofstream mf(out_dir / "manifest.json", std::ios::binary);
    if (!mf) throw StageError("write", "cannot create manifest.json");
    mf << manifest.to_json(config.record_timing).dump(2) << '\n';
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage.empty() ? "write" : stage, e.what());
  }
  return manifest;
}

}  // namespace mwt
