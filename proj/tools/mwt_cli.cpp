// mwt: multi-word term extraction command line.
//
// Exit codes: 0 success, 1 usage or config error, 2 data error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mwt/mwt.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonOptions {
  std::string config_path;
  std::string corpus;
  std::optional<std::int64_t> l_max;
  std::optional<std::int64_t> window;
  std::optional<std::int64_t> threads;
};

void add_corpus_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--corpus", o.corpus, "Tagged corpus (surface/TAG, one sentence per line)");
  cmd->add_option("--l-max", o.l_max, "Longest candidate length");
  cmd->add_option("--window", o.window, "Context window on each side");
  cmd->add_option("--threads", o.threads, "Worker threads");
}

mwt::PipelineConfig make_config(const CommonOptions& o) {
  mwt::PipelineConfig c = o.config_path.empty() ? mwt::PipelineConfig{} : mwt::load_config(o.config_path);
  if (!o.corpus.empty()) {
    // command-line paths are relative to the working directory
    c.corpus_path = std::filesystem::absolute(o.corpus).string();
  }
  if (o.l_max) c.l_max = *o.l_max;
  if (o.window) c.window = *o.window;
  if (o.threads) c.threads = *o.threads;
  if (auto v = mwt::validate_config(c); !v.empty()) {
    std::string msg = "invalid config:";
    for (const auto& s : v) msg += "\n  " + s;
    throw mwt::ConfigError(msg);
  }
  return c;
}

mwt::Analysis run_analysis(const mwt::PipelineConfig& c) {
  if (c.corpus_path.empty()) throw mwt::ConfigError("no corpus given (use --corpus or [corpus] path)");
  const auto corpus = mwt::load_corpus(c.resolve(c.corpus_path), c.tagset);
  return mwt::analyze(corpus, mwt::analysis_options(c));
}

int cmd_stem(const std::string& input) {
  std::ifstream file;
  if (!input.empty() && input != "-") {
    file.open(input);
    if (!file) throw std::runtime_error("cannot open " + input);
  }
  std::istream& in = file.is_open() ? file : std::cin;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
      std::cout << '\n';
      continue;
    }
    const auto word = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    std::cout << mwt::stem_word(word) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-word term extraction and ranking"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonOptions common;
  app.add_option("--config", common.config_path, "Pipeline config file")->check(CLI::ExistingFile);

  auto* extract = app.add_subcommand("extract", "Print pattern-matched candidate occurrences as TSV");
  add_corpus_options(extract, common);

  std::string stem_input;
  auto* stem = app.add_subcommand("stem", "Normalize and light-stem one word per line");
  stem->add_option("--input", stem_input, "Word list (default: stdin)");

  auto* stats = app.add_subcommand("stats", "Print per-candidate frequency, nesting and context counts");
  add_corpus_options(stats, common);

  std::string measure_id = "nlc";
  std::size_t top = 0;
  auto* rank = app.add_subcommand("rank", "Rank candidates by one measure");
  add_corpus_options(rank, common);
  rank->add_option("--measure", measure_id, "llr, c, nc, ntc, llr_c or nlc");
  rank->add_option("--top", top, "Print only the K best (0 = all)");

  std::vector<std::string> ref_specs;
  std::string k_list;
  std::string measure_list;
  std::string json_path;
  auto* evaluate = app.add_subcommand("evaluate", "Precision@k against reference term lists");
  add_corpus_options(evaluate, common);
  evaluate->add_option("--refs", ref_specs, "Reference lists as path:label")->delimiter(',');
  evaluate->add_option("--k", k_list, "Cut-offs, e.g. 100,200,300");
  evaluate->add_option("--measures", measure_list, "Measures to evaluate (default: all)");
  evaluate->add_option("--json", json_path, "Also write the report as JSON");

  std::string out_dir;
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage and write all reports");
  add_corpus_options(pipeline, common);
  pipeline->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*stem) return cmd_stem(stem_input);

    auto config = make_config(common);

    if (*extract) {
      if (config.corpus_path.empty()) throw mwt::ConfigError("no corpus given (use --corpus or [corpus] path)");
      const auto corpus = mwt::load_corpus(config.resolve(config.corpus_path), config.tagset);
      const auto occs = mwt::extract_candidates(corpus, static_cast<std::size_t>(config.l_max),
                                                static_cast<std::size_t>(config.threads));
      mwt::write_occurrences_tsv(std::cout, occs);
      return 0;
    }

    if (*stats) {
      mwt::write_stats_tsv(std::cout, run_analysis(config));
      return 0;
    }

    if (*rank) {
      mwt::MeasureId m;
      try {
        m = mwt::parse_measure(measure_id);
      } catch (const std::invalid_argument& e) {
        throw mwt::ConfigError(e.what());
      }
      const auto a = run_analysis(config);
      mwt::write_ranking_tsv(std::cout, mwt::rank(a.terms, a.scores, m), a.terms, top);
      return 0;
    }

    if (*evaluate) {
      if (!ref_specs.empty()) {
        config.references.clear();
        for (const auto& s : ref_specs) {
          auto r = mwt::parse_reference_spec(s);
          r.path = std::filesystem::absolute(r.path).string();
          config.references.push_back(std::move(r));
        }
      }
      if (!k_list.empty()) config.ks = mwt::parse_k_list(k_list);
      if (!measure_list.empty()) config.measures = mwt::parse_measure_list(measure_list);
      if (auto v = mwt::validate_config(config); !v.empty()) throw mwt::ConfigError(v.front());
      if (config.references.empty()) throw mwt::ConfigError("no reference lists given (use --refs)");

      const auto a = run_analysis(config);
      std::vector<mwt::ScoreTable> tables;
      for (auto m : config.measures) tables.push_back(mwt::rank(a.terms, a.scores, m));
      std::vector<mwt::ReferenceList> refs;
      for (const auto& r : config.references)
        refs.push_back(mwt::load_reference(config.resolve(r.path).string(), r.label, config.stoplist));
      const std::vector<std::size_t> ks(config.ks.begin(), config.ks.end());
      const auto report = mwt::evaluate_all(tables, a.terms, refs, ks);
      if (!report.cells.empty()) {
        for (const auto& cell : report.cells.front())
          if (cell.truncated)
            std::cerr << "warning: k=" << cell.k << " exceeds the " << cell.considered
                      << " ranked candidates; precision computed over " << cell.considered << '\n';
      }
      mwt::write_eval_tsv(std::cout, report);
      if (!json_path.empty()) {
        std::ofstream js(json_path, std::ios::binary);
        if (!js) throw std::runtime_error("cannot create " + json_path);
        js << mwt::eval_json(report).dump(2) << '\n';
      }
      return 0;
    }

    if (*pipeline) {
      if (!out_dir.empty()) config.output_dir = std::filesystem::absolute(out_dir).string();
      const auto manifest = mwt::run_pipeline(config);
      std::cerr << "tokens " << manifest.token_count << ", occurrences " << manifest.occurrence_count
                << ", candidates " << manifest.candidate_count << '\n';
      for (const auto& [stage, s] : manifest.stage_seconds) std::cerr << "  " << stage << ' ' << s << " s\n";
      return 0;
    }
  } catch (const mwt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mwt::StageError& e) {
    std::cerr << "error in stage " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
