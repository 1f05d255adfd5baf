// rlcomp: index a corpus, score phrase compositionality, and evaluate the
// scores against human judgments.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rlcomp/commands.hpp"
#include "rlcomp/error.hpp"
#include "rlcomp/io.hpp"

namespace {

struct RunConfig {
  std::string corpus;
  std::string index;
  std::string lexicon;
  std::string phrases;
  std::string dataset;
  std::string scores;
  std::string report_json;
  std::string out_dir;
  std::string metrics;
  std::size_t window = 5;
  std::size_t cap = 1000;
  double minkowski_p = 1.0;
  double hamming_eps = 0.0;
  std::size_t top_k = 100;
  std::size_t threads = 1;
  std::size_t bins = 0;
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw CLI::RequiredError(flag);
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw rlcomp::FormatError("cannot write " + path.string());
  return out;
}

int cmd_index(const RunConfig& cfg) {
  require(cfg.corpus, "--corpus");
  require(cfg.index, "--index");
  const auto summary = rlcomp::run_index(cfg.corpus, cfg.index);
  std::cout << "documents\t" << summary.doc_count << '\n'
            << "vocabulary\t" << summary.vocabulary_size << '\n'
            << "tokens\t" << summary.token_count << '\n';
  return 0;
}

int cmd_score(const RunConfig& cfg) {
  require(cfg.index, "--index");
  require(cfg.lexicon, "--lexicon");
  require(cfg.phrases, "--phrases");
  rlcomp::ScoreRequest request;
  request.index_dir = cfg.index;
  request.lexicon = cfg.lexicon;
  request.phrases = cfg.phrases;
  request.pipeline.window = cfg.window;
  request.pipeline.cap = cfg.cap;
  request.pipeline.top_k = cfg.top_k;
  request.pipeline.params = {cfg.minkowski_p, cfg.hamming_eps};
  if (!cfg.metrics.empty()) request.pipeline.metrics = rlcomp::parse_metric_list(cfg.metrics);
  request.threads = cfg.threads;

  rlcomp::ScoreSummary summary;
  if (cfg.scores.empty() || cfg.scores == "-") {
    summary = rlcomp::run_score(request, std::cout);
  } else {
    auto out = open_output(cfg.scores);
    summary = rlcomp::run_score(request, out);
  }
  std::cerr << "scored " << summary.scored << " of " << summary.phrases << " phrases ("
            << summary.unscorable << " unscorable)\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  require(cfg.dataset, "--dataset");
  require(cfg.scores, "--scores");
  const auto report = rlcomp::run_evaluate(cfg.dataset, cfg.scores);
  std::cout << report.to_text();
  if (!cfg.report_json.empty()) open_output(cfg.report_json) << report.to_json() << '\n';
  return 0;
}

int cmd_bins(const RunConfig& cfg) {
  require(cfg.dataset, "--dataset");
  require(cfg.scores, "--scores");
  require(cfg.out_dir, "--out-dir");
  std::optional<std::size_t> forced;
  if (cfg.bins > 0) forced = cfg.bins;
  for (const auto& result : rlcomp::run_bins(cfg.dataset, cfg.scores, forced)) {
    const auto path = std::filesystem::path(cfg.out_dir) /
                      (std::string(rlcomp::metric_key(result.kind)) + ".bins.tsv");
    auto out = open_output(path);
    rlcomp::write_bins(out, result.bins);
    std::cout << rlcomp::metric_key(result.kind) << "\tpoints=" << result.points
              << "\tbins=" << result.bin_count << "\t" << path.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compositionality detection with ranked lists of term weights", "rlcomp"};
  app.set_config("--config", "", "TOML/INI file with option values (flags take precedence)");
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  auto metric_list = CLI::Validator(
      [](std::string& value) -> std::string {
        try {
          rlcomp::parse_metric_list(value);
        } catch (const rlcomp::Error& e) {
          return e.what();
        }
        return {};
      },
      "METRIC[,METRIC...]");

  app.add_option("--corpus", cfg.corpus, "Corpus directory or JSON-lines file")->envname("RLCOMP_CORPUS");
  app.add_option("--index", cfg.index, "Index directory")->envname("RLCOMP_INDEX");
  app.add_option("--lexicon", cfg.lexicon, "Lexicon TSV (term, relation, candidate)")->envname("RLCOMP_LEXICON");
  app.add_option("--phrases", cfg.phrases, "Phrase file, one phrase per line")->envname("RLCOMP_PHRASES");
  app.add_option("--dataset", cfg.dataset, "Annotated dataset TSV")->envname("RLCOMP_DATASET");
  app.add_option("--scores", cfg.scores, "Score TSV (output of score, input of evaluate/bins)")
      ->envname("RLCOMP_SCORES");
  app.add_option("--report-json", cfg.report_json, "Also write the evaluation report as JSON")
      ->envname("RLCOMP_REPORT_JSON");
  app.add_option("--out-dir", cfg.out_dir, "Directory for bin TSV files")->envname("RLCOMP_OUT_DIR");
  app.add_option("--metrics", cfg.metrics,
                 "Comma-separated metrics: rank_l1, minkowski_p, chebyshev, cosrank, hamming, "
                 "hausdorff, pearson, symm_tau_ap (default: all but minkowski_p)")
      ->check(metric_list)
      ->envname("RLCOMP_METRICS");
  app.add_option("--window", cfg.window, "Context window half-width")
      ->capture_default_str()->check(CLI::PositiveNumber)->envname("RLCOMP_WINDOW");
  app.add_option("--cap", cfg.cap, "Maximum ranked list length")
      ->capture_default_str()->check(CLI::PositiveNumber)->envname("RLCOMP_CAP");
  app.add_option("--minkowski-p", cfg.minkowski_p, "Minkowski exponent (>= 1)")
      ->capture_default_str()->check(CLI::Range(1.0, std::numeric_limits<double>::max()))
      ->envname("RLCOMP_MINKOWSKI_P");
  app.add_option("--hamming-eps", cfg.hamming_eps, "Tolerance for Hamming inequality (>= 0)")
      ->capture_default_str()->check(CLI::NonNegativeNumber)->envname("RLCOMP_HAMMING_EPS");
  app.add_option("--top-k", cfg.top_k, "Documents inspected when choosing a near-synonym")
      ->capture_default_str()->check(CLI::PositiveNumber)->envname("RLCOMP_TOP_K");
  app.add_option("--threads", cfg.threads, "Worker threads for scoring")
      ->capture_default_str()->check(CLI::PositiveNumber)->envname("RLCOMP_THREADS");
  app.add_option("--bins", cfg.bins, "Fixed number of bins (default: Scott's rule)")
      ->envname("RLCOMP_BINS");

  auto* index = app.add_subcommand("index", "Build and save a corpus index");
  auto* score = app.add_subcommand("score", "Score phrases and write the score TSV");
  auto* evaluate = app.add_subcommand("evaluate", "Spearman's rho of scores against annotations");
  auto* bins = app.add_subcommand("bins", "Equal-count bins of scores with mean human judgment");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*index) return cmd_index(cfg);
    if (*score) return cmd_score(cfg);
    if (*evaluate) return cmd_evaluate(cfg);
    if (*bins) return cmd_bins(cfg);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const rlcomp::ParameterError& e) {
    std::cerr << "rlcomp: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rlcomp: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
