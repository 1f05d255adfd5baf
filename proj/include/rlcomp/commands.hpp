#pragma once

// The four end-to-end runs behind the `rlcomp` subcommands. Each is a pure
// function of its inputs: the same files in give the same bytes out.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rlcomp/eval.hpp"
#include "rlcomp/pipeline.hpp"

namespace rlcomp {

struct IndexSummary {
  std::size_t doc_count = 0;
  std::size_t vocabulary_size = 0;
  std::uint64_t token_count = 0;
};

/// Reads a corpus (directory or JSON lines), builds the index and saves it.
IndexSummary run_index(const std::filesystem::path& corpus, const std::filesystem::path& index_dir);

struct ScoreRequest {
  std::filesystem::path index_dir;
  std::filesystem::path lexicon;
  std::filesystem::path phrases;
  PipelineConfig pipeline;
  std::size_t threads = 1;
};

struct ScoreSummary {
  std::size_t phrases = 0;
  std::size_t scored = 0;
  std::size_t unscorable = 0;
};

/// Scores every phrase of request.phrases and writes the score TSV to `out`.
ScoreSummary run_score(const ScoreRequest& request, std::ostream& out);

EvaluationReport run_evaluate(const std::filesystem::path& dataset,
                              const std::filesystem::path& scores);

struct MetricBins {
  MetricKind kind;
  std::size_t points = 0;
  std::size_t bin_count = 0;
  std::vector<BinSummary> bins;
};

/// Bins each metric's scored phrases. The bin count comes from Scott's rule
/// unless `bin_count` is given.
std::vector<MetricBins> run_bins(const std::filesystem::path& dataset,
                                 const std::filesystem::path& scores,
                                 std::optional<std::size_t> bin_count = std::nullopt);

}  // namespace rlcomp
