#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rlcomp/metrics.hpp"
#include "rlcomp/pipeline.hpp"

namespace rlcomp {

/// 1-based ranks with ties sharing the mean of the positions they occupy.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rho: Pearson correlation of average ranks. Throws
/// ParameterError for mismatched lengths or fewer than two points, and
/// UndefinedValueError when either sequence is constant.
double spearman_rho(std::span<const double> xs, std::span<const double> ys);

/// Scott's rule M = R * N^(1/3) / (3.49 s) with s the sample standard
/// deviation, rounded to the nearest integer and clamped to [1, N].
/// Constant input gives 1. Throws ParameterError when N < 2.
std::size_t scott_bin_count(std::span<const double> values);

struct BinSummary {
  std::size_t bin_index = 0;
  std::size_t size = 0;
  double mean_score = 0.0;
  double mean_human = 0.0;
};

/// Sizes of M contiguous bins over N items: M-1 bins of ceil(N/M) and a last
/// bin with the remainder. When that leaves the last bin empty the items are
/// spread as evenly as possible instead (the first N mod M bins get one
/// extra). Throws ParameterError unless 1 <= M <= N.
std::vector<std::size_t> equal_count_bin_sizes(std::size_t n, std::size_t m);

/// Sorts (score, human) pairs ascending by score (then human) and cuts them
/// into bins of equal_count_bin_sizes(N, M).
std::vector<BinSummary> equal_count_bins(std::vector<std::pair<double, double>> scored,
                                         std::size_t m);

/// A phrase with four binary judgments (0 = compositional, 1 = not).
struct AnnotatedPhrase {
  Phrase phrase;
  std::array<int, 4> judgments{};

  double human_mean() const noexcept;
};

/// noncompositionality value per phrase key for one metric; nullopt marks a
/// phrase the pipeline could not score.
using MetricScores = std::map<std::string, std::optional<double>>;
using ScoreTable = std::map<MetricKind, MetricScores>;

struct MetricEvaluation {
  MetricKind kind = MetricKind::kRankL1;
  std::optional<double> rho;
  std::size_t scored = 0;
  std::size_t total = 0;
  std::size_t unscorable = 0;
  std::size_t missing = 0;
  std::string note;

  double coverage() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(scored) / static_cast<double>(total);
  }
};

struct EvaluationReport {
  std::size_t dataset_size = 0;
  std::vector<MetricEvaluation> metrics;
  /// Phrases present in the scores but absent from the dataset.
  std::vector<std::string> unmatched_scores;

  std::string to_text() const;
  std::string to_json() const;
};

/// Spearman's rho between each metric's noncompositionality values and the
/// mean human judgment, over the phrases that have a score. Throws
/// UndefinedValueError if some metric has fewer than two scored phrases.
EvaluationReport evaluate(std::span<const AnnotatedPhrase> dataset, const ScoreTable& scores);

/// Joins one metric's scores with the dataset, returning (score, human) pairs
/// in dataset order.
std::vector<std::pair<double, double>> join_scores(std::span<const AnnotatedPhrase> dataset,
                                                   const MetricScores& scores);

}  // namespace rlcomp
