#include "rlcomp/commands.hpp"

#include <ostream>

#include "rlcomp/corpus.hpp"
#include "rlcomp/error.hpp"
#include "rlcomp/io.hpp"
#include "rlcomp/lexicon.hpp"

namespace rlcomp {

IndexSummary run_index(const std::filesystem::path& corpus, const std::filesystem::path& index_dir) {
  if (!std::filesystem::exists(corpus)) throw IndexError("corpus not found: " + corpus.string());
  const CorpusIndex index = CorpusIndex::ingest(read_corpus(corpus));
  index.save(index_dir);
  return {index.doc_count(), index.vocabulary_size(), index.token_count()};
}

ScoreSummary run_score(const ScoreRequest& request, std::ostream& out) {
  request.pipeline.validate();
  const auto phrases = read_phrases(request.phrases);
  const CorpusIndex index = CorpusIndex::load(request.index_dir);
  const Lexicon lexicon = Lexicon::load(request.lexicon);
  const Scorer scorer(index, lexicon, request.pipeline);
  const auto outcomes = scorer.score_all(phrases, request.threads);
  write_scores(out, outcomes, request.pipeline.metrics);

  ScoreSummary summary;
  summary.phrases = outcomes.size();
  for (const auto& o : outcomes) (o.score ? summary.scored : summary.unscorable)++;
  return summary;
}

EvaluationReport run_evaluate(const std::filesystem::path& dataset,
                              const std::filesystem::path& scores) {
  const auto annotated = read_dataset(dataset);
  return evaluate(annotated, read_scores(scores));
}

std::vector<MetricBins> run_bins(const std::filesystem::path& dataset,
                                 const std::filesystem::path& scores,
                                 std::optional<std::size_t> bin_count) {
  const auto annotated = read_dataset(dataset);
  const ScoreTable table = read_scores(scores);
  std::vector<MetricBins> out;
  for (const auto& [kind, per_phrase] : table) {
    auto pairs = join_scores(annotated, per_phrase);
    if (pairs.size() < 2) {
      throw UndefinedValueError("metric " + std::string(metric_key(kind)) +
                                " has fewer than two scored phrases");
    }
    std::vector<double> values;
    values.reserve(pairs.size());
    for (const auto& [score, human] : pairs) values.push_back(score);
    MetricBins result{kind, pairs.size(), bin_count.value_or(scott_bin_count(values)), {}};
    result.bins = equal_count_bins(std::move(pairs), result.bin_count);
    out.push_back(std::move(result));
  }
  return out;
}

}  // namespace rlcomp
