#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rlcomp/corpus.hpp"
#include "rlcomp/lexicon.hpp"
#include "rlcomp/metrics.hpp"

namespace rlcomp {

/// Two or more normalized terms.
struct Phrase {
  std::vector<std::string> terms;

  /// Tokenizes `text`; throws FormatError when fewer than two tokens remain.
  static Phrase parse(std::string_view text);
  /// Terms joined by single spaces. Used as the phrase key in files.
  std::string text() const;

  friend bool operator==(const Phrase&, const Phrase&) = default;
};

/// A phrase with exactly one term replaced by its near-synonym.
struct PerturbedPhrase {
  Phrase base;
  std::size_t replaced_index = 0;
  NearSynonym substitute;

  /// Terms used to build the profile: the base terms with the replaced
  /// position set to substitute.index_term.
  std::vector<std::string> terms() const;
  std::string text() const;
};

struct PhraseProfile {
  std::vector<std::string> terms;
  RankedList list;
};

struct PipelineConfig {
  std::size_t window = 5;
  std::size_t cap = 1000;
  std::size_t top_k = 100;
  MetricParams params;
  std::vector<MetricKind> metrics{default_metrics().begin(), default_metrics().end()};

  /// Throws ParameterError on window, cap or top_k of zero, bad metric
  /// parameters, or an empty metric selection.
  void validate() const;
};

/// Result of one metric for one phrase.
struct MetricResult {
  MetricKind kind;
  /// Value of the metric for each perturbation, in perturbation order.
  std::vector<double> per_perturbation;
  /// Arithmetic mean over perturbations; empty when the metric is undefined
  /// for at least one perturbation.
  std::optional<double> mean;
  std::optional<double> noncompositionality;
  /// Why `mean` is empty.
  std::string failure;
};

struct PhraseScore {
  Phrase phrase;
  PhraseProfile profile;
  std::vector<PerturbedPhrase> perturbations;
  std::vector<PhraseProfile> perturbed_profiles;
  std::vector<MetricResult> metrics;

  const MetricResult& result(MetricKind kind) const;
};

/// Either a score or the reason a phrase could not be scored.
struct PhraseOutcome {
  Phrase phrase;
  std::optional<PhraseScore> score;
  std::string reason;
};

/// Scores phrases against one corpus and lexicon. Per-term TF-IDF lists are
/// cached and shared between original and perturbed phrases. A Scorer may be
/// used from several threads at once; the index and lexicon must outlive it.
class Scorer {
 public:
  Scorer(const CorpusIndex& index, const Lexicon& lexicon, PipelineConfig config = {});

  const PipelineConfig& config() const noexcept { return config_; }

  /// One perturbation per term that has a near-synonym, in term order.
  /// Throws UnscorablePhrase("no_perturbation") when there are none.
  std::vector<PerturbedPhrase> perturbations(const Phrase& phrase) const;

  /// Merged, deduplicated, descending TF-IDF scores of the context terms of
  /// every term, cut to the configured cap. Throws UnscorablePhrase naming
  /// the first term missing from the corpus.
  PhraseProfile phrase_profile(std::span<const std::string> terms) const;

  /// Mean of each configured metric between the phrase profile and each
  /// perturbed profile.
  PhraseScore compositionality(const Phrase& phrase) const;

  /// Scores every phrase, catching UnscorablePhrase into the outcome.
  /// Output order matches input order whatever the thread count.
  std::vector<PhraseOutcome> score_all(std::span<const Phrase> phrases,
                                       std::size_t threads = 1) const;

 private:
  std::shared_ptr<const std::vector<double>> term_scores(const std::string& term) const;

  const CorpusIndex& index_;
  const Lexicon& lexicon_;
  PipelineConfig config_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::string, std::shared_ptr<const std::vector<double>>> cache_;
};

// Convenience wrappers building a one-off Scorer.
std::vector<PerturbedPhrase> perturbations(const Phrase& phrase, const Lexicon& lexicon,
                                           const CorpusIndex& index, std::size_t top_k = 100);
PhraseProfile phrase_profile(std::span<const std::string> terms, const CorpusIndex& index,
                             std::size_t window = 5, std::size_t cap = 1000);
PhraseScore compositionality(const Phrase& phrase, MetricKind kind, const Lexicon& lexicon,
                             const CorpusIndex& index, std::size_t window = 5,
                             std::size_t cap = 1000);

}  // namespace rlcomp
