#include "rlcomp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "rlcomp/error.hpp"

namespace rlcomp {

Phrase Phrase::parse(std::string_view text) {
  Phrase phrase{tokenize(text)};
  if (phrase.terms.size() < 2) {
    throw FormatError("a phrase needs at least two terms: '" + std::string(text) + "'");
  }
  return phrase;
}

std::string Phrase::text() const {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<std::string> PerturbedPhrase::terms() const {
  std::vector<std::string> out = base.terms;
  out.at(replaced_index) = substitute.index_term;
  return out;
}

std::string PerturbedPhrase::text() const { return Phrase{terms()}.text(); }

void PipelineConfig::validate() const {
  if (window == 0) throw ParameterError("window width must be >= 1");
  if (cap == 0) throw ParameterError("list cap must be >= 1");
  if (top_k == 0) throw ParameterError("top-k documents must be >= 1");
  if (metrics.empty()) throw ParameterError("no metrics selected");
  rlcomp::validate(params);
}

const MetricResult& PhraseScore::result(MetricKind kind) const {
  for (const auto& m : metrics) {
    if (m.kind == kind) return m;
  }
  throw ParameterError("metric '" + std::string(metric_key(kind)) + "' was not scored");
}

Scorer::Scorer(const CorpusIndex& index, const Lexicon& lexicon, PipelineConfig config)
    : index_(index), lexicon_(lexicon), config_(std::move(config)) {
  config_.validate();
}

std::vector<PerturbedPhrase> Scorer::perturbations(const Phrase& phrase) const {
  if (phrase.terms.size() < 2) throw ParameterError("a phrase needs at least two terms");
  std::vector<PerturbedPhrase> out;
  for (std::size_t i = 0; i < phrase.terms.size(); ++i) {
    const auto candidates = lexicon_.candidates(phrase.terms[i]);
    if (candidates.empty()) continue;
    auto chosen = select_near_synonym(phrase.terms[i], candidates, index_, config_.top_k);
    if (!chosen) continue;
    out.push_back({phrase, i, std::move(*chosen)});
  }
  if (out.empty()) throw UnscorablePhrase(phrase.text(), "no_perturbation");
  return out;
}

std::shared_ptr<const std::vector<double>> Scorer::term_scores(const std::string& term) const {
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = cache_.find(term); it != cache_.end()) return it->second;
  }
  const auto id = index_.find(term);
  if (!id) throw AbsentTermError(term);
  auto scores = std::make_shared<std::vector<double>>();
  for (const auto& [context, count] : index_.context_counts(*id, config_.window)) {
    scores->push_back(index_.corpus_tf_idf(context));
  }
  std::unique_lock lock(cache_mutex_);
  return cache_.emplace(term, std::move(scores)).first->second;
}

PhraseProfile Scorer::phrase_profile(std::span<const std::string> terms) const {
  std::vector<double> merged;
  for (const auto& term : terms) {
    std::shared_ptr<const std::vector<double>> scores;
    try {
      scores = term_scores(term);
    } catch (const AbsentTermError& e) {
      throw UnscorablePhrase(Phrase{{terms.begin(), terms.end()}}.text(), "absent_term=" + e.term());
    }
    merged.insert(merged.end(), scores->begin(), scores->end());
  }
  return {{terms.begin(), terms.end()}, RankedList::from_scores(std::move(merged), config_.cap)};
}

PhraseScore Scorer::compositionality(const Phrase& phrase) const {
  PhraseScore score;
  score.phrase = phrase;
  score.profile = phrase_profile(phrase.terms);
  score.perturbations = perturbations(phrase);
  for (const auto& p : score.perturbations) {
    score.perturbed_profiles.push_back(phrase_profile(p.terms()));
  }
  if (score.profile.list.empty()) throw UnscorablePhrase(phrase.text(), "empty_profile");
  for (const auto& prof : score.perturbed_profiles) {
    if (prof.list.empty()) {
      throw UnscorablePhrase(phrase.text(), "empty_profile=" + Phrase{prof.terms}.text());
    }
  }

  for (MetricKind kind : config_.metrics) {
    MetricResult result{kind, {}, std::nullopt, std::nullopt, {}};
    try {
      for (const auto& prof : score.perturbed_profiles) {
        result.per_perturbation.push_back(
            compare(kind, score.profile.list, prof.list, config_.cap, config_.params).value);
      }
      double sum = 0.0;
      for (double v : result.per_perturbation) sum += v;
      const double mean = sum / static_cast<double>(result.per_perturbation.size());
      result.mean = mean;
      result.noncompositionality = to_noncompositionality({kind, mean});
    } catch (const UndefinedValueError&) {
      result.failure = "undefined_metric";
    }
    score.metrics.push_back(std::move(result));
  }
  return score;
}

std::vector<PhraseOutcome> Scorer::score_all(std::span<const Phrase> phrases,
                                             std::size_t threads) const {
  std::vector<PhraseOutcome> out(phrases.size());
  auto work = [&](std::size_t i) {
    out[i].phrase = phrases[i];
    try {
      out[i].score = compositionality(phrases[i]);
    } catch (const UnscorablePhrase& e) {
      out[i].reason = e.reason();
    }
  };

  threads = std::max<std::size_t>(1, std::min(threads, phrases.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < phrases.size(); ++i) work(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < phrases.size(); i = next++) {
          try {
            work(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<PerturbedPhrase> perturbations(const Phrase& phrase, const Lexicon& lexicon,
                                           const CorpusIndex& index, std::size_t top_k) {
  PipelineConfig config;
  config.top_k = top_k;
  return Scorer(index, lexicon, config).perturbations(phrase);
}

PhraseProfile phrase_profile(std::span<const std::string> terms, const CorpusIndex& index,
                             std::size_t window, std::size_t cap) {
  static const Lexicon kEmpty;
  PipelineConfig config;
  config.window = window;
  config.cap = cap;
  return Scorer(index, kEmpty, config).phrase_profile(terms);
}

PhraseScore compositionality(const Phrase& phrase, MetricKind kind, const Lexicon& lexicon,
                             const CorpusIndex& index, std::size_t window, std::size_t cap) {
  PipelineConfig config;
  config.window = window;
  config.cap = cap;
  config.metrics = {kind};
  return Scorer(index, lexicon, config).compositionality(phrase);
}

}  // namespace rlcomp
