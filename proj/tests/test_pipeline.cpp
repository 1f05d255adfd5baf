#include <gtest/gtest.h>

#include <sstream>

#include "rlcomp/corpus.hpp"
#include "rlcomp/error.hpp"
#include "rlcomp/io.hpp"
#include "rlcomp/lexicon.hpp"
#include "rlcomp/pipeline.hpp"
#include "test_support.hpp"

namespace rlcomp {
namespace {

using testing_support::toy_dir;

class ToyFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    index_ = new CorpusIndex(CorpusIndex::ingest(read_corpus(toy_dir() / "corpus.jsonl")));
    lexicon_ = new Lexicon(Lexicon::load(toy_dir() / "lexicon.tsv"));
  }
  static void TearDownTestSuite() {
    delete index_;
    delete lexicon_;
  }
  static const CorpusIndex& index() { return *index_; }
  static const Lexicon& lexicon() { return *lexicon_; }

 private:
  static inline CorpusIndex* index_ = nullptr;
  static inline Lexicon* lexicon_ = nullptr;
};

Lexicon parse_lexicon(const std::string& text) {
  std::istringstream in(text);
  return Lexicon::parse(in);
}

TEST(PhraseTest, ParseAndText) {
  EXPECT_EQ(Phrase::parse("Red  Tape").text(), "red tape");
  EXPECT_EQ(Phrase::parse("a b c").terms.size(), 3u);
  EXPECT_THROW(Phrase::parse("solo"), FormatError);
}

TEST(PipelineConfigTest, Validation) {
  PipelineConfig c;
  EXPECT_NO_THROW(c.validate());
  c.window = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.metrics.clear();
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.params.minkowski_exponent = 0.5;
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST_F(ToyFixture, RedCarPerturbations) {
  auto ps = perturbations(Phrase::parse("red car"), lexicon(), index());
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].text(), "scarlet car");
  EXPECT_EQ(ps[1].text(), "red vehicle");
  for (const auto& p : ps) {
    std::size_t differing = 0;
    for (std::size_t i = 0; i < 2; ++i) differing += p.terms()[i] != p.base.terms[i];
    EXPECT_EQ(differing, 1u);
  }
}

TEST(PerturbationTest, OneOrNoTermsWithCandidates) {
  auto index = CorpusIndex::ingest({{"d1", "red car vehicle scarlet"}, {"d2", "tape"}});
  auto lex = parse_lexicon("car\thypernym\tvehicle\n");
  EXPECT_EQ(perturbations(Phrase::parse("red car"), lex, index).size(), 1u);
  try {
    perturbations(Phrase::parse("red tape"), lex, index);
    FAIL() << "expected UnscorablePhrase";
  } catch (const UnscorablePhrase& e) {
    EXPECT_EQ(e.reason(), "no_perturbation");
    EXPECT_EQ(e.phrase(), "red tape");
  }
}

TEST_F(ToyFixture, ProfileIsDedupedUnionOfTermScores) {
  const std::vector<std::string> terms{"red", "tape"};
  auto profile = phrase_profile(terms, index(), 5, 1000);
  // independent reconstruction from the public index API
  std::vector<double> scores;
  for (const auto& t : terms) {
    for (const auto& [ctx, count] : index().context_windows(t, 5).context_counts) {
      scores.push_back(index().corpus_tf_idf(ctx));
    }
  }
  std::sort(scores.begin(), scores.end(), std::greater<>());
  scores.erase(std::unique(scores.begin(), scores.end()), scores.end());
  EXPECT_EQ(std::vector<double>(profile.list.begin(), profile.list.end()), scores);

  auto capped = phrase_profile(terms, index(), 5, 3);
  ASSERT_EQ(capped.list.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(capped.list[i], scores[i]);
}

TEST(ProfileTest, BoundedByContextSize) {
  auto index = CorpusIndex::ingest(
      {{"d1", "a b c d e t f g h i j"}, {"d2", "a b c d e f g h i j k l"}});
  const std::vector<std::string> terms{"t"};
  EXPECT_LE(phrase_profile(terms, index, 5, 1000).list.size(), 10u);
}

TEST(ProfileTest, AbsentTermIsUnscorable) {
  auto index = CorpusIndex::ingest({{"d1", "a b"}});
  const std::vector<std::string> terms{"a", "zzz"};
  try {
    phrase_profile(terms, index, 5, 1000);
    FAIL() << "expected UnscorablePhrase";
  } catch (const UnscorablePhrase& e) {
    EXPECT_EQ(e.reason(), "absent_term=zzz");
  }
}

TEST(CompositionalityTest, IdenticalContextsGiveIdentityScores) {
  // x and y occupy identical contexts, so swapping them changes nothing
  auto index = CorpusIndex::ingest(
      {{"d1", "a b x c d"}, {"d2", "a b y c d"}, {"d3", "e k f"}, {"d4", "g"}});
  auto lex = parse_lexicon("x\tsynonym\ty\n");
  PipelineConfig config;
  config.metrics.assign(all_metrics().begin(), all_metrics().end());
  Scorer scorer(index, lex, config);
  auto score = scorer.compositionality(Phrase::parse("x k"));
  ASSERT_EQ(score.perturbations.size(), 1u);
  EXPECT_EQ(score.perturbations[0].text(), "y k");
  for (const auto& m : score.metrics) {
    ASSERT_TRUE(m.mean.has_value()) << metric_key(m.kind) << " " << m.failure;
    if (polarity_of(m.kind) == Polarity::kDistance) {
      EXPECT_EQ(*m.mean, 0.0) << metric_key(m.kind);
    } else {
      EXPECT_NEAR(*m.mean, 1.0, 1e-12) << metric_key(m.kind);
    }
  }
}

TEST_F(ToyFixture, MeanOverPerturbations) {
  PipelineConfig config;
  config.metrics.assign(all_metrics().begin(), all_metrics().end());
  config.params.minkowski_exponent = 2.0;
  Scorer scorer(index(), lexicon(), config);
  for (const char* text : {"red car", "red tape", "blue ribbon"}) {
    auto score = scorer.compositionality(Phrase::parse(text));
    for (const auto& m : score.metrics) {
      ASSERT_EQ(m.per_perturbation.size(), score.perturbations.size());
      if (!m.mean) continue;
      double sum = 0;
      for (double v : m.per_perturbation) sum += v;
      EXPECT_DOUBLE_EQ(*m.mean, sum / static_cast<double>(m.per_perturbation.size()));
      EXPECT_EQ(*m.noncompositionality, to_noncompositionality({m.kind, *m.mean}));
    }
  }
}

TEST_F(ToyFixture, RedTapeLessCompositionalThanRedCar) {
  Scorer scorer(index(), lexicon());
  auto car = scorer.compositionality(Phrase::parse("red car"));
  auto tape = scorer.compositionality(Phrase::parse("red tape"));
  for (MetricKind kind : {MetricKind::kRankL1, MetricKind::kCosRank, MetricKind::kPearson,
                          MetricKind::kSymmTauAp}) {
    const auto& a = car.result(kind);
    const auto& b = tape.result(kind);
    ASSERT_TRUE(a.noncompositionality && b.noncompositionality) << metric_key(kind);
    EXPECT_LT(*a.noncompositionality, *b.noncompositionality) << metric_key(kind);
  }
}

TEST_F(ToyFixture, ParallelScoringMatchesSequential) {
  Scorer scorer(index(), lexicon());
  std::vector<Phrase> phrases;
  for (const char* p : {"red car", "red tape", "blue car", "blue ribbon", "red ribbon",
                        "tape ribbon", "zzz car", "car vehicle"}) {
    phrases.push_back(Phrase::parse(p));
  }
  auto render = [&](std::size_t threads) {
    Scorer fresh(index(), lexicon());
    std::ostringstream out;
    write_scores(out, fresh.score_all(phrases, threads), fresh.config().metrics);
    return out.str();
  };
  const auto sequential = render(1);
  for (std::size_t threads : {2u, 4u, 8u}) EXPECT_EQ(render(threads), sequential);

  auto outcomes = scorer.score_all(phrases, 4);
  ASSERT_EQ(outcomes.size(), phrases.size());
  for (std::size_t i = 0; i < phrases.size(); ++i) EXPECT_EQ(outcomes[i].phrase, phrases[i]);
  EXPECT_EQ(outcomes[6].reason, "absent_term=zzz");
}

}  // namespace
}  // namespace rlcomp
