#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "rlcomp/commands.hpp"
#include "rlcomp/corpus.hpp"
#include "rlcomp/error.hpp"
#include "rlcomp/eval.hpp"
#include "rlcomp/io.hpp"
#include "rlcomp/lexicon.hpp"
#include "rlcomp/metrics.hpp"
#include "rlcomp/pipeline.hpp"

namespace py = pybind11;
using namespace rlcomp;

namespace {

using Values = std::vector<double>;

py::dict score_to_dict(const PhraseScore& score) {
  py::dict out;
  out["phrase"] = score.phrase.text();
  out["profile"] = Values(score.profile.list.begin(), score.profile.list.end());
  py::list perturbations;
  for (std::size_t i = 0; i < score.perturbations.size(); ++i) {
    const auto& p = score.perturbations[i];
    py::dict item;
    item["phrase"] = p.text();
    item["replaced_index"] = p.replaced_index;
    item["substitute"] = p.substitute.substitute;
    item["relation"] = std::string(relation_key(p.substitute.relation));
    item["support_docs"] = p.substitute.support_docs;
    item["support_freq"] = p.substitute.support_freq;
    const auto& list = score.perturbed_profiles[i].list;
    item["profile"] = Values(list.begin(), list.end());
    perturbations.append(item);
  }
  out["perturbations"] = perturbations;
  py::dict metrics;
  for (const auto& m : score.metrics) {
    py::dict item;
    item["per_perturbation"] = m.per_perturbation;
    item["mean"] = m.mean;
    item["noncompositionality"] = m.noncompositionality;
    item["failure"] = m.failure;
    metrics[py::str(std::string(metric_key(m.kind)))] = item;
  }
  out["metrics"] = metrics;
  return out;
}

}  // namespace

PYBIND11_MODULE(_rlcomp, m) {
  m.doc() = "Compositionality detection with ranked lists of term weights";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<AlignmentError>(m, "AlignmentError", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<UndefinedValueError>(m, "UndefinedValueError", base.ptr());
  py::register_exception<AbsentTermError>(m, "AbsentTermError", base.ptr());
  py::register_exception<IndexError>(m, "IndexError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<UnscorablePhrase>(m, "UnscorablePhrase", base.ptr());

  // metrics
  m.def("metric_keys", [] {
    std::vector<std::string> keys;
    for (auto k : all_metrics()) keys.emplace_back(metric_key(k));
    return keys;
  });
  m.def("default_metric_keys", [] {
    std::vector<std::string> keys;
    for (auto k : default_metrics()) keys.emplace_back(metric_key(k));
    return keys;
  });
  m.def("polarity", [](const std::string& key) {
    return polarity_of(parse_metric(key)) == Polarity::kDistance ? "distance" : "correlation";
  });
  m.def("align", [](const Values& a, const Values& b, std::size_t cap) {
    auto pair = align(RankedList(a), RankedList(b), cap);
    return py::make_tuple(Values(pair.left().begin(), pair.left().end()),
                          Values(pair.right().begin(), pair.right().end()));
  }, py::arg("r1"), py::arg("r2"), py::arg("cap") = 1000);
  m.def("ranked_list", [](Values scores, std::size_t cap) {
    auto list = RankedList::from_scores(std::move(scores), cap);
    return Values(list.begin(), list.end());
  }, py::arg("scores"), py::arg("cap") = 1000,
     "Deduplicate, sort descending and truncate raw scores.");
  m.def("rank_l1", [](const Values& a, const Values& b) { return kernel::l1(a, b); });
  m.def("minkowski", [](const Values& a, const Values& b, double exponent) {
    return kernel::minkowski(a, b, exponent);
  }, py::arg("a"), py::arg("b"), py::arg("exponent"));
  m.def("chebyshev", [](const Values& a, const Values& b) { return kernel::chebyshev(a, b); });
  m.def("cosrank", [](const Values& a, const Values& b) { return kernel::cosine(a, b); });
  m.def("hamming", [](const Values& a, const Values& b, double epsilon) {
    return kernel::hamming(a, b, epsilon);
  }, py::arg("a"), py::arg("b"), py::arg("epsilon") = 0.0);
  m.def("hausdorff", [](const Values& a, const Values& b) { return kernel::hausdorff(a, b); });
  m.def("pearson", [](const Values& a, const Values& b) { return kernel::pearson(a, b); });
  m.def("tau_ap_one_sided", [](const Values& reference, const Values& other) {
    return kernel::tau_ap(reference, other);
  }, py::arg("reference"), py::arg("other"));
  m.def("symm_tau_ap", [](const Values& a, const Values& b) { return kernel::symm_tau_ap(a, b); });
  m.def("compare", [](const std::string& key, const Values& a, const Values& b, std::size_t cap,
                      double exponent, double epsilon) {
    return compare(parse_metric(key), RankedList(a), RankedList(b), cap, {exponent, epsilon}).value;
  }, py::arg("metric"), py::arg("r1"), py::arg("r2"), py::arg("cap") = 1000,
     py::arg("minkowski_exponent") = 1.0, py::arg("hamming_epsilon") = 0.0);
  m.def("to_noncompositionality", [](const std::string& key, double value) {
    return to_noncompositionality({parse_metric(key), value});
  });

  // corpus
  m.def("tokenize", &tokenize);
  m.def("tf_idf_weight", &tf_idf_weight, py::arg("freq"), py::arg("doc_length"),
        py::arg("doc_count"), py::arg("doc_freq"));

  py::class_<CorpusIndex>(m, "CorpusIndex")
      .def_static("ingest", [](const std::vector<std::pair<std::string, std::string>>& docs) {
        std::vector<RawDocument> raw;
        for (const auto& [id, text] : docs) raw.push_back({id, text});
        return CorpusIndex::ingest(std::move(raw));
      }, py::arg("documents"), "Build an index from (id, text) pairs.")
      .def_static("from_path", [](const std::filesystem::path& p) {
        return CorpusIndex::ingest(read_corpus(p));
      })
      .def_static("load", &CorpusIndex::load)
      .def("save", &CorpusIndex::save)
      .def_property_readonly("doc_count", &CorpusIndex::doc_count)
      .def_property_readonly("vocabulary_size", &CorpusIndex::vocabulary_size)
      .def("__contains__", &CorpusIndex::contains)
      .def("doc_freq", &CorpusIndex::doc_freq)
      .def("term_freq", py::overload_cast<std::string_view, std::string_view>(
                            &CorpusIndex::term_freq, py::const_))
      .def("tf_idf", &CorpusIndex::tf_idf, py::arg("term"), py::arg("doc"))
      .def("corpus_tf_idf", py::overload_cast<std::string_view>(&CorpusIndex::corpus_tf_idf,
                                                                py::const_))
      .def("top_docs_by_occurrence", [](const CorpusIndex& self,
                                        const std::vector<std::string>& terms, std::size_t k) {
        std::vector<std::string> ids;
        for (DocIndex d : self.top_docs_by_occurrence(terms, k)) ids.push_back(self.doc_id(d));
        return ids;
      }, py::arg("terms"), py::arg("k") = 100)
      .def("context_windows", [](const CorpusIndex& self, const std::string& term,
                                 std::size_t width) {
        return self.context_windows(term, width).context_counts;
      }, py::arg("term"), py::arg("width") = 5);

  // lexicon
  py::class_<Lexicon>(m, "Lexicon")
      .def(py::init<>())
      .def_static("load", &Lexicon::load)
      .def("add", [](Lexicon& self, const std::string& term, const std::string& relation,
                     const std::string& candidate) {
        self.add(term, parse_relation(relation), candidate);
      })
      .def("__len__", &Lexicon::size)
      .def("candidates", [](const Lexicon& self, const std::string& term) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& c : self.candidates(term)) {
          out.emplace_back(c.term, std::string(relation_key(c.relation)));
        }
        return out;
      });
  m.def("select_near_synonym", [](const std::string& term, const Lexicon& lexicon,
                                  const CorpusIndex& index, std::size_t k) -> py::object {
    const auto cands = lexicon.candidates(term);
    auto chosen = select_near_synonym(term, cands, index, k);
    if (!chosen) return py::none();
    return py::str(chosen->substitute);
  }, py::arg("term"), py::arg("lexicon"), py::arg("index"), py::arg("k") = 100);

  // pipeline
  py::class_<Scorer>(m, "Scorer")
      .def(py::init([](const CorpusIndex& index, const Lexicon& lexicon, std::size_t window,
                       std::size_t cap, std::size_t top_k, const std::vector<std::string>& metrics,
                       double exponent, double epsilon) {
             PipelineConfig config;
             config.window = window;
             config.cap = cap;
             config.top_k = top_k;
             config.params = {exponent, epsilon};
             if (!metrics.empty()) {
               config.metrics.clear();
               for (const auto& key : metrics) config.metrics.push_back(parse_metric(key));
             }
             return std::make_unique<Scorer>(index, lexicon, config);
           }),
           py::arg("index"), py::arg("lexicon"), py::arg("window") = 5, py::arg("cap") = 1000,
           py::arg("top_k") = 100, py::arg("metrics") = std::vector<std::string>{},
           py::arg("minkowski_exponent") = 1.0, py::arg("hamming_epsilon") = 0.0,
           py::keep_alive<1, 2>(), py::keep_alive<1, 3>())
      .def("profile", [](const Scorer& self, const std::vector<std::string>& terms) {
        auto prof = self.phrase_profile(terms);
        return Values(prof.list.begin(), prof.list.end());
      })
      .def("score", [](const Scorer& self, const std::string& phrase) {
        return score_to_dict(self.compositionality(Phrase::parse(phrase)));
      })
      .def("score_tsv", [](const Scorer& self, const std::vector<std::string>& phrases,
                           std::size_t threads) {
        std::vector<Phrase> parsed;
        for (const auto& p : phrases) parsed.push_back(Phrase::parse(p));
        std::ostringstream out;
        write_scores(out, self.score_all(parsed, threads), self.config().metrics);
        return out.str();
      }, py::arg("phrases"), py::arg("threads") = 1);

  // eval
  m.def("average_ranks", [](const Values& v) { return average_ranks(v); });
  m.def("spearman_rho", [](const Values& x, const Values& y) { return spearman_rho(x, y); });
  m.def("scott_bin_count", [](const Values& v) { return scott_bin_count(v); });
  m.def("equal_count_bins", [](std::vector<std::pair<double, double>> pairs, std::size_t bins) {
    std::vector<std::tuple<std::size_t, std::size_t, double, double>> out;
    for (const auto& b : equal_count_bins(std::move(pairs), bins)) {
      out.emplace_back(b.bin_index, b.size, b.mean_score, b.mean_human);
    }
    return out;
  }, py::arg("pairs"), py::arg("bins"));

  // end-to-end runs
  m.def("run_index", [](const std::filesystem::path& corpus, const std::filesystem::path& dir) {
    auto s = run_index(corpus, dir);
    return py::make_tuple(s.doc_count, s.vocabulary_size);
  });
  m.def("run_evaluate", [](const std::filesystem::path& dataset,
                           const std::filesystem::path& scores) {
    return py::module_::import("json").attr("loads")(run_evaluate(dataset, scores).to_json());
  });
}
