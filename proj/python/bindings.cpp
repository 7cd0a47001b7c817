// Python bindings for the core operations: ingestion, filtering, extraction,
// prompts, graph metrics, and the statistics helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "kgforge/curate.hpp"
#include "kgforge/embeddings.hpp"
#include "kgforge/extract.hpp"
#include "kgforge/filter.hpp"
#include "kgforge/kb.hpp"
#include "kgforge/metrics.hpp"
#include "kgforge/prompts.hpp"
#include "kgforge/stats.hpp"
#include "kgforge/textgen.hpp"
#include "kgforge/version.hpp"

namespace py = pybind11;
using namespace kgforge;

namespace {

Triple triple_from_tuple(const std::vector<std::string>& t) {
    if (t.size() != 3) throw py::value_error("a triple needs exactly 3 strings");
    return Triple{t[0], t[1], t[2]};
}

std::vector<Triple> triples_from_lists(const std::vector<std::vector<std::string>>& lists) {
    std::vector<Triple> out;
    out.reserve(lists.size());
    for (const auto& t : lists) out.push_back(triple_from_tuple(t));
    return out;
}

py::list triples_to_lists(const std::vector<Triple>& triples) {
    py::list out;
    for (const Triple& t : triples) {
        py::list row;
        row.append(t.subject);
        row.append(t.predicate);
        row.append(t.object);
        out.append(row);
    }
    return out;
}

py::dict subgraph_to_dict(const Subgraph& sg) {
    py::dict d;
    d["seed"] = sg.seed;
    d["m"] = sg.m;
    d["k"] = sg.k;
    d["triples"] = triples_to_lists(sg.triples);
    d["hops"] = sg.hops;
    return d;
}

}  // namespace

PYBIND11_MODULE(_kgforge, m) {
    m.doc() = "knowledge-graph dataset pipeline and evaluation toolkit";
    m.attr("__version__") = kVersion;

    py::class_<KnowledgeBase>(m, "KnowledgeBase")
        .def_static(
            "from_tsv",
            [](const std::string& path, const std::optional<std::string>& categories) {
                std::optional<std::filesystem::path> cat;
                if (categories) cat = *categories;
                return ingest_tsv(path, cat).kb;
            },
            py::arg("path"), py::arg("categories") = std::nullopt)
        .def_static("from_wikidata_json",
                    [](const std::string& path, const std::string& language) {
                        return ingest_wikidata_json(path, language).kb;
                    },
                    py::arg("path"), py::arg("language") = "en")
        .def_static("load_snapshot",
                    [](const std::string& path) { return KnowledgeBase::load_snapshot(path); })
        .def("save_snapshot",
             [](const KnowledgeBase& kb, const std::string& path) { kb.save_snapshot(path); })
        .def("__len__", &KnowledgeBase::size)
        .def("outgoing",
             [](const KnowledgeBase& kb, const std::string& subject) {
                 return triples_to_lists(kb.outgoing(subject));
             })
        .def("sample_seed", [](const KnowledgeBase& kb, const std::string& category,
                               uint64_t seed) {
            Rng rng(seed);
            return kb.sample_seed(category, rng);
        });

    py::class_<Blacklist>(m, "Blacklist")
        .def(py::init<>())
        .def_static("load_tsv", [](const std::string& path) { return Blacklist::load_tsv(path); })
        .def("insert", &Blacklist::insert, py::arg("label"), py::arg("external_id") = "")
        .def("contains",
             [](const Blacklist& b, const std::string& label, const std::string& id) {
                 return b.contains(label, id);
             },
             py::arg("label"), py::arg("external_id") = "")
        .def("__len__", &Blacklist::size);

    m.def(
        "apply_rules",
        [](const std::vector<std::string>& triple) {
            FilterVerdict v = apply_rules(triple_from_tuple(triple));
            return py::make_tuple(v.passed,
                                  v.failed_rule ? py::cast(v.failed_rule_name()) : py::none());
        },
        "evaluate the seven triple rules; returns (passed, failed_rule)");

    m.def("no_expand",
          [](const Blacklist& b, const std::string& label, const std::string& id) {
              return no_expand(b, label, id);
          },
          py::arg("blacklist"), py::arg("label"), py::arg("external_id") = "");

    m.def("valid_candidates",
          [](const KnowledgeBase& kb, const Blacklist& b, const std::string& subject) {
              return triples_to_lists(valid_candidates(kb, b, subject));
          });

    m.def(
        "extract",
        [](const KnowledgeBase& kb, const Blacklist& b, const std::string& seed, int m, int k,
           uint64_t rng_seed, bool take_first) {
            ExtractionConfig cfg;
            cfg.m = m;
            cfg.k = k;
            cfg.rng_seed = rng_seed;
            cfg.sample_mode = take_first ? SampleMode::kTakeFirst : SampleMode::kUniform;
            Rng rng(rng_seed);
            return subgraph_to_dict(extract(kb, b, seed, cfg, rng));
        },
        py::arg("kb"), py::arg("blacklist"), py::arg("seed"), py::arg("m") = 4, py::arg("k") = 6,
        py::arg("rng_seed") = 0, py::arg("take_first") = false);

    m.def("triple_to_sentence", [](const std::vector<std::string>& t) {
        return triple_to_sentence(triple_from_tuple(t));
    });
    m.def("bleu_similarity",
          [](const std::string& a, const std::string& b) { return bleu_similarity(a, b); });
    m.def("rouge_similarity",
          [](const std::string& a, const std::string& b) { return rouge_similarity(a, b); });

    m.def(
        "g_score",
        [](const std::vector<std::vector<std::string>>& pred,
           const std::vector<std::vector<std::string>>& ref, const std::string& metric) {
            GraphMetric gm;
            if (metric == "g-bleu")
                gm = GraphMetric::kBleu;
            else if (metric == "g-rouge")
                gm = GraphMetric::kRouge;
            else if (metric == "g-bs")
                gm = GraphMetric::kBert;
            else
                throw py::value_error("metric must be g-bleu, g-rouge, or g-bs");
            TrigramHashEmbedder embedder;
            GraphScore score = g_score(triples_from_lists(pred), triples_from_lists(ref), gm,
                                       &embedder);
            py::dict d;
            d["precision"] = score.precision;
            d["recall"] = score.recall;
            d["f1"] = score.f1;
            py::list alignment;
            for (const MatchEdge& e : score.alignment)
                alignment.append(py::make_tuple(e.pred, e.ref, e.similarity));
            d["alignment"] = alignment;
            return d;
        },
        py::arg("pred"), py::arg("ref"), py::arg("metric") = "g-bleu");

    m.def(
        "bertscore_text",
        [](const std::string& candidate, const std::string& reference) {
            TrigramHashEmbedder embedder;
            BertScore s = bertscore_text(candidate, reference, embedder);
            return py::make_tuple(s.precision, s.recall, s.f1);
        },
        "token-level greedy matching with the offline trigram embedder");

    m.def("render_kg2text_prompt", [](const std::vector<std::vector<std::string>>& triples) {
        return render_kg2text_prompt(triples_from_lists(triples));
    });
    m.def("render_text2kg_prompt",
          [](const std::string& text) { return render_text2kg_prompt(text); });

    m.def("wasserstein1", [](const std::vector<double>& xs, const std::vector<double>& ys) {
        return wasserstein1(xs, ys);
    });
    m.def(
        "bootstrap_ci",
        [](const std::vector<double>& scores, int iters, double level, uint64_t seed) {
            auto [lo, hi] = bootstrap_ci(scores, iters, level, seed);
            return py::make_tuple(lo, hi);
        },
        py::arg("scores"), py::arg("iters") = 10000, py::arg("level") = 0.95,
        py::arg("seed") = 0);
    m.def("wilcoxon_signed_rank",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              return wilcoxon_signed_rank(PairedScores{a, b});
          });
    m.def(
        "summarize",
        [](const std::vector<double>& values) {
            DistributionSummary s = summarize(values);
            py::dict d;
            d["n"] = s.n;
            d["min"] = s.min;
            d["avg"] = s.avg;
            d["median"] = s.median;
            d["max"] = s.max;
            return d;
        },
        "min/avg/median/max summary of a value list");
}
