// kgforge: knowledge-graph dataset pipeline and evaluation toolkit.
//
// Subcommands cover the full path from a raw dump to a scored model:
//   ingest -> curate-blacklist -> extract -> generate-text -> assemble
// plus stats / evaluate / compare / check for analysis and verification.
//
// Exit codes: 0 success, 2 usage or unreadable input, 3 partial failure
// (a report says what was lost), 4 backend unavailable.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <atomic>
#include <map>
#include <memory>
#include <thread>

#include <json.hpp>

#include "kgforge/curate.hpp"
#include "kgforge/embeddings.hpp"
#include "kgforge/errors.hpp"
#include "kgforge/extract.hpp"
#include "kgforge/filter.hpp"
#include "kgforge/kb.hpp"
#include "kgforge/llm_client.hpp"
#include "kgforge/manifest.hpp"
#include "kgforge/metrics.hpp"
#include "kgforge/prompts.hpp"
#include "kgforge/stats.hpp"
#include "kgforge/textgen.hpp"
#include "kgforge/version.hpp"

namespace fs = std::filesystem;
using namespace kgforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;
constexpr int kExitBackend = 4;

struct ManifestWriter {
    RunManifest manifest;

    explicit ManifestWriter(std::string subcommand) {
        manifest.subcommand = std::move(subcommand);
        manifest.artifact_version = kVersion;
        manifest.started_at = iso8601_utc_now();
    }

    void set(const std::string& key, const std::string& value) { manifest.config[key] = value; }
    void set(const std::string& key, uint64_t value) { set(key, std::to_string(value)); }
    void set(const std::string& key, double value) { set(key, std::to_string(value)); }

    void finish(const fs::path& path, const std::string& outcome) {
        manifest.outcome = outcome;
        manifest.finished_at = iso8601_utc_now();
        manifest.write(path);
    }
};

fs::path manifest_path_for(const fs::path& primary_output) {
    fs::path p = primary_output;
    p += ".manifest.json";
    return p;
}

Blacklist load_blacklist_or_empty(const std::string& path) {
    if (path.empty()) return {};
    return Blacklist::load_tsv(path);
}

RuleConfig load_rules(const std::string& predicate_blacklist_path) {
    if (predicate_blacklist_path.empty()) return RuleConfig::defaults();
    return RuleConfig::from_file(predicate_blacklist_path);
}

std::unique_ptr<EmbeddingProvider> make_embedder(const std::string& kind) {
    if (kind == "stub") return std::make_unique<TrigramHashEmbedder>();
    if (kind == "http")
        return std::make_unique<HttpEmbeddingClient>(EmbeddingEndpointConfig::from_env());
    throw FormatError("unknown embedder '" + kind + "' (want: stub | http)");
}

struct MetricChoice {
    GraphMetric graph_metric = GraphMetric::kBleu;
    bool text_level = false;  // plain text bertscore instead of a graph metric
};

MetricChoice parse_metric(const std::string& name) {
    if (name == "g-bleu") return {GraphMetric::kBleu, false};
    if (name == "g-rouge") return {GraphMetric::kRouge, false};
    if (name == "g-bs") return {GraphMetric::kBert, false};
    if (name == "bertscore") return {GraphMetric::kBert, true};
    throw FormatError("unknown metric '" + name + "' (want: g-bleu | g-rouge | g-bs | bertscore)");
}

struct ScoredSample {
    std::string id;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

// Per-sample scores over the id intersection of predictions and references.
// Pure per-pair work, so it fans out across `jobs` workers; output order
// follows the prediction file regardless of scheduling.
std::vector<ScoredSample> score_pairs(const std::vector<EvalRecord>& predictions,
                                      const std::vector<EvalRecord>& references,
                                      const MetricChoice& metric,
                                      const EmbeddingProvider* embedder, int jobs = 1) {
    std::map<std::string, const EvalRecord*> by_id;
    for (const EvalRecord& r : references) by_id.emplace(r.id, &r);

    std::vector<std::pair<const EvalRecord*, const EvalRecord*>> pairs;
    size_t unmatched = 0;
    for (const EvalRecord& pred : predictions) {
        auto it = by_id.find(pred.id);
        if (it == by_id.end())
            ++unmatched;
        else
            pairs.emplace_back(&pred, it->second);
    }
    if (unmatched > 0)
        std::cerr << "warning: " << unmatched
                  << " prediction record(s) had no reference with the same id\n";
    if (pairs.empty()) throw FormatError("no prediction/reference pairs share an id");

    std::vector<ScoredSample> scored(pairs.size());
    auto score_one = [&](size_t i) {
        const EvalRecord& pred = *pairs[i].first;
        const EvalRecord& ref = *pairs[i].second;
        ScoredSample s;
        s.id = pred.id;
        if (metric.text_level) {
            if (!pred.text.empty() && !ref.text.empty()) {
                BertScore bs = bertscore_text(pred.text, ref.text, *embedder);
                s.precision = bs.precision;
                s.recall = bs.recall;
                s.f1 = bs.f1;
            }
        } else {
            GraphScore gs = g_score(pred.triples, ref.triples, metric.graph_metric, embedder);
            s.precision = gs.precision;
            s.recall = gs.recall;
            s.f1 = gs.f1;
        }
        scored[i] = std::move(s);
    };

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < pairs.size(); ++i) score_one(i);
    } else {
        std::atomic<size_t> cursor{0};
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= pairs.size()) return;
                    score_one(i);
                }
            });
        for (std::thread& t : workers) t.join();
    }
    return scored;
}

double mean_f1_x100(const std::vector<ScoredSample>& scored) {
    double sum = 0;
    for (const ScoredSample& s : scored) sum += s.f1;
    return 100.0 * sum / static_cast<double>(scored.size());
}

void write_scores_csv(const fs::path& path, const std::vector<ScoredSample>& scored) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "id,precision,recall,f1\n";
    char buf[128];
    for (const ScoredSample& s : scored) {
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f\n", s.id.c_str(), 100.0 * s.precision,
                      100.0 * s.recall, 100.0 * s.f1);
        out << buf;
    }
}

std::string format_summary_csv_row(const std::string& side, const DistributionSummary& s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%zu,%.2f,%.2f,%.2f,%.2f", side.c_str(), s.n, s.min, s.avg,
                  s.median, s.max);
    return buf;
}

int cmd_ingest(const std::string& input, const std::string& format, const std::string& language,
               const std::string& categories, const std::string& output,
               const std::string& export_tsv) {
    ManifestWriter mw("ingest");
    mw.set("input", input);
    mw.set("format", format);
    mw.manifest.inputs.push_back(input);

    IngestResult result;
    if (format == "tsv") {
        std::optional<fs::path> cat;
        if (!categories.empty()) {
            cat = categories;
            mw.manifest.inputs.push_back(categories);
        }
        result = ingest_tsv(input, cat);
    } else if (format == "wikidata-json") {
        mw.set("language", language);
        result = ingest_wikidata_json(input, language);
    } else {
        throw FormatError("unknown format '" + format + "' (want: tsv | wikidata-json)");
    }

    result.kb.save_snapshot(output);
    mw.manifest.outputs.push_back(output);
    if (!export_tsv.empty()) {
        result.kb.export_tsv(export_tsv);
        mw.manifest.outputs.push_back(export_tsv);
    }

    const IngestReport& r = result.report;
    std::cout << "ingested " << r.triples_added << " triples (" << r.duplicates << " duplicates, "
              << r.malformed << " malformed lines";
    if (format == "wikidata-json")
        std::cout << ", " << r.entities << " entities, " << r.values_skipped
                  << " values skipped";
    std::cout << ")\nsnapshot: " << output << "\n";
    mw.finish(manifest_path_for(output), "ok");
    return kExitOk;
}

int cmd_curate(const std::string& kb_path, const std::string& blacklist_path,
               const std::string& output, const std::string& audit, const CurateConfig& cfg,
               const std::string& evaluator_kind) {
    ManifestWriter mw("curate-blacklist");
    mw.set("kb", kb_path);
    mw.set("traversals", static_cast<uint64_t>(cfg.n_traversals));
    mw.set("sample_per_traversal", static_cast<uint64_t>(cfg.sample_per_traversal));
    mw.set("m", static_cast<uint64_t>(cfg.m));
    mw.set("k", static_cast<uint64_t>(cfg.k));
    mw.set("category", cfg.category);
    mw.set("evaluator", evaluator_kind);
    mw.manifest.seeds.push_back(cfg.rng_seed);
    mw.manifest.inputs.push_back(kb_path);
    if (!blacklist_path.empty()) mw.manifest.inputs.push_back(blacklist_path);

    KnowledgeBase kb = KnowledgeBase::load_snapshot(kb_path);
    Blacklist seed_blacklist = load_blacklist_or_empty(blacklist_path);

    std::unique_ptr<LlmClient> evaluator;
    if (evaluator_kind == "stub")
        evaluator = std::make_unique<RuleStubEvaluator>();
    else if (evaluator_kind == "http")
        evaluator = std::make_unique<HttpLlmClient>(LlmEndpointConfig::from_env());
    else
        throw FormatError("unknown evaluator '" + evaluator_kind + "' (want: stub | http)");

    CurateResult result = curate(kb, seed_blacklist, cfg, *evaluator, fs::path(audit));
    result.blacklist.save_tsv(output);
    mw.manifest.outputs.push_back(output);
    mw.manifest.outputs.push_back(audit);

    std::cout << "candidates screened: " << result.candidates.entities.size()
              << "\nentities added: " << result.added
              << "\nblacklist size: " << result.blacklist.size() << "\naudit: " << audit << "\n";
    mw.finish(manifest_path_for(output), "ok");
    return kExitOk;
}

int cmd_extract(const std::string& kb_path, const std::string& blacklist_path,
                const std::string& recipe_path, const std::string& preset, int count, int m, int k,
                const BatchOptions& options, const std::string& output,
                const std::string& predicate_blacklist) {
    ManifestWriter mw("extract");
    mw.set("kb", kb_path);
    mw.set("category", options.category);
    mw.set("jobs", static_cast<uint64_t>(options.jobs));
    mw.manifest.seeds.push_back(options.rng_seed);
    mw.manifest.inputs.push_back(kb_path);
    if (!blacklist_path.empty()) mw.manifest.inputs.push_back(blacklist_path);

    std::vector<RecipeEntry> recipe;
    if (!preset.empty()) {
        if (preset != "ce12k") throw FormatError("unknown preset '" + preset + "'");
        recipe = ce12k_recipe();
        mw.set("preset", preset);
    } else if (!recipe_path.empty()) {
        recipe = parse_recipe_file(recipe_path);
        mw.set("recipe", recipe_path);
        mw.manifest.inputs.push_back(recipe_path);
    } else if (count > 0) {
        recipe = {{count, m, k}};
        mw.set("count", static_cast<uint64_t>(count));
        mw.set("m", static_cast<uint64_t>(m));
        mw.set("k", static_cast<uint64_t>(k));
    } else {
        throw FormatError("need --preset, --recipe, or --count with --m/--k");
    }

    KnowledgeBase kb = KnowledgeBase::load_snapshot(kb_path);
    Blacklist blacklist = load_blacklist_or_empty(blacklist_path);
    RuleConfig rules = load_rules(predicate_blacklist);

    BatchResult result = batch_extract(kb, blacklist, recipe, options, rules);
    write_subgraphs_jsonl(output, result.subgraphs);
    mw.manifest.outputs.push_back(output);

    std::cout << "subgraphs: " << result.report.produced << " of " << result.report.requested
              << " requested (" << result.report.retries << " retries)\n";
    if (result.report.exhausted > 0) {
        fs::path report_path = fs::path(output);
        report_path += ".warnings.txt";
        std::ofstream rep(report_path);
        for (const std::string& w : result.report.warnings) rep << w << '\n';
        std::cerr << "warning: " << result.report.exhausted
                  << " sample(s) dropped; report: " << report_path.string() << "\n";
        mw.manifest.outputs.push_back(report_path.string());
        mw.finish(manifest_path_for(output), "partial");
        return kExitPartial;
    }
    mw.finish(manifest_path_for(output), "ok");
    return kExitOk;
}

int cmd_generate(const std::string& input, const std::string& output, const std::string& drops,
                 const std::string& client_kind, const std::string& mock_text,
                 GenerateConfig cfg, double temperature) {
    ManifestWriter mw("generate-text");
    mw.set("input", input);
    mw.set("client", client_kind);
    mw.set("temperature", temperature);
    mw.manifest.inputs.push_back(input);

    std::vector<Subgraph> subgraphs = read_subgraphs_jsonl(input);

    std::unique_ptr<LlmClient> client;
    if (client_kind == "mock") {
        client = std::make_unique<FixedLlmClient>(mock_text);
        cfg.model = "offline-mock";
    } else if (client_kind == "http") {
        LlmEndpointConfig endpoint = LlmEndpointConfig::from_env();
        endpoint.temperature = temperature;
        if (!cfg.model.empty() && cfg.model != "offline-mock") endpoint.model = cfg.model;
        if (endpoint.model.empty()) throw FormatError("no model configured (set KGF_LLM_MODEL)");
        cfg.model = endpoint.model;
        client = std::make_unique<HttpLlmClient>(endpoint);
    } else {
        throw FormatError("unknown client '" + client_kind + "' (want: mock | http)");
    }
    mw.set("model", cfg.model);

    GenerateResult result = generate_texts(*client, subgraphs, cfg);
    write_samples_jsonl(output, result.samples);
    write_drops_jsonl(drops, result.drops);
    mw.manifest.outputs.push_back(output);
    mw.manifest.outputs.push_back(drops);

    std::cout << "samples: " << result.samples.size() << ", drops: " << result.drops.size()
              << "\n";
    if (result.failed) {
        std::cerr << "error: drop rate exceeded " << cfg.max_drop_rate * 100
                  << "%; see " << drops << "\n";
        mw.finish(manifest_path_for(output), "failed");
        return kExitPartial;
    }
    mw.finish(manifest_path_for(output), result.drops.empty() ? "ok" : "partial");
    return result.drops.empty() ? kExitOk : kExitPartial;
}

int cmd_assemble(const std::string& input, const std::string& output_dir, double train_fraction,
                 uint64_t split_seed) {
    ManifestWriter mw("assemble");
    mw.set("input", input);
    mw.set("train_fraction", train_fraction);
    mw.manifest.seeds.push_back(split_seed);
    mw.manifest.inputs.push_back(input);

    std::vector<DatasetSample> samples = read_samples_jsonl(input);
    Dataset ds = assemble(std::move(samples), train_fraction, split_seed);

    fs::create_directories(output_dir);
    fs::path train_path = fs::path(output_dir) / "train.jsonl";
    fs::path test_path = fs::path(output_dir) / "test.jsonl";
    write_samples_jsonl(train_path, ds.train);
    write_samples_jsonl(test_path, ds.test);
    mw.manifest.outputs.push_back(train_path.string());
    mw.manifest.outputs.push_back(test_path.string());

    std::cout << "train: " << ds.train.size() << " samples -> " << train_path.string()
              << "\ntest: " << ds.test.size() << " samples -> " << test_path.string() << "\n";
    mw.finish(fs::path(output_dir) / "run-manifest.json", "ok");
    return kExitOk;
}

int cmd_stats(const std::string& input, const std::string& side, const std::string& output,
              const std::string& against, const std::string& dump_counts) {
    ManifestWriter mw("stats");
    mw.set("input", input);
    mw.set("side", side);
    mw.manifest.inputs.push_back(input);

    std::vector<DatasetSample> samples = read_samples_flexible(input);
    if (samples.empty()) throw FormatError(input + ": no usable (text, triples) records");

    std::vector<std::string> rows;
    rows.push_back("side,n,min,avg,median,max");
    if (side == "triples" || side == "both")
        rows.push_back(format_summary_csv_row("triples",
                                              describe(samples, DescribeSide::kTriples)));
    if (side == "tokens" || side == "both")
        rows.push_back(format_summary_csv_row("tokens", describe(samples, DescribeSide::kTokens)));
    if (rows.size() == 1) throw FormatError("unknown side '" + side + "'");

    if (!against.empty()) {
        std::vector<DatasetSample> other = read_samples_flexible(against);
        if (other.empty()) throw FormatError(against + ": no usable (text, triples) records");
        mw.set("against", against);
        mw.manifest.inputs.push_back(against);
        char buf[96];
        if (side == "triples" || side == "both") {
            double w = wasserstein1(side_counts(samples, DescribeSide::kTriples),
                                    side_counts(other, DescribeSide::kTriples));
            std::snprintf(buf, sizeof buf, "wasserstein_triples,%.6f", w);
            rows.push_back(buf);
        }
        if (side == "tokens" || side == "both") {
            double w = wasserstein1(side_counts(samples, DescribeSide::kTokens),
                                    side_counts(other, DescribeSide::kTokens));
            std::snprintf(buf, sizeof buf, "wasserstein_tokens,%.6f", w);
            rows.push_back(buf);
        }
    }

    if (!dump_counts.empty()) {
        std::ofstream out(dump_counts, std::ios::binary);
        if (!out) throw IoError("cannot write " + dump_counts);
        out << "side,count\n";
        if (side == "triples" || side == "both")
            for (double v : side_counts(samples, DescribeSide::kTriples))
                out << "triples," << static_cast<long long>(v) << "\n";
        if (side == "tokens" || side == "both")
            for (double v : side_counts(samples, DescribeSide::kTokens))
                out << "tokens," << static_cast<long long>(v) << "\n";
        mw.manifest.outputs.push_back(dump_counts);
    }

    if (output.empty()) {
        for (const std::string& r : rows) std::cout << r << "\n";
        mw.finish(manifest_path_for(input + ".stats"), "ok");
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw IoError("cannot write " + output);
        for (const std::string& r : rows) out << r << "\n";
        for (const std::string& r : rows) std::cout << r << "\n";
        mw.manifest.outputs.push_back(output);
        mw.finish(manifest_path_for(output), "ok");
    }
    return kExitOk;
}

int cmd_evaluate(const std::string& predictions, const std::string& references,
                 const std::string& metric_name, const std::string& embedder_kind,
                 const std::string& output, const std::string& csv, int jobs) {
    ManifestWriter mw("evaluate");
    mw.set("predictions", predictions);
    mw.set("references", references);
    mw.set("metric", metric_name);
    mw.set("metric_version", std::string(kMetricVersion));
    mw.manifest.inputs = {predictions, references};

    MetricChoice metric = parse_metric(metric_name);
    std::unique_ptr<EmbeddingProvider> embedder;
    if (metric.graph_metric == GraphMetric::kBert || metric.text_level) {
        embedder = make_embedder(embedder_kind);
        mw.set("embedder", embedder_kind);
    }

    auto pred = read_eval_records(predictions);
    auto ref = read_eval_records(references);
    std::vector<ScoredSample> scored = score_pairs(pred, ref, metric, embedder.get(), jobs);

    double mean = mean_f1_x100(scored);
    std::vector<double> f1s;
    for (const ScoredSample& s : scored) f1s.push_back(100.0 * s.f1);

    nlohmann::ordered_json report;
    report["metric"] = metric_name;
    report["metric_version"] = std::string(kMetricVersion);
    report["scale"] = "x100";
    report["n"] = scored.size();
    report["mean_f1"] = mean;
    nlohmann::ordered_json per_sample = nlohmann::ordered_json::array();
    for (const ScoredSample& s : scored)
        per_sample.push_back({{"id", s.id},
                              {"precision", 100.0 * s.precision},
                              {"recall", 100.0 * s.recall},
                              {"f1", 100.0 * s.f1}});
    report["per_sample"] = std::move(per_sample);

    if (!output.empty()) {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw IoError("cannot write " + output);
        out << report.dump(2) << '\n';
        mw.manifest.outputs.push_back(output);
    }
    if (!csv.empty()) {
        write_scores_csv(csv, scored);
        mw.manifest.outputs.push_back(csv);
    }

    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", mean);
    std::cout << metric_name << " mean F1: " << buf << " (n=" << scored.size() << ")\n";
    mw.finish(manifest_path_for(output.empty() ? predictions + ".eval" : output), "ok");
    return kExitOk;
}

int cmd_compare(const std::string& references, const std::string& candidate,
                const std::vector<std::string>& baselines, const std::string& metric_name,
                const std::string& embedder_kind, int iters, double level, uint64_t seed,
                const std::string& output) {
    ManifestWriter mw("compare");
    mw.set("references", references);
    mw.set("candidate", candidate);
    mw.set("metric", metric_name);
    mw.set("iters", static_cast<uint64_t>(iters));
    mw.set("level", level);
    mw.manifest.seeds.push_back(seed);
    mw.manifest.inputs = {references, candidate};
    for (const std::string& b : baselines) mw.manifest.inputs.push_back(b);

    MetricChoice metric = parse_metric(metric_name);
    std::unique_ptr<EmbeddingProvider> embedder;
    if (metric.graph_metric == GraphMetric::kBert || metric.text_level)
        embedder = make_embedder(embedder_kind);

    auto ref = read_eval_records(references);
    auto score_system = [&](const std::string& path) {
        auto pred = read_eval_records(path);
        std::vector<ScoredSample> scored = score_pairs(pred, ref, metric, embedder.get());
        std::map<std::string, double> by_id;
        for (const ScoredSample& s : scored) by_id[s.id] = 100.0 * s.f1;
        return by_id;
    };

    auto candidate_scores = score_system(candidate);
    std::vector<std::string> rows;
    rows.push_back("system,score,ci_lo,ci_hi,p_value");
    char buf[256];

    auto summarize_system = [&](const std::string& name, const std::map<std::string, double>& scores,
                                const std::string& p_value) {
        std::vector<double> values;
        for (const auto& [id, f1] : scores) values.push_back(f1);
        double mean = 0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        auto [lo, hi] = bootstrap_ci(values, iters, level, seed);
        std::snprintf(buf, sizeof buf, "%s,%.4f,%.4f,%.4f,%s", name.c_str(), mean, lo, hi,
                      p_value.c_str());
        rows.push_back(buf);
    };

    summarize_system("candidate:" + candidate, candidate_scores, "-");
    for (const std::string& baseline : baselines) {
        auto baseline_scores = score_system(baseline);
        PairedScores pairs;
        for (const auto& [id, f1] : candidate_scores) {
            auto it = baseline_scores.find(id);
            if (it == baseline_scores.end()) continue;
            pairs.a.push_back(f1);
            pairs.b.push_back(it->second);
        }
        if (pairs.a.empty()) throw FormatError(baseline + ": no ids shared with candidate");
        double p = wilcoxon_signed_rank(pairs);
        std::snprintf(buf, sizeof buf, "%.6e", p);
        summarize_system("baseline:" + baseline, baseline_scores, buf);
    }

    for (const std::string& r : rows) std::cout << r << "\n";
    if (!output.empty()) {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw IoError("cannot write " + output);
        for (const std::string& r : rows) out << r << "\n";
        mw.manifest.outputs.push_back(output);
        mw.finish(manifest_path_for(output), "ok");
    } else {
        mw.finish(manifest_path_for(candidate + ".compare"), "ok");
    }
    return kExitOk;
}

int cmd_check(const std::string& kb_path, const std::string& blacklist_path,
              const std::string& input, const std::string& predicate_blacklist) {
    ManifestWriter mw("check");
    mw.set("kb", kb_path);
    mw.set("input", input);
    mw.manifest.inputs = {kb_path, input};

    KnowledgeBase kb = KnowledgeBase::load_snapshot(kb_path);
    Blacklist blacklist = load_blacklist_or_empty(blacklist_path);
    RuleConfig rules = load_rules(predicate_blacklist);
    std::vector<Subgraph> subgraphs = read_subgraphs_jsonl(input);

    size_t violations = 0;
    for (size_t i = 0; i < subgraphs.size(); ++i) {
        for (const std::string& v : verify_subgraph(kb, blacklist, subgraphs[i], rules)) {
            std::cout << "subgraph " << i << ": " << v << "\n";
            ++violations;
        }
    }
    std::cout << subgraphs.size() << " subgraph(s), " << violations << " violation(s)\n";
    mw.finish(manifest_path_for(input + ".check"), violations == 0 ? "ok" : "failed");
    return violations == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knowledge-graph dataset pipeline and evaluation toolkit"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "plain `key = value` config file");
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "load a dump into an indexed snapshot");
    std::string in_input, in_format = "tsv", in_language = "en", in_categories, in_output,
                in_export;
    ingest->add_option("--input", in_input, "triple dump")->required();
    ingest->add_option("--format", in_format, "tsv | wikidata-json");
    ingest->add_option("--language", in_language, "label language for wikidata-json");
    ingest->add_option("--categories", in_categories, "entity<TAB>category file (tsv format)");
    ingest->add_option("--output", in_output, "snapshot path")->required();
    ingest->add_option("--export-tsv", in_export, "also write canonical TSV");

    // curate-blacklist
    auto* curate_cmd = app.add_subcommand("curate-blacklist",
                                          "extend the expansion blacklist with screened entities");
    std::string cu_kb, cu_blacklist, cu_output, cu_audit = "audit.jsonl", cu_evaluator = "stub";
    CurateConfig cu_cfg;
    curate_cmd->add_option("--kb", cu_kb, "KB snapshot")->required();
    curate_cmd->add_option("--blacklist", cu_blacklist, "seed blacklist TSV");
    curate_cmd->add_option("--output", cu_output, "curated blacklist TSV")->required();
    curate_cmd->add_option("--audit", cu_audit, "audit JSONL path");
    curate_cmd->add_option("--traversals", cu_cfg.n_traversals, "number of traversals");
    curate_cmd->add_option("--sample-per-traversal", cu_cfg.sample_per_traversal,
                           "candidates sampled per traversal");
    curate_cmd->add_option("--m", cu_cfg.m, "traversal branch bound");
    curate_cmd->add_option("--k", cu_cfg.k, "traversal depth");
    curate_cmd->add_option("--category", cu_cfg.category, "seed category")
        ->envname("KGF_CATEGORY");
    curate_cmd->add_option("--seed", cu_cfg.rng_seed, "rng seed")->envname("KGF_SEED");
    curate_cmd->add_option("--max-triples-per-prompt", cu_cfg.max_triples_per_prompt,
                           "prompt size cap");
    curate_cmd->add_option("--jobs", cu_cfg.jobs, "concurrent evaluator requests")
        ->envname("KGF_JOBS");
    curate_cmd->add_option("--evaluator", cu_evaluator, "stub | http");

    // extract
    auto* extract_cmd = app.add_subcommand("extract", "extract filtered subgraphs");
    std::string ex_kb, ex_blacklist, ex_recipe, ex_preset, ex_output, ex_predicates;
    int ex_count = 0, ex_m = 4, ex_k = 6;
    BatchOptions ex_options;
    extract_cmd->add_option("--kb", ex_kb, "KB snapshot")->required();
    extract_cmd->add_option("--blacklist", ex_blacklist, "expansion blacklist TSV");
    extract_cmd->add_option("--recipe", ex_recipe, "recipe file with `count m k` lines");
    extract_cmd->add_option("--preset", ex_preset, "named recipe preset (ce12k)");
    extract_cmd->add_option("--count", ex_count, "sample count for an inline recipe");
    extract_cmd->add_option("--m", ex_m, "branch bound for an inline recipe");
    extract_cmd->add_option("--k", ex_k, "depth for an inline recipe");
    extract_cmd->add_option("--category", ex_options.category, "seed category")
        ->envname("KGF_CATEGORY");
    extract_cmd->add_option("--seed", ex_options.rng_seed, "rng seed")->envname("KGF_SEED");
    extract_cmd->add_option("--jobs", ex_options.jobs, "worker threads")->envname("KGF_JOBS");
    extract_cmd->add_option("--retry-budget", ex_options.retry_budget,
                            "fresh-seed retries per empty extraction");
    extract_cmd->add_option("--predicate-blacklist", ex_predicates,
                            "file extending the r1 predicate set");
    extract_cmd->add_option("--output", ex_output, "subgraph JSONL")->required();

    // generate-text
    auto* gen_cmd = app.add_subcommand("generate-text", "pair subgraphs with generated text");
    std::string ge_input, ge_output, ge_drops, ge_client = "mock",
                ge_mock_text = "A short factual description.";
    GenerateConfig ge_cfg;
    double ge_temperature = 0.0;
    gen_cmd->add_option("--input", ge_input, "subgraph JSONL")->required();
    gen_cmd->add_option("--output", ge_output, "samples JSONL")->required();
    gen_cmd->add_option("--drops", ge_drops, "failed-generation JSONL (default <output>.drops)");
    gen_cmd->add_option("--client", ge_client, "mock | http");
    gen_cmd->add_option("--mock-text", ge_mock_text, "fixed text for the mock client");
    gen_cmd->add_option("--model", ge_cfg.model, "model id for the http client")
        ->envname("KGF_LLM_MODEL");
    gen_cmd->add_option("--temperature", ge_temperature, "sampling temperature");
    gen_cmd->add_option("--retries", ge_cfg.retries, "regeneration budget per subgraph");
    gen_cmd->add_option("--jobs", ge_cfg.jobs, "in-flight requests")->envname("KGF_JOBS");
    gen_cmd->add_option("--max-drop-rate", ge_cfg.max_drop_rate, "failure threshold");

    // assemble
    auto* asm_cmd = app.add_subcommand("assemble", "split samples into train/test files");
    std::string as_input, as_output_dir;
    double as_fraction = 0.90;
    uint64_t as_seed = 0;
    asm_cmd->add_option("--input", as_input, "samples JSONL")->required();
    asm_cmd->add_option("--output-dir", as_output_dir, "directory for train/test files")
        ->required();
    asm_cmd->add_option("--train-fraction", as_fraction, "train share in (0,1)");
    asm_cmd->add_option("--seed", as_seed, "split seed")->envname("KGF_SEED");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "dataset distribution summaries");
    std::string st_input, st_side = "both", st_output;
    stats_cmd->add_option("--input", st_input, "dataset JSONL")->required();
    stats_cmd->add_option("--side", st_side, "triples | tokens | both");
    stats_cmd->add_option("--output", st_output, "CSV path (default stdout)");
    std::string st_against, st_dump;
    stats_cmd->add_option("--against", st_against,
                          "second dataset; adds count-distribution distances");
    stats_cmd->add_option("--dump-counts", st_dump, "write raw per-sample counts CSV");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "score predictions against references");
    std::string ev_pred, ev_ref, ev_metric = "g-bleu", ev_embedder = "stub", ev_output, ev_csv;
    eval_cmd->add_option("--predictions", ev_pred, "prediction JSONL")->required();
    eval_cmd->add_option("--references", ev_ref, "reference JSONL")->required();
    eval_cmd->add_option("--metric", ev_metric, "g-bleu | g-rouge | g-bs | bertscore");
    eval_cmd->add_option("--embedder", ev_embedder, "stub | http");
    eval_cmd->add_option("--output", ev_output, "JSON report path");
    eval_cmd->add_option("--csv", ev_csv, "per-sample CSV path");
    int ev_jobs = 1;
    eval_cmd->add_option("--jobs", ev_jobs, "worker threads")->envname("KGF_JOBS");

    // compare
    auto* cmp_cmd = app.add_subcommand("compare",
                                       "paired comparison with CIs and signed-rank tests");
    std::string cp_ref, cp_candidate, cp_metric = "g-bleu", cp_embedder = "stub", cp_output;
    std::vector<std::string> cp_baselines;
    int cp_iters = 10000;
    double cp_level = 0.95;
    uint64_t cp_seed = 0;
    cmp_cmd->add_option("--references", cp_ref, "reference JSONL")->required();
    cmp_cmd->add_option("--candidate", cp_candidate, "candidate prediction JSONL")->required();
    cmp_cmd->add_option("--baseline", cp_baselines, "baseline prediction JSONL (repeatable)");
    cmp_cmd->add_option("--metric", cp_metric, "g-bleu | g-rouge | g-bs | bertscore");
    cmp_cmd->add_option("--embedder", cp_embedder, "stub | http");
    cmp_cmd->add_option("--iters", cp_iters, "bootstrap iterations");
    cmp_cmd->add_option("--level", cp_level, "confidence level");
    cmp_cmd->add_option("--seed", cp_seed, "bootstrap seed")->envname("KGF_SEED");
    cmp_cmd->add_option("--output", cp_output, "CSV path");

    // check
    auto* check_cmd = app.add_subcommand("check", "re-verify subgraph invariants");
    std::string ck_kb, ck_blacklist, ck_input, ck_predicates;
    check_cmd->add_option("--kb", ck_kb, "KB snapshot")->required();
    check_cmd->add_option("--blacklist", ck_blacklist, "expansion blacklist TSV");
    check_cmd->add_option("--input", ck_input, "subgraph JSONL")->required();
    check_cmd->add_option("--predicate-blacklist", ck_predicates,
                          "file extending the r1 predicate set");

    // let `[subcommand]` sections in a config file set subcommand options,
    // and let top-level flags like --config appear after the subcommand
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
        sub->configurable();
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ingest)
            return cmd_ingest(in_input, in_format, in_language, in_categories, in_output,
                              in_export);
        if (*curate_cmd)
            return cmd_curate(cu_kb, cu_blacklist, cu_output, cu_audit, cu_cfg, cu_evaluator);
        if (*extract_cmd)
            return cmd_extract(ex_kb, ex_blacklist, ex_recipe, ex_preset, ex_count, ex_m, ex_k,
                               ex_options, ex_output, ex_predicates);
        if (*gen_cmd) {
            if (ge_drops.empty()) ge_drops = ge_output + ".drops.jsonl";
            return cmd_generate(ge_input, ge_output, ge_drops, ge_client, ge_mock_text, ge_cfg,
                                ge_temperature);
        }
        if (*asm_cmd) return cmd_assemble(as_input, as_output_dir, as_fraction, as_seed);
        if (*stats_cmd) return cmd_stats(st_input, st_side, st_output, st_against, st_dump);
        if (*eval_cmd)
            return cmd_evaluate(ev_pred, ev_ref, ev_metric, ev_embedder, ev_output, ev_csv,
                                ev_jobs);
        if (*cmp_cmd)
            return cmd_compare(cp_ref, cp_candidate, cp_baselines, cp_metric, cp_embedder,
                               cp_iters, cp_level, cp_seed, cp_output);
        if (*check_cmd) return cmd_check(ck_kb, ck_blacklist, ck_input, ck_predicates);
    } catch (const EvaluatorUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const MetricBackendError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
