#include "kgforge/textgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>

#include <json.hpp>

#include "kgforge/errors.hpp"
#include "kgforge/prompts.hpp"
#include "kgforge/rng.hpp"
#include "kgforge/strings.hpp"

namespace kgforge {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json sample_to_json(const DatasetSample& s) {
    ordered_json rec;
    rec["text"] = s.text;
    ordered_json triples = ordered_json::array();
    for (const Triple& t : s.triples)
        triples.push_back(ordered_json::array({t.subject, t.predicate, t.object}));
    rec["triples"] = std::move(triples);
    ordered_json meta;
    meta["seed"] = s.meta.seed;
    meta["m"] = s.meta.m;
    meta["k"] = s.meta.k;
    meta["model"] = s.meta.model;
    meta["prompt_version"] = s.meta.prompt_version;
    rec["meta"] = std::move(meta);
    return rec;
}

std::vector<Triple> triples_from_json(const ordered_json& arr) {
    std::vector<Triple> out;
    for (const auto& t : arr) {
        if (!t.is_array() || t.size() != 3) throw FormatError("bad triple entry");
        out.push_back(Triple{t[0].get<std::string>(), t[1].get<std::string>(),
                             t[2].get<std::string>()});
    }
    return out;
}

}  // namespace

GenerateResult generate_texts(LlmClient& client, std::span<const Subgraph> subgraphs,
                              const GenerateConfig& cfg) {
    struct Slot {
        bool ok = false;
        DatasetSample sample;
        std::string fail_reason;
    };
    std::vector<Slot> slots(subgraphs.size());

    auto run_one = [&](size_t i) {
        const Subgraph& sg = subgraphs[i];
        Slot& slot = slots[i];
        if (sg.triples.empty()) {
            slot.fail_reason = "subgraph has no triples";
            return;
        }
        std::string prompt = render_kg2text_prompt(sg.triples);
        for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
            std::string text;
            try {
                text = client.complete(prompt);
            } catch (const std::exception& e) {
                slot.fail_reason = e.what();
                continue;
            }
            if (trim(text).empty()) {
                slot.fail_reason = "empty generation";
                continue;
            }
            slot.sample.text = std::string(trim(text));
            slot.sample.triples = sg.triples;
            slot.sample.meta = SampleMeta{sg.seed, sg.m, sg.k, cfg.model,
                                          std::string(kPromptVersion)};
            slot.ok = true;
            return;
        }
    };

    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < slots.size(); ++i) run_one(i);
    } else {
        for (size_t base = 0; base < slots.size(); base += static_cast<size_t>(jobs)) {
            size_t end = std::min(slots.size(), base + static_cast<size_t>(jobs));
            std::vector<std::future<void>> inflight;
            for (size_t i = base; i < end; ++i)
                inflight.push_back(std::async(std::launch::async, [&, i] { run_one(i); }));
            for (auto& f : inflight) f.get();
        }
    }

    GenerateResult result;
    for (size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].ok) {
            result.samples.push_back(std::move(slots[i].sample));
        } else {
            result.drops.push_back(DropRecord{i, subgraphs[i].seed, slots[i].fail_reason});
        }
    }
    if (!subgraphs.empty()) {
        double drop_rate = static_cast<double>(result.drops.size()) /
                           static_cast<double>(subgraphs.size());
        result.failed = drop_rate > cfg.max_drop_rate;
    }
    return result;
}

Dataset assemble(std::vector<DatasetSample> samples, double train_fraction, uint64_t split_seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw FormatError("train_fraction must be in (0, 1)");

    std::vector<uint32_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0u);
    Rng rng(split_seed);
    shuffle(order, rng);

    // epsilon guards FP artifacts like 12000*0.1 -> 1199.999…
    size_t n_test = static_cast<size_t>(
        std::floor(static_cast<double>(samples.size()) * (1.0 - train_fraction) + 1e-9));

    Dataset ds;
    ds.split_seed = split_seed;
    for (size_t i = 0; i < order.size(); ++i) {
        DatasetSample& s = samples[order[i]];
        if (i < samples.size() - n_test)
            ds.train.push_back(std::move(s));
        else
            ds.test.push_back(std::move(s));
    }
    return ds;
}

void write_samples_jsonl(const std::filesystem::path& path,
                         std::span<const DatasetSample> samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const DatasetSample& s : samples) out << sample_to_json(s).dump() << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

void write_drops_jsonl(const std::filesystem::path& path, std::span<const DropRecord> drops) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const DropRecord& d : drops) {
        ordered_json rec;
        rec["index"] = d.index;
        rec["seed"] = d.seed;
        rec["reason"] = d.reason;
        out << rec.dump() << '\n';
    }
}

std::vector<DatasetSample> read_samples_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<DatasetSample> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        ordered_json rec = ordered_json::parse(sv, nullptr, false);
        if (rec.is_discarded() || !rec.is_object())
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad JSON record");
        DatasetSample s;
        s.text = rec.value("text", "");
        s.triples = triples_from_json(rec.value("triples", ordered_json::array()));
        if (rec.contains("meta") && rec["meta"].is_object()) {
            const auto& meta = rec["meta"];
            s.meta.seed = meta.value("seed", "");
            s.meta.m = meta.value("m", 0);
            s.meta.k = meta.value("k", 0);
            s.meta.model = meta.value("model", "");
            s.meta.prompt_version = meta.value("prompt_version", "");
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<EvalRecord> read_eval_records(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<EvalRecord> out;
    std::string line;
    size_t index = 0;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (sv.empty() || sv == "[" || sv == "]") continue;
        if (sv.back() == ',') sv.remove_suffix(1);
        ordered_json rec = ordered_json::parse(sv, nullptr, false);
        if (rec.is_discarded() || !rec.is_object())
            throw FormatError(path.string() + ": line " + std::to_string(index + 1) +
                              " is not a JSON object");
        EvalRecord r;
        if (rec.contains("id")) {
            const auto& id = rec["id"];
            r.id = id.is_string() ? id.get<std::string>() : id.dump();
        } else {
            r.id = std::to_string(index);
        }
        for (const char* key : {"text", "input", "input_text", "sentence", "T"})
            if (rec.contains(key) && rec[key].is_string()) {
                r.text = rec[key].get<std::string>();
                break;
            }
        ordered_json triples;
        for (const char* key : {"triples", "kg", "graph", "output", "triple_list"})
            if (rec.contains(key)) {
                triples = rec[key];
                break;
            }
        if (triples.is_string())
            triples = ordered_json::parse(triples.get<std::string>(), nullptr, false);
        if (triples.is_array()) r.triples = triples_from_json(triples);
        out.push_back(std::move(r));
        ++index;
    }
    return out;
}

std::vector<DatasetSample> read_samples_flexible(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<DatasetSample> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (sv.empty() || sv == "[" || sv == "]") continue;
        if (sv.back() == ',') sv.remove_suffix(1);
        ordered_json rec = ordered_json::parse(sv, nullptr, false);
        if (rec.is_discarded() || !rec.is_object()) continue;

        DatasetSample s;
        for (const char* key : {"text", "input", "input_text", "sentence", "T"})
            if (rec.contains(key) && rec[key].is_string()) {
                s.text = rec[key].get<std::string>();
                break;
            }
        ordered_json triples;
        for (const char* key : {"triples", "kg", "graph", "output", "triple_list"})
            if (rec.contains(key)) {
                triples = rec[key];
                break;
            }
        // some published files store the triple list as a JSON string
        if (triples.is_string())
            triples = ordered_json::parse(triples.get<std::string>(), nullptr, false);
        if (!triples.is_array()) continue;
        try {
            s.triples = triples_from_json(triples);
        } catch (const FormatError&) {
            continue;
        }
        if (s.text.empty() || s.triples.empty()) continue;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace kgforge
