#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgforge {

// Maps text to a fixed-dimension unit vector. Implementations must be pure:
// identical input, identical vector.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::vector<double> embed(std::string_view text) const = 0;
};

// Deterministic offline embedder: character trigrams of "^text$" hashed into
// a fixed number of buckets, then L2-normalized. No model, no network; meant
// for CI and smoke runs, not for reproducing published score magnitudes.
class TrigramHashEmbedder : public EmbeddingProvider {
public:
    explicit TrigramHashEmbedder(size_t dimensions = 256) : dimensions_(dimensions) {}
    std::vector<double> embed(std::string_view text) const override;

private:
    size_t dimensions_;
};

struct EmbeddingEndpointConfig {
    std::string url;  // full endpoint, e.g. http://host:8000/v1/embeddings
    std::string model;
    std::string api_key;
    int timeout_seconds = 60;
    int max_attempts = 3;
    int backoff_ms = 500;

    // KGF_EMBED_URL / KGF_EMBED_MODEL / KGF_EMBED_KEY
    static EmbeddingEndpointConfig from_env();
};

// POSTs {model, input:[text]} and reads data[0].embedding, re-normalizing the
// result. Throws MetricBackendError on failure.
class HttpEmbeddingClient : public EmbeddingProvider {
public:
    explicit HttpEmbeddingClient(EmbeddingEndpointConfig cfg);
    std::vector<double> embed(std::string_view text) const override;

private:
    EmbeddingEndpointConfig cfg_;
};

}  // namespace kgforge
