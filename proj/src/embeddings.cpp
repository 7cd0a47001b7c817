#include "kgforge/embeddings.hpp"

#include <cmath>
#include <cstdlib>

#include <json.hpp>

#include "http_post.hpp"
#include "kgforge/errors.hpp"

namespace kgforge {

namespace {

uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void normalize(std::vector<double>& v) {
    double norm2 = 0;
    for (double x : v) norm2 += x * x;
    if (norm2 <= 0) return;
    double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

}  // namespace

std::vector<double> TrigramHashEmbedder::embed(std::string_view text) const {
    std::vector<double> v(dimensions_, 0.0);
    std::string padded = "^" + std::string(text) + "$";
    for (size_t i = 0; i + 3 <= padded.size(); ++i) {
        uint64_t h = fnv1a(std::string_view(padded).substr(i, 3));
        v[h % dimensions_] += 1.0;
    }
    normalize(v);
    return v;
}

EmbeddingEndpointConfig EmbeddingEndpointConfig::from_env() {
    EmbeddingEndpointConfig cfg;
    cfg.url = env_or("KGF_EMBED_URL", "");
    cfg.model = env_or("KGF_EMBED_MODEL", "");
    cfg.api_key = env_or("KGF_EMBED_KEY", "");
    return cfg;
}

HttpEmbeddingClient::HttpEmbeddingClient(EmbeddingEndpointConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.url.empty())
        throw MetricBackendError("no embedding endpoint configured (set KGF_EMBED_URL)");
}

std::vector<double> HttpEmbeddingClient::embed(std::string_view text) const {
    nlohmann::json body{
        {"model", cfg_.model},
        {"input", nlohmann::json::array({std::string(text)})},
    };
    nlohmann::json response;
    try {
        response = detail::http_post_json(cfg_.url, cfg_.api_key, body, cfg_.timeout_seconds,
                                          cfg_.max_attempts, cfg_.backoff_ms);
    } catch (const std::exception& e) {
        throw MetricBackendError(std::string("embedding endpoint failed: ") + e.what());
    }
    try {
        std::vector<double> v = response.at("data").at(0).at("embedding").get<std::vector<double>>();
        normalize(v);
        return v;
    } catch (const std::exception&) {
        throw MetricBackendError("embedding endpoint returned an unexpected payload");
    }
}

}  // namespace kgforge
