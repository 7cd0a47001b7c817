#include "kgforge/llm_client.hpp"

#include <cstdlib>

#include <json.hpp>

#include "http_post.hpp"
#include "kgforge/errors.hpp"

namespace kgforge {

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

}  // namespace

LlmEndpointConfig LlmEndpointConfig::from_env() {
    LlmEndpointConfig cfg;
    cfg.url = env_or("KGF_LLM_URL", "");
    cfg.model = env_or("KGF_LLM_MODEL", "");
    cfg.api_key = env_or("KGF_LLM_KEY", "");
    return cfg;
}

HttpLlmClient::HttpLlmClient(LlmEndpointConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.url.empty())
        throw EvaluatorUnavailable("no LLM endpoint configured (set KGF_LLM_URL)");
}

std::string HttpLlmClient::complete(const std::string& prompt) {
    nlohmann::json body{
        {"model", cfg_.model},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
        {"temperature", cfg_.temperature},
    };
    nlohmann::json response;
    try {
        response = detail::http_post_json(cfg_.url, cfg_.api_key, body, cfg_.timeout_seconds,
                                          cfg_.max_attempts, cfg_.backoff_ms);
    } catch (const std::exception& e) {
        throw EvaluatorUnavailable(std::string("LLM endpoint failed: ") + e.what());
    }
    try {
        return response.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception&) {
        throw EvaluatorUnavailable("LLM endpoint returned an unexpected payload: " +
                                   response.dump().substr(0, 200));
    }
}

}  // namespace kgforge
