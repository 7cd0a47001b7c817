#pragma once

#include <atomic>
#include <cstdint>
#include <string>

namespace kgforge {

// A text-completion backend. Implementations must be safe for concurrent
// complete() calls.
class LlmClient {
public:
    virtual ~LlmClient() = default;

    // Returns the raw completion text for a single-user-message chat.
    // Throws EvaluatorUnavailable once the transport retry budget is spent.
    virtual std::string complete(const std::string& prompt) = 0;
};

struct LlmEndpointConfig {
    std::string url;    // full endpoint, e.g. http://host:8000/v1/chat/completions
    std::string model;
    std::string api_key;
    double temperature = 0.0;
    int timeout_seconds = 120;
    int max_attempts = 3;
    int backoff_ms = 500;

    // KGF_LLM_URL / KGF_LLM_MODEL / KGF_LLM_KEY
    static LlmEndpointConfig from_env();
};

// Chat-completions client: POSTs {model, messages:[{role:"user", content}]}
// and reads choices[0].message.content.
class HttpLlmClient : public LlmClient {
public:
    explicit HttpLlmClient(LlmEndpointConfig cfg);
    std::string complete(const std::string& prompt) override;

private:
    LlmEndpointConfig cfg_;
};

// Test/offline double: every completion is the same fixed text.
class FixedLlmClient : public LlmClient {
public:
    explicit FixedLlmClient(std::string text) : text_(std::move(text)) {}
    std::string complete(const std::string&) override {
        calls_.fetch_add(1, std::memory_order_relaxed);
        return text_;
    }
    uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

private:
    std::string text_;
    std::atomic<uint64_t> calls_{0};
};

}  // namespace kgforge
