#include <httplib.h>

#include <chrono>
#include <stdexcept>
#include <thread>

#include "http_post.hpp"

namespace kgforge::detail {

namespace {

struct SplitUrl {
    std::string base;  // scheme://host[:port]
    std::string path;  // /v1/...
};

SplitUrl split_url(const std::string& url) {
    size_t scheme = url.find("://");
    if (scheme == std::string::npos) throw std::runtime_error("bad endpoint URL: " + url);
    size_t slash = url.find('/', scheme + 3);
    if (slash == std::string::npos) return {url, "/"};
    return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

nlohmann::json http_post_json(const std::string& url, const std::string& api_key,
                              const nlohmann::json& body, int timeout_seconds, int attempts,
                              int backoff_ms) {
    SplitUrl parts = split_url(url);
    std::string payload = body.dump();
    std::string last_error = "no attempt made";

    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        httplib::Client client(parts.base);
        client.set_connection_timeout(timeout_seconds);
        client.set_read_timeout(timeout_seconds);
        httplib::Headers headers;
        if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
        auto res = client.Post(parts.path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status < 200 || res->status >= 300) {
            last_error = "HTTP " + std::to_string(res->status);
            // 4xx other than 429 will not improve on retry
            if (res->status >= 400 && res->status < 500 && res->status != 429)
                throw std::runtime_error(last_error + ": " + res->body);
            continue;
        }
        nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded()) {
            last_error = "response is not JSON";
            continue;
        }
        return parsed;
    }
    throw std::runtime_error(last_error);
}

}  // namespace kgforge::detail
