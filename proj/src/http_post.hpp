#pragma once

#include <string>

#include <json.hpp>

namespace kgforge::detail {

// POST a JSON body to a full endpoint URL with bearer auth, retrying
// transient failures with doubling backoff. Throws std::runtime_error once
// attempts are exhausted; callers wrap it in their domain error.
nlohmann::json http_post_json(const std::string& url, const std::string& api_key,
                              const nlohmann::json& body, int timeout_seconds, int attempts,
                              int backoff_ms);

}  // namespace kgforge::detail
