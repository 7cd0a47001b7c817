// Loopback-server tests for the HTTP clients: request shaping, response
// parsing, retry-then-fail behavior. Skipped when binding a local port fails.

#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <thread>

#include <json.hpp>

#include "kgforge/embeddings.hpp"
#include "kgforge/errors.hpp"
#include "kgforge/llm_client.hpp"

using namespace kgforge;
using nlohmann::json;

namespace {

struct LocalServer {
    httplib::Server server;
    int port = 0;
    std::thread thread;

    bool start() {
        port = server.bind_to_any_port("127.0.0.1");
        if (port <= 0) return false;
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
        return true;
    }
    ~LocalServer() {
        server.stop();
        if (thread.joinable()) thread.join();
    }
};

}  // namespace

TEST_SUITE_BEGIN("http");

TEST_CASE("chat client posts the single-user-message contract") {
    LocalServer srv;
    if (!srv.start()) {
        MESSAGE("cannot bind a loopback port; skipping");
        return;
    }
    json seen;
    std::string seen_auth;
    srv.server.Post("/v1/chat/completions",
                    [&](const httplib::Request& req, httplib::Response& res) {
                        seen = json::parse(req.body);
                        if (req.has_header("Authorization"))
                            seen_auth = req.get_header_value("Authorization");
                        json reply = {
                            {"choices",
                             json::array({{{"message", {{"role", "assistant"},
                                                        {"content", "YES (stubbed)"}}}}})}};
                        res.set_content(reply.dump(), "application/json");
                    });

    LlmEndpointConfig cfg;
    cfg.url = "http://127.0.0.1:" + std::to_string(srv.port) + "/v1/chat/completions";
    cfg.model = "test-model";
    cfg.api_key = "sekrit";
    HttpLlmClient client(cfg);
    std::string out = client.complete("hello there");

    CHECK(out == "YES (stubbed)");
    CHECK(seen["model"] == "test-model");
    REQUIRE(seen["messages"].size() == 1);
    CHECK(seen["messages"][0]["role"] == "user");
    CHECK(seen["messages"][0]["content"] == "hello there");
    CHECK(seen["temperature"] == 0.0);
    CHECK(seen_auth == "Bearer sekrit");
}

TEST_CASE("chat client retries transient failures, then succeeds") {
    LocalServer srv;
    if (!srv.start()) {
        MESSAGE("cannot bind a loopback port; skipping");
        return;
    }
    std::atomic<int> calls{0};
    srv.server.Post("/v1/chat/completions",
                    [&](const httplib::Request&, httplib::Response& res) {
                        if (calls.fetch_add(1) == 0) {
                            res.status = 503;
                            return;
                        }
                        json reply = {
                            {"choices",
                             json::array({{{"message", {{"content", "recovered"}}}}})}};
                        res.set_content(reply.dump(), "application/json");
                    });

    LlmEndpointConfig cfg;
    cfg.url = "http://127.0.0.1:" + std::to_string(srv.port) + "/v1/chat/completions";
    cfg.max_attempts = 3;
    cfg.backoff_ms = 10;
    HttpLlmClient client(cfg);
    CHECK(client.complete("x") == "recovered");
    CHECK(calls.load() == 2);
}

TEST_CASE("exhausted retries raise EvaluatorUnavailable") {
    LlmEndpointConfig cfg;
    cfg.url = "http://127.0.0.1:9/v1/chat/completions";  // discard port, nothing listens
    cfg.max_attempts = 2;
    cfg.backoff_ms = 1;
    cfg.timeout_seconds = 1;
    HttpLlmClient client(cfg);
    CHECK_THROWS_AS(client.complete("x"), EvaluatorUnavailable);
}

TEST_CASE("embedding client parses and re-normalizes vectors") {
    LocalServer srv;
    if (!srv.start()) {
        MESSAGE("cannot bind a loopback port; skipping");
        return;
    }
    srv.server.Post("/v1/embeddings", [&](const httplib::Request& req, httplib::Response& res) {
        json body = json::parse(req.body);
        CHECK(body["input"].is_array());
        json reply = {{"data", json::array({{{"embedding", {3.0, 4.0}}}})}};
        res.set_content(reply.dump(), "application/json");
    });

    EmbeddingEndpointConfig cfg;
    cfg.url = "http://127.0.0.1:" + std::to_string(srv.port) + "/v1/embeddings";
    HttpEmbeddingClient client(cfg);
    auto v = client.embed("anything");
    REQUIRE(v.size() == 2);
    CHECK(v[0] == doctest::Approx(0.6));
    CHECK(v[1] == doctest::Approx(0.8));
}

TEST_CASE("embedding transport failure raises MetricBackendError") {
    EmbeddingEndpointConfig cfg;
    cfg.url = "http://127.0.0.1:9/v1/embeddings";
    cfg.max_attempts = 1;
    cfg.timeout_seconds = 1;
    HttpEmbeddingClient client(cfg);
    CHECK_THROWS_AS(client.embed("x"), MetricBackendError);
}

TEST_SUITE_END();
