#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "slowads/error.hpp"
#include "slowads/llm.hpp"

using namespace slowads;
namespace fs = std::filesystem;

namespace {

LlmConfig fast_config() {
  LlmConfig cfg;
  cfg.model_id = "test-model";
  cfg.max_retries = 3;
  cfg.retry_backoff = std::chrono::milliseconds(0);
  return cfg;
}

class ScriptedBackend : public Backend {
 public:
  explicit ScriptedBackend(std::vector<BackendReply> script) : script_(std::move(script)) {}

 private:
  BackendReply do_send(const std::string&) override {
    const auto i = next_.fetch_add(1);
    return i < script_.size() ? script_[i] : script_.back();
  }
  std::vector<BackendReply> script_;
  std::atomic<std::size_t> next_{0};
};

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag)
      : path(fs::temp_directory_path() / (std::string("slowads_llm_") + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("mock backend: echo-after-marker preset") {
  MockBackend mock(mock_preset("echo-after-marker"));
  const auto reply =
      mock.send("Translate the following sentence from English into Xish: The cat sat.");
  CHECK(reply.status == 200);
  CHECK(reply.text == "The refined translation is: The cat sat.");
}

TEST_CASE("mock backend: rules match in order with group substitution") {
  MockBackend mock({{"^ping$", "pong"},
                    {"dict for (\\w+)/(\\w+)", "dictionary: $1 ($2)"},
                    {"cost: \\$5", "five $$"}});
  CHECK(mock.send("ping").text == "pong");
  CHECK(mock.send("dict for kucing/cat please").text == "dictionary: kucing (cat)");
  CHECK(mock.send("cost: $5").text == "five $");
  // unmatched prompt falls through to echo
  CHECK(mock.send("something else").text == "something else");
  CHECK(mock.calls() == 4);
  CHECK_THROWS_AS(MockBackend(std::vector<MockBackend::Rule>{{"(unclosed", "x"}}), Error);
}

TEST_CASE("retry contract: transient failures then success") {
  ScriptedBackend backend({{429, "", "rate limited"}, {429, "", "rate limited"}, {200, "ok", ""}});
  const auto result = complete(fast_config(), backend, "p");
  CHECK(result.text == "ok");
  CHECK(result.attempt_count == 3);
  CHECK(backend.calls() == 3);
}

TEST_CASE("auth errors are not retried") {
  ScriptedBackend backend({{401, "", "bad key"}});
  CHECK_THROWS_WITH_AS(complete(fast_config(), backend, "p"), doctest::Contains("401"), Error);
  CHECK(backend.calls() == 1);
}

TEST_CASE("retries exhausted carries the last error") {
  ScriptedBackend backend({{503, "", "down"}});
  auto cfg = fast_config();
  cfg.max_retries = 2;
  try {
    complete(cfg, backend, "p");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("exhausted") != std::string::npos);
    CHECK(std::string(e.what()).find("down") != std::string::npos);
  }
  CHECK(backend.calls() == 3);
}

TEST_CASE("cache_key is a pure function of model and prompt") {
  const auto k = cache_key("m", "p");
  CHECK(k == cache_key("m", "p"));
  CHECK(k.size() == 64);
  CHECK(k != cache_key("m2", "p"));
  CHECK(k != cache_key("m", "p2"));
  CHECK(cache_key("ab", "c") != cache_key("a", "bc"));
}

TEST_CASE("cached_complete memoizes and persists") {
  TempDir tmp("cache");
  MockBackend backend(std::vector<MockBackend::Rule>{{"^exactly this prompt$", "answer"}});
  const auto cfg = fast_config();

  const auto r1 = cached_complete(cfg, backend, tmp.path, "exactly this prompt");
  CHECK(r1.text == "answer");
  CHECK_FALSE(r1.from_cache);
  CHECK(backend.calls() == 1);

  const auto r2 = cached_complete(cfg, backend, tmp.path, "exactly this prompt");
  CHECK(r2.text == "answer");
  CHECK(r2.from_cache);
  CHECK(backend.calls() == 1);  // exactly one backend call for two requests

  SUBCASE("cache key includes the model id") {
    auto cfg2 = cfg;
    cfg2.model_id = "other-model";
    cached_complete(cfg2, backend, tmp.path, "exactly this prompt");
    CHECK(backend.calls() == 2);
  }
  SUBCASE("a fresh client sees the records (restart survival)") {
    MockBackend backend2(std::vector<MockBackend::Rule>{{"^exactly this prompt$", "answer"}});
    const auto r3 = cached_complete(cfg, backend2, tmp.path, "exactly this prompt");
    CHECK(r3.from_cache);
    CHECK(backend2.calls() == 0);
  }
  SUBCASE("corrupt records are recomputed") {
    const auto key = cache_key(cfg.model_id, "exactly this prompt");
    {
      std::ofstream out(tmp.path / (key + ".json"));
      out << "{not json";
    }
    const auto r4 = cached_complete(cfg, backend, tmp.path, "exactly this prompt");
    CHECK(r4.text == "answer");
    CHECK_FALSE(r4.from_cache);
    // and the record is healthy again
    const auto r5 = cached_complete(cfg, backend, tmp.path, "exactly this prompt");
    CHECK(r5.from_cache);
  }
  SUBCASE("cache stats count records") {
    const auto stats = cache_stats(tmp.path);
    CHECK(stats.records == 1);
    CHECK(stats.bytes > 0);
    CHECK(cache_stats(tmp.path / "does_not_exist").records == 0);
  }
}

TEST_CASE("in-flight requests never exceed max_in_flight") {
  class GaugeBackend : public Backend {
   public:
    std::atomic<int> current{0};
    std::atomic<int> high_water{0};

   private:
    BackendReply do_send(const std::string&) override {
      const int now = ++current;
      int seen = high_water.load();
      while (now > seen && !high_water.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
      --current;
      return {200, "ok", ""};
    }
  };

  GaugeBackend backend;
  auto cfg = fast_config();
  cfg.max_in_flight = 2;
  LlmClient client(cfg, backend);
#pragma omp parallel for num_threads(8)
  for (int i = 0; i < 32; ++i) client.complete("p" + std::to_string(i));
  CHECK(backend.calls() == 32);
  CHECK(backend.high_water.load() <= 2);
}

TEST_CASE("http backend speaks chat completions") {
  httplib::Server server;
  std::atomic<int> hits{0};
  std::string seen_auth, seen_body;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    const int n = ++hits;
    seen_auth = req.get_header_value("Authorization");
    seen_body = req.body;
    if (n == 1) {  // first call: transient failure to exercise a retry
      res.status = 503;
      res.set_content("busy", "text/plain");
      return;
    }
    const nlohmann::json reply = {
        {"choices",
         nlohmann::json::array(
             {{{"message", {{"role", "assistant"}, {"content", "Bonjour le monde"}}}}})}};
    res.set_content(reply.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  setenv("SLOWADS_TEST_KEY", "sk-test-123", 1);
  LlmConfig cfg = fast_config();
  cfg.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  cfg.api_key_env = "SLOWADS_TEST_KEY";
  cfg.model_id = "demo-model";
  cfg.temperature = 0.25;

  HttpBackend backend(cfg);
  const auto result = complete(cfg, backend, "Say hello");
  CHECK(result.text == "Bonjour le monde");
  CHECK(result.attempt_count == 2);
  CHECK(hits.load() == 2);
  CHECK(seen_auth == "Bearer sk-test-123");
  const auto body = nlohmann::json::parse(seen_body);
  CHECK(body.at("model") == "demo-model");
  CHECK(body.at("temperature") == 0.25);
  CHECK(body.at("messages").at(0).at("content") == "Say hello");

  server.stop();
  server_thread.join();
}

TEST_CASE("mock rules load from tsv") {
  const std::string path = "mock_rules_test.tsv";
  {
    std::ofstream out(path);
    out << "# comment\n";
    out << "^hello$\tdictionary: a (b)\\nmore\n";
  }
  MockBackend mock(load_mock_rules(path));
  CHECK(mock.send("hello").text == "dictionary: a (b)\nmore");
  std::remove(path.c_str());
}
