#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <regex>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

namespace slowads {

struct LlmConfig {
  std::string endpoint;  // http(s)://host[:port][/path]; path defaults to /v1/chat/completions
  std::string model_id = "mock";
  double temperature = 0.0;
  int max_output_tokens = 1024;
  std::chrono::milliseconds timeout{60000};
  int max_retries = 3;
  int max_in_flight = 4;
  std::string api_key_env = "SLOW_ADS_API_KEY";
  std::chrono::milliseconds retry_backoff{500};  // doubles per attempt; 0 disables sleeping
};

// status 200 + text on success; status 0 carries a transport error.
struct BackendReply {
  int status = 0;
  std::string text;
  std::string error;
};

class Backend {
 public:
  virtual ~Backend() = default;

  BackendReply send(const std::string& prompt) {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return do_send(prompt);
  }
  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

 private:
  virtual BackendReply do_send(const std::string& prompt) = 0;
  std::atomic<std::uint64_t> calls_{0};
};

// Deterministic offline backend: ordered (regex, template) rules; the first
// pattern found in the prompt wins and its template is instantiated with $0
// (whole match) and $1..$9.  Unmatched prompts fall through to an echo of
// the prompt.  Note ECMAScript '.' does not cross newlines; use [\s\S].
class MockBackend : public Backend {
 public:
  struct Rule {
    std::string pattern;
    std::string tmpl;
  };

  explicit MockBackend(std::vector<Rule> rules);

 private:
  BackendReply do_send(const std::string& prompt) override;

  struct Compiled {
    std::regex re;
    std::string tmpl;
  };
  std::vector<Compiled> rules_;
};

// Named rule sets: "echo" (prompt back) and "echo-after-marker" (vanilla
// translation prompts answered with a marker line echoing the sentence).
std::vector<MockBackend::Rule> mock_preset(std::string_view name);
// TSV `pattern<TAB>template` per line; \n, \t and \\ unescaped in templates.
std::vector<MockBackend::Rule> load_mock_rules(const std::filesystem::path& path);

// Chat-completion HTTP backend: single user message in, first choice out.
// The API key is read from the environment variable named in the config.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(LlmConfig config);

 private:
  BackendReply do_send(const std::string& prompt) override;
  LlmConfig config_;
};

struct CompletionResult {
  std::string text;
  int attempt_count = 1;
  bool from_cache = false;
};

// SHA-256 of (model_id, prompt); the cache filename.
std::string cache_key(const std::string& model_id, const std::string& prompt);

// Completion with bounded in-flight requests and exponential backoff on
// transient failures (HTTP 408/425/429/5xx and transport errors).
class LlmClient {
 public:
  LlmClient(LlmConfig config, Backend& backend);

  CompletionResult complete(const std::string& prompt);
  // Content-addressed disk cache, one JSON record per file, atomic writes;
  // corrupt records are recomputed.
  CompletionResult cached_complete(const std::filesystem::path& cache_dir,
                                   const std::string& prompt);

  const LlmConfig& config() const { return config_; }

 private:
  LlmConfig config_;
  Backend* backend_;
  std::counting_semaphore<1 << 20> in_flight_;
};

CompletionResult complete(const LlmConfig& config, Backend& backend, const std::string& prompt);
CompletionResult cached_complete(const LlmConfig& config, Backend& backend,
                                 const std::filesystem::path& cache_dir,
                                 const std::string& prompt);

struct CacheStats {
  std::size_t records = 0;
  std::uintmax_t bytes = 0;
};
CacheStats cache_stats(const std::filesystem::path& cache_dir);

}  // namespace slowads
