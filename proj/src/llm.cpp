#include "slowads/llm.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "slowads/error.hpp"
#include "slowads/text.hpp"

namespace slowads {

using nlohmann::json;

// ---------------------------------------------------------------------------
// mock backend
// ---------------------------------------------------------------------------

MockBackend::MockBackend(std::vector<Rule> rules) {
  for (const auto& rule : rules) {
    try {
      rules_.push_back({std::regex(rule.pattern, std::regex::ECMAScript), rule.tmpl});
    } catch (const std::regex_error& e) {
      fail("mock backend: bad pattern '" + rule.pattern + "': " + e.what());
    }
  }
}

BackendReply MockBackend::do_send(const std::string& prompt) {
  for (const auto& rule : rules_) {
    std::smatch m;
    if (std::regex_search(prompt, m, rule.re)) {
      std::string out;
      for (std::size_t i = 0; i < rule.tmpl.size(); ++i) {
        const char c = rule.tmpl[i];
        if (c == '$' && i + 1 < rule.tmpl.size()) {
          const char d = rule.tmpl[i + 1];
          if (d >= '0' && d <= '9') {
            const std::size_t g = d - '0';
            if (g < m.size()) out += m[g].str();
            ++i;
            continue;
          }
          if (d == '$') {
            out.push_back('$');
            ++i;
            continue;
          }
        }
        out.push_back(c);
      }
      return {200, out, ""};
    }
  }
  return {200, prompt, ""};  // default echo rule
}

std::vector<MockBackend::Rule> mock_preset(std::string_view name) {
  if (name == "echo") return {};
  if (name == "echo-after-marker") {
    return {{R"(^Translate the following sentence from [\s\S]* into [\s\S]*: ([\s\S]*)$)",
             "The refined translation is: $1"},
            {R"(^Translate the following sentence from [\s\S]* to [\s\S]*\.\n([^\n]*)\n)",
             "The refined translation is: $1"}};
  }
  fail("unknown mock preset '" + std::string(name) + "' (try echo, echo-after-marker)");
}

std::vector<MockBackend::Rule> load_mock_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("mock rules: cannot open " + path.string());
  std::vector<MockBackend::Rule> rules;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      fail("mock rules: " + path.string() + ": line " + std::to_string(lineno) +
           ": expected pattern<TAB>template");
    std::string tmpl;
    const std::string raw = line.substr(tab + 1);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 1 < raw.size()) {
        const char d = raw[i + 1];
        if (d == 'n') { tmpl.push_back('\n'); ++i; continue; }
        if (d == 't') { tmpl.push_back('\t'); ++i; continue; }
        if (d == '\\') { tmpl.push_back('\\'); ++i; continue; }
      }
      tmpl.push_back(raw[i]);
    }
    rules.push_back({line.substr(0, tab), tmpl});
  }
  return rules;
}

// ---------------------------------------------------------------------------
// http backend
// ---------------------------------------------------------------------------

namespace {

struct EndpointParts {
  std::string base;  // scheme://host[:port]
  std::string path;
};

EndpointParts split_endpoint(const std::string& endpoint) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos)
    fail("llm: endpoint must start with http:// or https://: " + endpoint);
  const auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, "/v1/chat/completions"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace

HttpBackend::HttpBackend(LlmConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) fail("llm: http backend needs an endpoint");
}

BackendReply HttpBackend::do_send(const std::string& prompt) {
  const auto parts = split_endpoint(config_.endpoint);
  httplib::Client client(parts.base);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  client.set_connection_timeout(secs.count() > 0 ? secs.count() : 1, 0);
  client.set_read_timeout(secs.count() > 0 ? secs.count() : 1, 0);
  client.set_write_timeout(secs.count() > 0 ? secs.count() : 1, 0);

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const json body = {
      {"model", config_.model_id},
      {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
      {"temperature", config_.temperature},
      {"max_tokens", config_.max_output_tokens},
  };
  const auto res = client.Post(parts.path, headers, body.dump(), "application/json");
  if (!res) return {0, "", httplib::to_string(res.error())};
  if (res->status != 200) return {res->status, "", res->body};
  try {
    const json reply = json::parse(res->body);
    return {200, reply.at("choices").at(0).at("message").at("content").get<std::string>(), ""};
  } catch (const std::exception& e) {
    return {0, "", std::string("malformed completion response: ") + e.what()};
  }
}

// ---------------------------------------------------------------------------
// client: retries, in-flight bound, cache
// ---------------------------------------------------------------------------

std::string cache_key(const std::string& model_id, const std::string& prompt) {
  std::string payload;
  payload.reserve(model_id.size() + prompt.size() + 1);
  payload += model_id;
  payload.push_back('\0');
  payload += prompt;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(payload.data(), payload.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

LlmClient::LlmClient(LlmConfig config, Backend& backend)
    : config_(std::move(config)),
      backend_(&backend),
      in_flight_(std::max(config_.max_in_flight, 1)) {
  if (config_.max_retries < 0) fail("llm: max_retries must be >= 0");
}

namespace {

bool transient_status(int status) {
  return status == 0 || status == 408 || status == 425 || status == 429 ||
         (status >= 500 && status < 600);
}

}  // namespace

CompletionResult LlmClient::complete(const std::string& prompt) {
  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_retries + 1; ++attempt) {
    BackendReply reply;
    {
      in_flight_.acquire();
      reply = backend_->send(prompt);
      in_flight_.release();
    }
    if (reply.status == 200) return {reply.text, attempt, false};
    if (!transient_status(reply.status))
      fail("llm: http " + std::to_string(reply.status) + ": " + reply.error);
    last_error = reply.status == 0 ? reply.error
                                   : "http " + std::to_string(reply.status) + ": " + reply.error;
    if (attempt <= config_.max_retries && config_.retry_backoff.count() > 0)
      std::this_thread::sleep_for(config_.retry_backoff * (1 << (attempt - 1)));
  }
  fail("llm: retries exhausted after " + std::to_string(config_.max_retries + 1) +
       " attempts: " + last_error);
}

CompletionResult LlmClient::cached_complete(const std::filesystem::path& cache_dir,
                                            const std::string& prompt) {
  const std::string key = cache_key(config_.model_id, prompt);
  const auto record_path = cache_dir / (key + ".json");

  if (std::filesystem::exists(record_path)) {
    try {
      std::ifstream in(record_path);
      const json record = json::parse(in);
      CompletionResult out;
      out.text = record.at("response").get<std::string>();
      out.attempt_count = record.value("attempt_count", 1);
      out.from_cache = true;
      return out;
    } catch (const std::exception&) {
      // corrupt record: fall through and recompute
    }
  }

  const CompletionResult result = complete(prompt);
  std::filesystem::create_directories(cache_dir);
  const json record = {
      {"cache_key", key},
      {"model_id", config_.model_id},
      {"prompt", prompt},
      {"response", result.text},
      {"timestamp",
       std::chrono::duration_cast<std::chrono::seconds>(
           std::chrono::system_clock::now().time_since_epoch()).count()},
      {"attempt_count", result.attempt_count},
  };
  const auto tmp_path = cache_dir / (key + ".json.tmp" + std::to_string(
      std::hash<std::thread::id>{}(std::this_thread::get_id())));
  {
    std::ofstream out(tmp_path);
    if (!out) fail("llm cache: cannot write " + tmp_path.string());
    out << record.dump();
  }
  std::filesystem::rename(tmp_path, record_path);  // atomic on POSIX
  return result;
}

CompletionResult complete(const LlmConfig& config, Backend& backend, const std::string& prompt) {
  LlmClient client(config, backend);
  return client.complete(prompt);
}

CompletionResult cached_complete(const LlmConfig& config, Backend& backend,
                                 const std::filesystem::path& cache_dir,
                                 const std::string& prompt) {
  LlmClient client(config, backend);
  return client.cached_complete(cache_dir, prompt);
}

CacheStats cache_stats(const std::filesystem::path& cache_dir) {
  CacheStats stats;
  if (!std::filesystem::exists(cache_dir)) return stats;
  for (const auto& entry : std::filesystem::directory_iterator(cache_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    ++stats.records;
    stats.bytes += entry.file_size();
  }
  return stats;
}

}  // namespace slowads
