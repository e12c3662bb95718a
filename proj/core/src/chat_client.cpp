#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <thread>

#ifdef SYMBOLBENCH_HTTPS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "symbolbench/llm/gateway.hpp"

namespace symbolbench::llm {

using nlohmann::json;

namespace {

struct ParsedUrl {
  bool https = false;
  std::string host;
  int port = 80;
  std::string prefix;  // path prefix, no trailing slash
};

ParsedUrl parse_url(const std::string& url) {
  ParsedUrl out;
  std::string rest = url;
  if (rest.rfind("https://", 0) == 0) {
    out.https = true;
    out.port = 443;
    rest = rest.substr(8);
  } else if (rest.rfind("http://", 0) == 0) {
    rest = rest.substr(7);
  } else {
    throw std::invalid_argument("base_url must start with http:// or https://");
  }
  size_t slash = rest.find('/');
  std::string authority = slash == std::string::npos ? rest : rest.substr(0, slash);
  if (slash != std::string::npos) {
    out.prefix = rest.substr(slash);
    while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  }
  size_t colon = authority.find(':');
  if (colon != std::string::npos) {
    out.host = authority.substr(0, colon);
    out.port = std::atoi(authority.substr(colon + 1).c_str());
  } else {
    out.host = authority;
  }
  if (out.host.empty()) throw std::invalid_argument("base_url has no host");
  return out;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class TokenBucket {
 public:
  explicit TokenBucket(double rate_per_s) : rate_(rate_per_s) {
    tokens_ = rate_ > 0.0 ? std::max(1.0, rate_) : 0.0;
    capacity_ = tokens_;
    last_ = std::chrono::steady_clock::now();
  }

  void acquire() {
    if (rate_ <= 0.0) return;
    while (true) {
      {
        std::lock_guard lock(mu_);
        refill();
        if (tokens_ >= 1.0) {
          tokens_ -= 1.0;
          return;
        }
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }

 private:
  void refill() {
    const auto now = std::chrono::steady_clock::now();
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(capacity_, tokens_ + elapsed * rate_);
  }

  double rate_;
  double tokens_;
  double capacity_;
  std::chrono::steady_clock::time_point last_;
  std::mutex mu_;
};

class Gate {
 public:
  explicit Gate(int limit) : limit_(std::max(1, limit)) {}
  void enter() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return in_flight_ < limit_; });
    ++in_flight_;
  }
  void leave() {
    {
      std::lock_guard lock(mu_);
      --in_flight_;
    }
    cv_.notify_one();
  }

 private:
  int limit_;
  int in_flight_ = 0;
  std::mutex mu_;
  std::condition_variable cv_;
};

}  // namespace

struct ChatClient::Impl {
  ModelConfig cfg;
  ParsedUrl url;
  std::string api_key;
  std::string transcript_path;
  std::mutex transcript_mu;
  std::atomic<std::uint64_t> calls{0};
  TokenBucket bucket;
  Gate gate;

  Impl(ModelConfig c, std::string transcript)
      : cfg(std::move(c)),
        url(parse_url(cfg.base_url)),
        transcript_path(std::move(transcript)),
        bucket(cfg.rate_limit_per_s),
        gate(cfg.concurrency) {
    if (const char* key = std::getenv(cfg.api_key_env.c_str())) api_key = key;
  }

  void log_exchange(const json& entry) {
    if (transcript_path.empty()) return;
    std::lock_guard lock(transcript_mu);
    std::ofstream out(transcript_path, std::ios::app);
    out << entry.dump() << "\n";
  }

  httplib::Result post(const std::string& body) {
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
#ifdef SYMBOLBENCH_HTTPS
    if (url.https) {
      httplib::SSLClient client(url.host, url.port);
      client.set_connection_timeout(cfg.timeout_s);
      client.set_read_timeout(cfg.timeout_s);
      return client.Post(url.prefix + "/chat/completions", headers, body,
                         "application/json");
    }
#endif
    if (url.https) {
      throw TransportError("https endpoint but TLS support is not compiled in", 0);
    }
    httplib::Client client(url.host, url.port);
    client.set_connection_timeout(cfg.timeout_s);
    client.set_read_timeout(cfg.timeout_s);
    return client.Post(url.prefix + "/chat/completions", headers, body,
                       "application/json");
  }
};

ChatClient::ChatClient(ModelConfig cfg, std::string transcript_path)
    : impl_(std::make_unique<Impl>(std::move(cfg), std::move(transcript_path))) {}

ChatClient::~ChatClient() = default;

std::uint64_t ChatClient::calls_made() const { return impl_->calls.load(); }

const ModelConfig& ChatClient::config() const { return impl_->cfg; }

std::string ChatClient::complete(const std::vector<ChatMessage>& messages,
                                 std::optional<double> temperature) {
  impl_->calls.fetch_add(1);

  json request;
  request["model"] = impl_->cfg.model;
  request["temperature"] = temperature.value_or(impl_->cfg.temperature);
  request["max_tokens"] = impl_->cfg.max_tokens;
  request["messages"] = json::array();
  for (const auto& m : messages) {
    request["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  const std::string body = request.dump();

  const int max_attempts = impl_->cfg.transport_retries + 1;
  std::string last_error;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (attempt > 1) {
      const double ms = impl_->cfg.backoff_initial_ms * std::pow(2.0, attempt - 2);
      std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(ms));
    }
    impl_->bucket.acquire();
    impl_->gate.enter();
    httplib::Result res = impl_->post(body);
    impl_->gate.leave();

    json entry = {{"time", timestamp()},
                  {"attempt", attempt},
                  {"model", impl_->cfg.model},
                  {"request", request}};

    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      entry["error"] = last_error;
      impl_->log_exchange(entry);
      continue;
    }
    entry["status"] = res->status;
    if (res->status == 200) {
      std::string content;
      json reply = json::parse(res->body, nullptr, false);
      if (!reply.is_discarded()) {
        content = reply.value("/choices/0/message/content"_json_pointer, std::string());
      }
      entry["response"] = content;
      impl_->log_exchange(entry);
      if (content.empty()) {
        last_error = "empty completion";
        continue;
      }
      return content;
    }
    entry["response"] = res->body;
    impl_->log_exchange(entry);
    last_error = "http status " + std::to_string(res->status);
    if (res->status != 429 && res->status < 500) {
      throw TransportError(last_error, attempt);  // no point retrying 4xx
    }
  }
  throw TransportError(last_error + " after " + std::to_string(max_attempts) +
                           " attempts",
                       max_attempts);
}

}  // namespace symbolbench::llm
