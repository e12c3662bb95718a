// In-process scripted chat-completion endpoint for loop and client tests.
#pragma once

#include <atomic>
#include <functional>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <string>
#include <thread>

namespace mock_llm {

struct Request {
  int index = 0;                 // 0-based request counter
  nlohmann::json body;           // full request object
  std::string user_content;      // last user message content
};

struct Reply {
  int status = 200;
  std::string content;  // assistant text (used when status == 200)
};

/// Scripted OpenAI-style /chat/completions server on an ephemeral local
/// port. The handler decides each reply from the request counter and body.
class MockServer {
 public:
  using Handler = std::function<Reply(const Request&)>;

  explicit MockServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   Request request;
                   request.index = counter_.fetch_add(1);
                   request.body = nlohmann::json::parse(req.body, nullptr, false);
                   if (request.body.is_object() && request.body.contains("messages")) {
                     for (const auto& m : request.body["messages"]) {
                       if (m.value("role", "") == "user") {
                         request.user_content = m.value("content", "");
                       }
                     }
                   }
                   Reply reply = handler_(request);
                   if (reply.status != 200) {
                     res.status = reply.status;
                     res.set_content("scripted failure", "text/plain");
                     return;
                   }
                   nlohmann::json body = {
                       {"choices",
                        {{{"message",
                           {{"role", "assistant"}, {"content", reply.content}}}}}}};
                   res.set_content(body.dump(), "application/json");
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string base_url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1";
  }
  int requests_served() const { return counter_.load(); }

 private:
  Handler handler_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> counter_{0};
};

inline MockServer::Handler fixed_reply(std::string text) {
  return [text = std::move(text)](const Request&) { return Reply{200, text}; };
}

inline MockServer::Handler scripted_replies(std::vector<std::string> replies) {
  return [replies = std::move(replies)](const Request& req) {
    const size_t i = std::min(static_cast<size_t>(req.index), replies.size() - 1);
    return Reply{200, replies[i]};
  };
}

}  // namespace mock_llm
