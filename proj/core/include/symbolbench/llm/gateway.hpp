#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symbolbench/dynamics/trajectory.hpp"
#include "symbolbench/expr/structure.hpp"
#include "symbolbench/metrics/scorecard.hpp"

namespace symbolbench::llm {

// ---- time-series serialization ---------------------------------------------

/// Serializes a trajectory as a CSV-like block: a header of variable names,
/// then one `t, x_0, ..., x_{D-1}` row per kept time point, values rounded
/// to 4 significant digits. When the row count exceeds `row_budget`, rows
/// are subsampled uniformly, always keeping the first and last.
std::string serialize_timeseries(const dynamics::Trajectory& traj,
                                 const std::vector<std::string>& variable_names,
                                 int row_budget);

// ---- prompt building ---------------------------------------------------------

enum class Strategy { Naive, Base, Context, CoT };

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

struct HistoryEntry {
  std::string structure_text;
  double score = 0.0;
  int complexity = 0;
  std::optional<double> rubric_mean;
};

struct PromptSpec {
  metrics::TaskKind task = metrics::TaskKind::Cde;
  Strategy strategy = Strategy::Naive;
  int dim = 1;
  int max_lag = 1;  // SCM only
  std::string series_text;
  std::string domain_text;                          // Context/CoT
  std::vector<std::string> variable_descriptions;   // Context/CoT
  std::vector<HistoryEntry> history;                // Base/Context/CoT
};

struct ChatMessage {
  std::string role;
  std::string content;
};

/// Deterministic message list (system + user). Sections are strictly
/// additive across strategies: Naive carries only the series and format
/// instructions, Base adds the history section, Context adds the context
/// section, CoT adds the step-by-step reasoning instruction. Throws when a
/// Context/CoT spec has no context fields.
std::vector<ChatMessage> build_prompt(const PromptSpec& spec);

// ---- chat-completion client --------------------------------------------------

struct ModelConfig {
  std::string base_url = "http://127.0.0.1:8080/v1";
  std::string model = "mock";
  double temperature = 0.7;       // predictor default
  double judge_temperature = 0.0;
  int max_tokens = 4096;
  int concurrency = 4;            // bound on in-flight requests
  double rate_limit_per_s = 0.0;  // token bucket; 0 disables
  int transport_retries = 3;      // attempts on transient failures
  double backoff_initial_ms = 200.0;
  int timeout_s = 120;
  std::string api_key_env = "SYMBOLBENCH_API_KEY";
};

class TransportError : public std::runtime_error {
 public:
  TransportError(const std::string& what, int attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

/// Thread-safe chat-completion client (OpenAI-style /chat/completions).
/// Retries transient failures with exponential backoff, enforces the
/// concurrency bound and the rate limit, and appends every raw exchange to
/// the transcript file when one is configured.
class ChatClient {
 public:
  explicit ChatClient(ModelConfig cfg, std::string transcript_path = "");
  ~ChatClient();

  ChatClient(const ChatClient&) = delete;
  ChatClient& operator=(const ChatClient&) = delete;

  /// Returns the assistant text. Throws TransportError after exhausting the
  /// transport retries (HTTP error, timeout, or empty completion).
  std::string complete(const std::vector<ChatMessage>& messages,
                       std::optional<double> temperature = std::nullopt);

  /// Number of complete() invocations that reached the wire at least once.
  std::uint64_t calls_made() const;

  const ModelConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// ---- candidate parsing -------------------------------------------------------

enum class ReplyErrorCode { NoObject, DimMismatch, SyntaxError };

class ReplyError : public std::runtime_error {
 public:
  ReplyError(ReplyErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ReplyErrorCode code() const { return code_; }

 private:
  ReplyErrorCode code_;
};

struct ParsedCandidate {
  expr::Structure structure;
  std::string reasoning;  // text preceding the final answer object
};

/// Extracts the last well-formed candidate object from a model reply
/// (tolerating surrounding prose and intermediate objects), validates its
/// dimension and routes it to the matching parser. Expected shapes:
///   CDE  {"eq": "<'|'-joined equations>", "dim": D}
///   BN   {"rules": ["x1 = ...", ...], "dim": D}
///   SCM  {"edges": [[source, lag, target], ...], "dim": D, "max_lag": M}
ParsedCandidate parse_candidate(const std::string& text, metrics::TaskKind task,
                                int dim, int max_lag = 1);

// ---- judging -------------------------------------------------------------------

struct JudgeRequest {
  metrics::TaskKind task = metrics::TaskKind::Cde;
  std::string candidate_text;
  std::string reasoning;
  std::string domain_text;
  std::vector<std::string> variable_descriptions;
};

std::vector<ChatMessage> build_judge_prompt(const JudgeRequest& req);

/// Parses a four-field integer rubric object from a judge reply. Values
/// outside [1, 5] are clamped and flagged. Throws ReplyError when no rubric
/// object can be found.
metrics::Rubric parse_judge_reply(const std::string& text);

/// Builds the rubric prompt, calls the model at the judge temperature, and
/// parses the reply, retrying parse failures. Throws after `retries`
/// unusable replies.
metrics::Rubric judge(ChatClient& client, const JudgeRequest& req, int retries = 2);

}  // namespace symbolbench::llm
