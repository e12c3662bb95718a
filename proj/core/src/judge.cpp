#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "symbolbench/llm/gateway.hpp"

namespace symbolbench::llm {

using nlohmann::json;

namespace {

const char* kFields[4] = {"context_alignment", "scientific_plausibility",
                          "conciseness_clarity", "logical_coherence"};

const char* candidate_noun(metrics::TaskKind task) {
  switch (task) {
    case metrics::TaskKind::Cde: return "system of coupled differential equations";
    case metrics::TaskKind::Bn: return "set of Boolean update rules";
    case metrics::TaskKind::Scm: return "lagged causal graph";
  }
  return "structure";
}

}  // namespace

std::vector<ChatMessage> build_judge_prompt(const JudgeRequest& req) {
  std::string system =
      "You are a strict scientific reviewer. Score the candidate " +
      std::string(candidate_noun(req.task)) +
      " on four criteria, each an integer from 1 (poor) to 5 (excellent):\n"
      "(a) context_alignment: alignment with the provided time series data and "
      "contextual descriptions;\n"
      "(b) scientific_plausibility: alignment with plausible physical laws or "
      "domain-specific constraints;\n"
      "(c) conciseness_clarity: readability and succinctness of the reasoning "
      "path;\n"
      "(d) logical_coherence: consistency and step-by-step soundness of the "
      "derivation.\n"
      "Reply with a single JSON object exactly of the form\n"
      "{\"context_alignment\": n, \"scientific_plausibility\": n, "
      "\"conciseness_clarity\": n, \"logical_coherence\": n}";

  std::string user = "Candidate:\n" + req.candidate_text + "\n";
  if (!req.reasoning.empty()) user += "\nStated reasoning:\n" + req.reasoning + "\n";
  if (!req.domain_text.empty()) user += "\nDomain: " + req.domain_text + "\n";
  if (!req.variable_descriptions.empty()) {
    user += "Variables:\n";
    for (const auto& v : req.variable_descriptions) user += "- " + v + "\n";
  }
  return {{"system", std::move(system)}, {"user", std::move(user)}};
}

metrics::Rubric parse_judge_reply(const std::string& text) {
  // Reuse the last-object extraction discipline: scan balanced objects and
  // keep the last one carrying all four fields.
  std::optional<json> rubric;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    int depth = 0;
    bool in_string = false, escaped = false;
    for (size_t j = i; j < text.size(); ++j) {
      const char c = text[j];
      if (in_string) {
        if (escaped) escaped = false;
        else if (c == '\\') escaped = true;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{') ++depth;
      else if (c == '}' && --depth == 0) {
        json parsed = json::parse(text.substr(i, j - i + 1), nullptr, false);
        if (!parsed.is_discarded() && parsed.is_object()) {
          bool complete = true;
          for (const char* field : kFields) {
            if (!parsed.contains(field) || !parsed[field].is_number()) complete = false;
          }
          if (complete) rubric = std::move(parsed);
        }
        i = j;
        break;
      }
    }
  }
  if (!rubric) {
    throw ReplyError(ReplyErrorCode::NoObject, "no rubric object found in judge reply");
  }

  metrics::Rubric out;
  int* slots[4] = {&out.context_alignment, &out.scientific_plausibility,
                   &out.conciseness_clarity, &out.logical_coherence};
  for (int k = 0; k < 4; ++k) {
    int value = static_cast<int>(std::lround((*rubric)[kFields[k]].get<double>()));
    if (value < 1 || value > 5) {
      out.clamped = true;
      value = std::clamp(value, 1, 5);
    }
    *slots[k] = value;
  }
  return out;
}

metrics::Rubric judge(ChatClient& client, const JudgeRequest& req, int retries) {
  std::vector<ChatMessage> messages = build_judge_prompt(req);
  std::string last_error;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    std::string reply;
    try {
      reply = client.complete(messages, client.config().judge_temperature);
    } catch (const TransportError& e) {
      last_error = e.what();
      continue;
    }
    try {
      return parse_judge_reply(reply);
    } catch (const ReplyError& e) {
      last_error = e.what();
    }
  }
  throw ReplyError(ReplyErrorCode::NoObject,
                   "judge reply unusable after retries: " + last_error);
}

}  // namespace symbolbench::llm
