#include <cstdio>
#include <stdexcept>

#include "symbolbench/llm/gateway.hpp"

namespace symbolbench::llm {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Naive: return "naive";
    case Strategy::Base: return "base";
    case Strategy::Context: return "context";
    case Strategy::CoT: return "cot";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "naive") return Strategy::Naive;
  if (name == "base") return Strategy::Base;
  if (name == "context") return Strategy::Context;
  if (name == "cot") return Strategy::CoT;
  return std::nullopt;
}

namespace {

std::string format_instructions(const PromptSpec& spec) {
  const std::string d = std::to_string(spec.dim);
  switch (spec.task) {
    case metrics::TaskKind::Cde:
      return
          "Propose the governing system of coupled ordinary differential "
          "equations dx_i/dt = f_i(x_0, ..., x_" + std::to_string(spec.dim - 1) +
          ") that generated the data.\n"
          "End your reply with a single JSON object:\n"
          "{\"eq\": \"<expr_0> | <expr_1> | ...\", \"dim\": " + d + "}\n"
          "The \"eq\" string holds exactly " + d + " expressions separated by "
          "'|', one per dx_i/dt in variable order. Expressions may use the "
          "variables x_0..x_" + std::to_string(spec.dim - 1) + ", the unknown "
          "coefficient placeholder c, real literals, the operators + - * / ** "
          "and the functions sin, cos, tan, exp, log, sqrt, abs, cot. Write "
          "every unknown constant as c; a fitting stage assigns its value.";
    case metrics::TaskKind::Bn:
      return
          "Propose the synchronous Boolean update rules x_i(t+1) = "
          "f_i(x_1(t), ..., x_" + d + "(t)) that generated the transitions.\n"
          "End your reply with a single JSON object:\n"
          "{\"rules\": [\"x1 = <expr>\", ..., \"x" + d + " = <expr>\"], \"dim\": " + d + "}\n"
          "Use the 1-based variables x1..x" + d + " and the operators AND, OR, "
          "NOT with parentheses. Provide exactly one rule per variable.";
    case metrics::TaskKind::Scm:
      return
          "Propose the lagged causal graph of the series: which variables "
          "influence which, and at what lag.\n"
          "End your reply with a single JSON object:\n"
          "{\"edges\": [[source, lag, target], ...], \"dim\": " + d +
          ", \"max_lag\": " + std::to_string(spec.max_lag) + "}\n"
          "Variables are 0-based indices; an edge [j, l, i] means x_j at time "
          "t-l influences x_i at time t, with integer lags in [1, " +
          std::to_string(spec.max_lag) + "].";
  }
  return "";
}

std::string history_section(const PromptSpec& spec) {
  std::string out = "\n\nPreviously proposed candidates with their verification scores "
                    "(higher is better); propose something better, not a duplicate:\n";
  if (spec.history.empty()) {
    out += "(none yet)\n";
    return out;
  }
  for (const auto& entry : spec.history) {
    char line[64];
    std::snprintf(line, sizeof(line), "score=%.6g, complexity=%d", entry.score,
                  entry.complexity);
    out += "- " + entry.structure_text + "  [" + line;
    if (entry.rubric_mean) {
      char rb[32];
      std::snprintf(rb, sizeof(rb), ", rubric=%.3g", *entry.rubric_mean);
      out += rb;
    }
    out += "]\n";
  }
  return out;
}

std::string context_section(const PromptSpec& spec) {
  std::string out = "\n\nContext for this system:\n";
  if (!spec.domain_text.empty()) out += "Domain: " + spec.domain_text + "\n";
  if (!spec.variable_descriptions.empty()) {
    out += "Variables:\n";
    for (const auto& v : spec.variable_descriptions) out += "- " + v + "\n";
  }
  return out;
}

}  // namespace

std::vector<ChatMessage> build_prompt(const PromptSpec& spec) {
  if ((spec.strategy == Strategy::Context || spec.strategy == Strategy::CoT) &&
      spec.domain_text.empty() && spec.variable_descriptions.empty()) {
    throw std::invalid_argument("build_prompt: context strategy requires context fields");
  }

  std::string system =
      "You are an expert scientist uncovering symbolic structure in time "
      "series data. Base your proposal on the observations given, and follow "
      "the output format exactly.\n\n" +
      format_instructions(spec);

  // Sections are appended in a fixed order so that every strategy's user
  // message is a prefix of the next richer strategy's message.
  std::string user = "Observed time series:\n" + spec.series_text;
  if (spec.strategy != Strategy::Naive) user += history_section(spec);
  if (spec.strategy == Strategy::Context || spec.strategy == Strategy::CoT) {
    user += context_section(spec);
  }
  if (spec.strategy == Strategy::CoT) {
    user +=
        "\n\nReason step by step about the trends, interactions and plausible "
        "mechanisms before answering; write out the reasoning, then emit the "
        "final answer object on its own line.";
  }

  return {{"system", std::move(system)}, {"user", std::move(user)}};
}

}  // namespace symbolbench::llm
