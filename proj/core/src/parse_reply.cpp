#include <nlohmann/json.hpp>

#include "symbolbench/expr/parse.hpp"
#include "symbolbench/llm/gateway.hpp"

namespace symbolbench::expr {

std::string to_text(const Structure& s) {
  if (const auto* sys = std::get_if<AlgebraicSystem>(&s)) return to_string(*sys);
  if (const auto* net = std::get_if<BooleanNetwork>(&s)) {
    std::string out;
    for (const auto& line : to_rule_lines(*net)) {
      if (!out.empty()) out += "\n";
      out += line;
    }
    return out;
  }
  const auto& graph = std::get<ScmGraph>(s);
  std::string out = "[";
  bool first = true;
  for (const auto& e : graph.edges) {
    if (!first) out += ", ";
    first = false;
    out += "[" + std::to_string(e.source) + ", " + std::to_string(e.lag) + ", " +
           std::to_string(e.target) + "]";
  }
  return out + "]";
}

}  // namespace symbolbench::expr

namespace symbolbench::llm {

using nlohmann::json;

namespace {

struct FoundObject {
  json value;
  size_t begin = 0;
};

// Balanced-brace scan (string-aware), collecting every parseable top-level
// object in the text. Reasoning prose and markdown fences around the
// objects are tolerated by construction.
std::vector<FoundObject> scan_objects(const std::string& text) {
  std::vector<FoundObject> found;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (size_t j = i; j < text.size(); ++j) {
      const char c = text[j];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) {
          json parsed = json::parse(text.substr(i, j - i + 1), nullptr, false);
          if (!parsed.is_discarded() && parsed.is_object()) {
            found.push_back({std::move(parsed), i});
          }
          i = j;  // resume the outer scan after this object
          break;
        }
      }
    }
  }
  return found;
}

bool matches_task(const json& obj, metrics::TaskKind task) {
  switch (task) {
    case metrics::TaskKind::Cde:
      return obj.contains("eq") && obj["eq"].is_string();
    case metrics::TaskKind::Bn:
      return obj.contains("rules") && obj["rules"].is_array();
    case metrics::TaskKind::Scm:
      return obj.contains("edges") && obj["edges"].is_array();
  }
  return false;
}

}  // namespace

ParsedCandidate parse_candidate(const std::string& text, metrics::TaskKind task,
                                int dim, int max_lag) {
  std::vector<FoundObject> objects = scan_objects(text);

  // Last well-formed object of the expected shape wins; reasoning chains
  // narrate intermediate objects before the final answer.
  const FoundObject* chosen = nullptr;
  for (const auto& obj : objects) {
    if (matches_task(obj.value, task)) chosen = &obj;
  }
  if (!chosen) {
    throw ReplyError(ReplyErrorCode::NoObject, "no candidate object found in reply");
  }
  const json& obj = chosen->value;

  if (obj.contains("dim") && obj["dim"].is_number_integer() &&
      obj["dim"].get<int>() != dim) {
    throw ReplyError(ReplyErrorCode::DimMismatch,
                     "candidate dim " + obj["dim"].dump() + " does not match sample dim " +
                         std::to_string(dim));
  }

  ParsedCandidate out;
  out.reasoning = text.substr(0, chosen->begin);
  while (!out.reasoning.empty() &&
         (out.reasoning.back() == '\n' || out.reasoning.back() == ' ')) {
    out.reasoning.pop_back();
  }

  try {
    switch (task) {
      case metrics::TaskKind::Cde:
        out.structure = expr::parse_algebraic(obj["eq"].get<std::string>(), dim);
        break;
      case metrics::TaskKind::Bn: {
        std::vector<std::string> lines;
        for (const auto& rule : obj["rules"]) {
          if (!rule.is_string()) {
            throw ReplyError(ReplyErrorCode::SyntaxError, "rules must be strings");
          }
          lines.push_back(rule.get<std::string>());
        }
        out.structure = expr::parse_boolean(lines, dim);
        break;
      }
      case metrics::TaskKind::Scm: {
        expr::ScmGraph graph;
        graph.dim = dim;
        graph.max_lag = max_lag;
        for (const auto& edge : obj["edges"]) {
          if (!edge.is_array() || edge.size() != 3 || !edge[0].is_number_integer() ||
              !edge[1].is_number_integer() || !edge[2].is_number_integer()) {
            throw ReplyError(ReplyErrorCode::SyntaxError,
                             "edges must be [source, lag, target] integer triples");
          }
          graph.edges.insert({edge[0].get<int>(), edge[1].get<int>(), edge[2].get<int>()});
        }
        graph.validate();
        out.structure = std::move(graph);
        break;
      }
    }
  } catch (const ReplyError&) {
    throw;
  } catch (const std::exception& e) {
    throw ReplyError(ReplyErrorCode::SyntaxError, e.what());
  }

  // Equation-count mismatches surface as parser errors; report them as the
  // dimension errors they are.
  return out;
}

}  // namespace symbolbench::llm
