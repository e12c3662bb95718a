#include <cstdio>

#include "symbolbench/llm/gateway.hpp"

namespace symbolbench::llm {

namespace {

std::string round4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string serialize_timeseries(const dynamics::Trajectory& traj,
                                 const std::vector<std::string>& variable_names,
                                 int row_budget) {
  const int n = traj.length();
  const int d = traj.dim();

  std::string out = "t";
  for (int j = 0; j < d; ++j) {
    out += ", ";
    out += j < static_cast<int>(variable_names.size()) && !variable_names[j].empty()
               ? variable_names[j]
               : "x_" + std::to_string(j);
  }
  out += "\n";

  std::vector<int> rows;
  if (row_budget <= 0 || n <= row_budget) {
    rows.resize(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) rows[static_cast<size_t>(t)] = t;
  } else {
    // Uniform subsampling that always keeps both endpoints.
    rows.reserve(static_cast<size_t>(row_budget));
    for (int k = 0; k < row_budget; ++k) {
      long long idx = static_cast<long long>(k) * (n - 1) / (row_budget - 1);
      rows.push_back(static_cast<int>(idx));
    }
  }

  for (int t : rows) {
    out += round4(traj.times[t]);
    for (int j = 0; j < d; ++j) {
      out += ", ";
      out += round4(traj.values[t][j]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace symbolbench::llm
