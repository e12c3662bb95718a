#pragma once

#include "symbolbench/dynamics/trajectory.hpp"
#include "symbolbench/expr/bool_ast.hpp"

namespace symbolbench::dynamics {

/// Deterministic synchronous orbit of length steps+1 for each initial state:
/// every rule is applied to the state at time t to produce time t+1.
std::vector<BoolOrbit> simulate_boolean(
    const expr::BooleanNetwork& net,
    const std::vector<std::vector<std::uint8_t>>& initial_states, int steps);

/// One synchronous update.
std::vector<std::uint8_t> boolean_step(const expr::BooleanNetwork& net,
                                       const std::vector<std::uint8_t>& state);

}  // namespace symbolbench::dynamics
