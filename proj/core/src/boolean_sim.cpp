#include "symbolbench/dynamics/boolean_sim.hpp"

#include <stdexcept>

#include "symbolbench/expr/eval.hpp"

namespace symbolbench::dynamics {

std::vector<std::uint8_t> boolean_step(const expr::BooleanNetwork& net,
                                       const std::vector<std::uint8_t>& state) {
  if (static_cast<int>(state.size()) != net.dim) {
    throw std::invalid_argument("boolean_step: state length mismatch");
  }
  std::vector<std::uint8_t> next(state.size());
  for (int i = 0; i < net.dim; ++i) {
    next[i] = expr::evaluate(net.rules[i], state) ? 1 : 0;
  }
  return next;
}

std::vector<BoolOrbit> simulate_boolean(
    const expr::BooleanNetwork& net,
    const std::vector<std::vector<std::uint8_t>>& initial_states, int steps) {
  std::vector<BoolOrbit> orbits;
  orbits.reserve(initial_states.size());
  for (const auto& init : initial_states) {
    BoolOrbit orbit;
    orbit.reserve(static_cast<size_t>(steps) + 1);
    orbit.push_back(init);
    for (int s = 0; s < steps; ++s) {
      orbit.push_back(boolean_step(net, orbit.back()));
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace symbolbench::dynamics
