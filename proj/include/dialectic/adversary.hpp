#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "dialectic/backend.hpp"
#include "dialectic/types.hpp"

namespace dialectic {

// Example dropped because no invalid solution landed within the budget.
struct Skip {
  int attempts = 0;
  std::string reason;
};

// Boolean: negation of gold. Categorical: uniform non-gold label under a
// generator seeded from (rng_seed, problem id). Numeric/FreeText: absent —
// the direct-wrong instruction path carries no target.
std::optional<std::string> pick_wrong_target(const Problem& problem, std::uint64_t rng_seed);

std::variant<Solution, Skip> synthesize_invalid_solution(const Problem& problem, Backend& backend,
                                                         int max_attempts = 5, std::uint64_t rng_seed = 0);

}  // namespace dialectic
