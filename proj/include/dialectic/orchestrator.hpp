#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "dialectic/backend.hpp"
#include "dialectic/types.hpp"

namespace dialectic {

inline constexpr const char* kDefaultGoalPrompt =
    "Let's have a conversation over the provided question and try to decide the "
    "correct answer together. We can start by stating each of our own solutions first.";

struct DebateConfig {
  int rounds_after_initial = 2;  // >= 1
  std::string shared_goal_prompt = kDefaultGoalPrompt;
  double temperature = 0.0;
};

// One debate under the given ordering. Turns 0 and 1 carry the initial
// solutions verbatim; the remaining 2*rounds turns query the speaking agent's
// backend with its own view (own turns as assistant, opponent's as user).
// Neither context ever contains the gold answer. A mid-debate backend failure
// marks the transcript aborted.
Transcript run_debate(const Problem& problem, const Solution& model_initial, const Solution& user_initial,
                      Ordering ordering, Backend& model_backend, Backend& user_backend,
                      const DebateConfig& config);

// Both orderings; the two debates share no conversational state.
std::pair<Transcript, Transcript> run_example_pair(const Problem& problem, const Solution& model_initial,
                                                   const Solution& user_initial, Backend& model_backend,
                                                   Backend& user_backend, const DebateConfig& config);

// Human replaces the simulated user; turns are read line-by-line from `in`.
// The human sees the model's turns but never the gold answer.
Transcript run_interactive_debate(const Problem& problem, const Solution& model_initial,
                                  Backend& model_backend, const DebateConfig& config, std::istream& in,
                                  std::ostream& out);

}  // namespace dialectic
