#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dialectic/backend.hpp"
#include "dialectic/types.hpp"

namespace dialectic {

struct PromptPack {
  std::string cot_instruction = "Let's think step by step.";
  std::vector<std::pair<std::string, std::string>> demonstrations;  // (question, solution)
  std::string demonstration_set_label = "valid-cot";
};

// instruction: plain-text file. demonstrations: JSONL {"question","solution"}.
PromptPack load_prompt_pack(const std::string& instruction_path,
                            const std::optional<std::string>& demonstrations_path,
                            const std::string& label);

// Zero-shot: one user message (instruction + question). Few-shot prepends the
// demonstrations as alternating user/assistant exchanges.
std::vector<ChatMessage> build_cot_prompt(const Problem& problem, const PromptPack& pack);

Solution elicit_solution(const Problem& problem, const PromptPack& pack, Backend& backend,
                         double temperature);

struct FilterCounts {
  int kept = 0;
  int dropped = 0;
};

// Keeps exactly the pairs whose greedy solution is correct, in input order.
std::vector<std::pair<Problem, Solution>> filter_eval_set(const std::vector<Problem>& problems,
                                                          const std::vector<Solution>& solutions,
                                                          FilterCounts* counts = nullptr);

ConfidenceEstimate estimate_confidence(const Problem& problem, const PromptPack& pack, Backend& backend,
                                       int k = 9, double temperature = 1.0);

Belief probe_belief(const Problem& problem, const Solution& user_solution, Backend& backend);

}  // namespace dialectic
