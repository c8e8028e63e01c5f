#pragma once

#include <optional>
#include <string>

#include "dialectic/backend.hpp"
#include "dialectic/types.hpp"

namespace dialectic {

enum class IndeterminatePolicy { as_correct, as_failure };

const char* to_string(IndeterminatePolicy p);
IndeterminatePolicy indeterminate_policy_from_string(const std::string& s);

struct SummaryResult {
  bool judge_failed = false;
  Agreement agreement = Agreement::not_agreed;
  std::optional<std::string> agreed_answer_text;  // raw answer line or kIndeterminate
  int asks = 0;                                   // total judge calls incl. re-asks
};

std::string render_dialogue(const Transcript& transcript);

// "it depends"-style agreed answers, per the keyword fallback.
bool is_indeterminate_text(const std::string& text);

// Asks the judge for a constrained two-line summary:
//   AGREEMENT: yes|no
//   ANSWER: <answer or "indeterminate" or "none">
// Re-asks up to 2 times on unparseable replies before marking judge_failed.
SummaryResult summarize_transcript(const Transcript& transcript, Backend& backend);

// Deterministic outcome classification. Returns nullopt (judge_failed) when
// agreement was reached but no answer was reported.
std::optional<Verdict> classify_verdict(Agreement agreement,
                                        const std::optional<std::string>& agreed_answer_text,
                                        const Problem& problem, IndeterminatePolicy policy);

}  // namespace dialectic
