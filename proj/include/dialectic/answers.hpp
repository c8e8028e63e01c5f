#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dialectic/types.hpp"

namespace dialectic {

// Extracts and canonicalizes the final answer from a response (or fragment).
// Scans for the last "the answer is" marker; falls back to the last number /
// label token / yes-no keyword in the final sentence. Absence is the signal,
// never an error. Idempotent on canonical forms.
std::optional<std::string> canonicalize_answer(std::string_view raw, const AnswerSpace& space);

// Equality on canonical forms. Numeric compares with absolute tolerance 1e-6.
bool answers_equal(std::string_view a, std::string_view b, const AnswerSpace& space);

inline constexpr double kNumericTolerance = 1e-6;

}  // namespace dialectic
