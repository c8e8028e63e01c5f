#pragma once

#include <json.hpp>

#include "dialectic/judge.hpp"
#include "dialectic/types.hpp"

namespace dialectic {

using json = nlohmann::json;

json to_json(const AnswerSpace& space);
AnswerSpace answer_space_from_json(const json& j);

json to_json(const Problem& problem);
Problem problem_from_json(const json& j);

json to_json(const Solution& solution);
Solution solution_from_json(const json& j);

json to_json(const Transcript& transcript);
Transcript transcript_from_json(const json& j);

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

// One line of verdicts.jsonl: judged outcome (or failure marker) per
// (problem, ordering).
struct VerdictRecord {
  std::string problem_id;
  Ordering ordering = Ordering::model_first;
  std::string status = "ok";  // ok | judge_failed | aborted
  Agreement agreement = Agreement::not_agreed;
  std::optional<std::string> agreed_answer;
  Outcome outcome = Outcome::success;
};

json to_json(const VerdictRecord& record);
VerdictRecord verdict_record_from_json(const json& j);

}  // namespace dialectic
