#include "dialectic/json_codec.hpp"

namespace dialectic {

json to_json(const AnswerSpace& space) {
  json j;
  j["kind"] = to_string(space.kind);
  if (space.kind == AnswerKind::categorical) j["labels"] = space.labels;
  return j;
}

AnswerSpace answer_space_from_json(const json& j) {
  AnswerKind kind = answer_kind_from_string(j.at("kind").get<std::string>());
  if (kind == AnswerKind::categorical)
    return AnswerSpace::categorical(j.at("labels").get<std::vector<std::string>>());
  return {kind, {}};
}

json to_json(const Problem& problem) {
  return {{"id", problem.id},
          {"benchmark", problem.benchmark},
          {"reasoning_type", to_string(problem.reasoning_type)},
          {"question", problem.question},
          {"gold_answer", problem.gold_answer},
          {"answer_space", to_json(problem.answer_space)},
          {"allow_indeterminate", problem.allow_indeterminate}};
}

Problem problem_from_json(const json& j) {
  Problem problem;
  problem.id = j.at("id").get<std::string>();
  problem.benchmark = j.at("benchmark").get<std::string>();
  problem.reasoning_type = reasoning_type_from_string(j.at("reasoning_type").get<std::string>());
  problem.question = j.at("question").get<std::string>();
  problem.gold_answer = j.at("gold_answer").get<std::string>();
  problem.answer_space = answer_space_from_json(j.at("answer_space"));
  problem.allow_indeterminate =
      j.value("allow_indeterminate", problem.reasoning_type == ReasoningType::commonsense);
  return problem;
}

json to_json(const Solution& solution) {
  json j;
  j["raw_text"] = solution.raw_text;
  if (solution.extracted_answer)
    j["extracted_answer"] = *solution.extracted_answer;
  else
    j["extracted_answer"] = nullptr;
  j["correctness"] = to_string(solution.correctness);
  j["origin"] = to_string(solution.origin);
  return j;
}

Solution solution_from_json(const json& j) {
  Solution s;
  s.raw_text = j.at("raw_text").get<std::string>();
  if (!j.at("extracted_answer").is_null()) s.extracted_answer = j["extracted_answer"].get<std::string>();
  std::string c = j.at("correctness").get<std::string>();
  s.correctness = c == "correct"     ? Correctness::correct
                  : c == "incorrect" ? Correctness::incorrect
                                     : Correctness::unextractable;
  std::string o = j.at("origin").get<std::string>();
  s.origin = o == "adversary"       ? SolutionOrigin::adversary
             : o == "model_sampled" ? SolutionOrigin::model_sampled
                                    : SolutionOrigin::model_greedy;
  return s;
}

json to_json(const Transcript& t) {
  json turns = json::array();
  for (const auto& turn : t.turns)
    turns.push_back({{"index", turn.index}, {"speaker", to_string(turn.speaker)}, {"content", turn.content}});
  return {{"problem_id", t.problem_id},
          {"ordering", to_string(t.ordering)},
          {"model_initial", to_json(t.model_initial)},
          {"user_initial", to_json(t.user_initial)},
          {"turns", turns},
          {"rounds_after_initial", t.rounds_after_initial},
          {"tags", t.tags},
          {"aborted", t.aborted},
          {"human_terminated", t.human_terminated},
          {"model_name", t.model_name},
          {"timestamp", t.timestamp}};
}

Transcript transcript_from_json(const json& j) {
  Transcript t;
  t.problem_id = j.at("problem_id").get<std::string>();
  t.ordering = ordering_from_string(j.at("ordering").get<std::string>());
  t.model_initial = solution_from_json(j.at("model_initial"));
  t.user_initial = solution_from_json(j.at("user_initial"));
  for (const auto& turn : j.at("turns"))
    t.turns.push_back({turn.at("index").get<int>(),
                       turn.at("speaker").get<std::string>() == "model" ? Speaker::model : Speaker::user,
                       turn.at("content").get<std::string>()});
  t.rounds_after_initial = j.at("rounds_after_initial").get<int>();
  t.tags = j.at("tags").get<std::vector<std::string>>();
  t.aborted = j.at("aborted").get<bool>();
  t.human_terminated = j.at("human_terminated").get<bool>();
  t.model_name = j.at("model_name").get<std::string>();
  t.timestamp = j.at("timestamp").get<std::string>();
  return t;
}

json to_json(const Rational& r) {
  return {{"num", r.num}, {"den", r.den}, {"value", r.value()}};
}

Rational rational_from_json(const json& j) {
  return {j.at("num").get<long long>(), j.at("den").get<long long>()};
}

json to_json(const VerdictRecord& record) {
  json j;
  j["problem_id"] = record.problem_id;
  j["ordering"] = to_string(record.ordering);
  j["status"] = record.status;
  if (record.status == "ok") {
    j["agreement"] = to_string(record.agreement);
    if (record.agreed_answer)
      j["agreed_answer"] = *record.agreed_answer;
    else
      j["agreed_answer"] = nullptr;
    j["outcome"] = to_string(record.outcome);
  }
  return j;
}

VerdictRecord verdict_record_from_json(const json& j) {
  VerdictRecord r;
  r.problem_id = j.at("problem_id").get<std::string>();
  r.ordering = ordering_from_string(j.at("ordering").get<std::string>());
  r.status = j.at("status").get<std::string>();
  if (r.status == "ok") {
    r.agreement = j.at("agreement").get<std::string>() == "agreed" ? Agreement::agreed : Agreement::not_agreed;
    if (!j.at("agreed_answer").is_null()) r.agreed_answer = j["agreed_answer"].get<std::string>();
    r.outcome = j.at("outcome").get<std::string>() == "failure" ? Outcome::failure : Outcome::success;
  }
  return r;
}

}  // namespace dialectic
