#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "dialectic/elicitation.hpp"

using namespace dialectic;

namespace {

Problem numeric_problem(const std::string& gold) {
  Problem p;
  p.id = "p1";
  p.benchmark = "gsm8k";
  p.reasoning_type = ReasoningType::math;
  p.question = "How many brownies did Greta have left over?";
  p.gold_answer = gold;
  p.answer_space = AnswerSpace::numeric();
  return p;
}

std::shared_ptr<Script> one_liner(const std::string& agent, const std::string& response) {
  nlohmann::json j = {{"mode", "sequence"}, {"agent", agent}, {"key", 0}, {"response", response}};
  return Script::from_jsonl(j.dump(), "inline");
}

}  // namespace

TEST_CASE("zero-shot prompt is one user message: instruction then question") {
  PromptPack pack;
  pack.cot_instruction = "Let's think step by step.";
  auto messages = build_cot_prompt(numeric_problem("48"), pack);
  REQUIRE(messages.size() == 1);
  CHECK(messages[0].role == Role::user);
  CHECK(messages[0].content.find("think step by step") != std::string::npos);
  CHECK(messages[0].content.find("Greta") > messages[0].content.find("think step by step"));
}

TEST_CASE("few-shot prompt alternates u,a,u,a,u and only demos change across packs") {
  PromptPack valid;
  valid.demonstrations = {{"q1", "valid solution 1"}, {"q2", "valid solution 2"}};
  valid.demonstration_set_label = "valid-cot";
  PromptPack invalid = valid;
  invalid.demonstrations = {{"q1", "invalid solution 1"}, {"q2", "invalid solution 2"}};
  invalid.demonstration_set_label = "invalid-cot";

  auto problem = numeric_problem("48");
  auto a = build_cot_prompt(problem, valid);
  auto b = build_cot_prompt(problem, invalid);
  REQUIRE(a.size() == 5);
  CHECK(a[0].role == Role::user);
  CHECK(a[1].role == Role::assistant);
  CHECK(a[2].role == Role::user);
  CHECK(a[3].role == Role::assistant);
  CHECK(a[4].role == Role::user);
  // the final question message never changes with the demo set
  CHECK(a[4].content == b[4].content);
  CHECK(a[1].content != b[1].content);
}

TEST_CASE("elicit_solution grades the scripted reply against gold") {
  PromptPack pack;
  auto problem = numeric_problem("48");

  ScriptedBackend correct(one_liner("model", "Adding them up... the answer is 48"), "model");
  Solution s = elicit_solution(problem, pack, correct, 0.0);
  CHECK(s.correctness == Correctness::correct);
  CHECK(s.origin == SolutionOrigin::model_greedy);
  CHECK(s.extracted_answer == "48");

  Problem gold25 = numeric_problem("25");
  ScriptedBackend wrong(one_liner("model", "the answer is 15"), "model");
  Solution w = elicit_solution(gold25, pack, wrong, 0.0);
  CHECK(w.correctness == Correctness::incorrect);

  ScriptedBackend vague(one_liner("model", "I am not sure about this one."), "model");
  Solution u = elicit_solution(problem, pack, vague, 1.0);
  CHECK(u.correctness == Correctness::unextractable);
  CHECK(u.origin == SolutionOrigin::model_sampled);
}

TEST_CASE("filter_eval_set keeps exactly the correct pairs, in order") {
  std::vector<Problem> problems;
  std::vector<Solution> solutions;
  for (int i = 0; i < 6; ++i) {
    Problem p = numeric_problem("48");
    p.id = "p" + std::to_string(i);
    problems.push_back(p);
    Solution s;
    s.correctness = i % 2 ? Correctness::correct : Correctness::incorrect;
    solutions.push_back(s);
  }
  FilterCounts counts;
  auto kept = filter_eval_set(problems, solutions, &counts);
  REQUIRE(kept.size() == 3);
  CHECK(counts.kept == 3);
  CHECK(counts.dropped == 3);
  CHECK(kept[0].first.id == "p1");
  CHECK(kept[1].first.id == "p3");
  CHECK(kept[2].first.id == "p5");

  std::vector<Solution> none(6, Solution{});
  CHECK(filter_eval_set(problems, none).empty());

  std::vector<Solution> all(6, [] {
    Solution s;
    s.correctness = Correctness::correct;
    return s;
  }());
  CHECK(filter_eval_set(problems, all).size() == 6);
}

TEST_CASE("estimate_confidence issues exactly k calls and counts correct samples") {
  auto problem = numeric_problem("48");
  PromptPack pack;
  for (int m : {0, 7, 9}) {
    std::string jsonl;
    for (int i = 0; i < 9; ++i) {
      nlohmann::json j = {{"mode", "sequence"},
                          {"agent", "model"},
                          {"key", i},
                          {"response", i < m ? "the answer is 48" : "the answer is 7"}};
      jsonl += j.dump() + "\n";
    }
    ScriptedBackend backend(Script::from_jsonl(jsonl, "inline"), "model");
    auto estimate = estimate_confidence(problem, pack, backend, 9, 1.0);
    CHECK(estimate.ratio == Rational{m, 9});
    CHECK(backend.call_count() == 9);
  }
}

TEST_CASE("probe_belief reads the forced yes/no head") {
  auto problem = numeric_problem("48");
  Solution wrong;
  wrong.raw_text = "the answer is 60";
  wrong.correctness = Correctness::incorrect;

  ScriptedBackend no(one_liner("model", "No, this solution is wrong because the total is off."), "model");
  CHECK(probe_belief(problem, wrong, no) == Belief::disbelieves);

  ScriptedBackend yes(one_liner("model", "Yes, the solution is correct."), "model");
  CHECK(probe_belief(problem, wrong, yes) == Belief::believes);

  ScriptedBackend vague(one_liner("model", "It could go either way."), "model");
  CHECK(probe_belief(problem, wrong, vague) == Belief::unparseable);
}

TEST_CASE("load_prompt_pack reads instruction and JSONL demonstrations") {
  std::string dir = "pp_test_tmp";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir + "/instr.txt") << "Think step by step.\n";
    std::ofstream(dir + "/demos.jsonl") << R"({"question":"q1","solution":"s1"})" << "\n"
                                        << R"({"question":"q2","solution":"s2"})" << "\n";
  }
  auto pack = load_prompt_pack(dir + "/instr.txt", dir + "/demos.jsonl", "valid-cot");
  CHECK(pack.cot_instruction == "Think step by step.");
  REQUIRE(pack.demonstrations.size() == 2);
  CHECK(pack.demonstrations[1].first == "q2");

  std::ofstream(dir + "/empty.jsonl");
  CHECK_THROWS(load_prompt_pack(dir + "/instr.txt", dir + "/empty.jsonl", "x"));
  std::filesystem::remove_all(dir);
}
