#include "dialectic/elicitation.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dialectic/answers.hpp"
#include "dialectic/metrics.hpp"

namespace dialectic {

using json = nlohmann::json;

PromptPack load_prompt_pack(const std::string& instruction_path,
                            const std::optional<std::string>& demonstrations_path,
                            const std::string& label) {
  PromptPack pack;
  pack.demonstration_set_label = label;
  std::ifstream in(instruction_path);
  if (!in) throw std::runtime_error("cannot open instruction file: " + instruction_path);
  std::stringstream ss;
  ss << in.rdbuf();
  pack.cot_instruction = ss.str();
  while (!pack.cot_instruction.empty() &&
         (pack.cot_instruction.back() == '\n' || pack.cot_instruction.back() == '\r'))
    pack.cot_instruction.pop_back();

  if (demonstrations_path) {
    std::ifstream demos(*demonstrations_path);
    if (!demos) throw std::runtime_error("cannot open demonstrations file: " + *demonstrations_path);
    std::string line;
    int lineno = 0;
    while (std::getline(demos, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("question") || !j.contains("solution")) {
        throw std::runtime_error(*demonstrations_path + ":" + std::to_string(lineno) +
                                 ": demonstration needs question and solution fields");
      }
      pack.demonstrations.emplace_back(j["question"].get<std::string>(), j["solution"].get<std::string>());
    }
    if (pack.demonstrations.empty())
      throw std::runtime_error(*demonstrations_path + ": demonstration file is empty");
  }
  return pack;
}

std::vector<ChatMessage> build_cot_prompt(const Problem& problem, const PromptPack& pack) {
  std::vector<ChatMessage> messages;
  bool first = true;
  for (const auto& [q, s] : pack.demonstrations) {
    std::string content = first ? pack.cot_instruction + "\n\nQuestion: " + q : "Question: " + q;
    messages.push_back({Role::user, content});
    messages.push_back({Role::assistant, s});
    first = false;
  }
  std::string final_content =
      first ? pack.cot_instruction + "\n\nQuestion: " + problem.question : "Question: " + problem.question;
  messages.push_back({Role::user, final_content});
  return messages;
}

static Solution grade_reply(const std::string& reply, const Problem& problem, SolutionOrigin origin) {
  Solution solution;
  solution.raw_text = reply;
  solution.origin = origin;
  solution.extracted_answer = canonicalize_answer(reply, problem.answer_space);
  if (!solution.extracted_answer) {
    solution.correctness = Correctness::unextractable;
  } else if (answers_equal(*solution.extracted_answer, problem.gold_answer, problem.answer_space)) {
    solution.correctness = Correctness::correct;
  } else {
    solution.correctness = Correctness::incorrect;
  }
  return solution;
}

Solution elicit_solution(const Problem& problem, const PromptPack& pack, Backend& backend,
                         double temperature) {
  ChatRequest request;
  request.model_name = backend.model_name();
  request.messages = build_cot_prompt(problem, pack);
  request.temperature = temperature;
  std::string reply = backend.complete(request);
  return grade_reply(reply, problem,
                     temperature == 0.0 ? SolutionOrigin::model_greedy : SolutionOrigin::model_sampled);
}

std::vector<std::pair<Problem, Solution>> filter_eval_set(const std::vector<Problem>& problems,
                                                          const std::vector<Solution>& solutions,
                                                          FilterCounts* counts) {
  if (problems.size() != solutions.size())
    throw std::invalid_argument("filter_eval_set: one solution per problem required");
  std::vector<std::pair<Problem, Solution>> kept;
  for (size_t i = 0; i < problems.size(); ++i)
    if (solutions[i].correctness == Correctness::correct) kept.emplace_back(problems[i], solutions[i]);
  if (counts) {
    counts->kept = static_cast<int>(kept.size());
    counts->dropped = static_cast<int>(problems.size() - kept.size());
  }
  return kept;
}

ConfidenceEstimate estimate_confidence(const Problem& problem, const PromptPack& pack, Backend& backend,
                                       int k, double temperature) {
  if (k < 1) throw std::invalid_argument("estimate_confidence: k must be >= 1");
  std::vector<Solution> samples;
  samples.reserve(k);
  for (int i = 0; i < k; ++i) samples.push_back(elicit_solution(problem, pack, backend, temperature));
  return confidence_ratio(samples, problem.gold_answer, problem.answer_space);
}

Belief probe_belief(const Problem& problem, const Solution& user_solution, Backend& backend) {
  ChatRequest request;
  request.model_name = backend.model_name();
  request.messages.push_back(
      {Role::user,
       "Here is a question and a proposed solution. Is the solution correct? "
       "Answer yes or no, then explain.\n\nQuestion: " +
           problem.question + "\n\nProposed solution: " + user_solution.raw_text});
  std::string reply = backend.complete(request);
  // The forced yes/no head comes first; fall back to the usual keyword rule
  // for replies that bury the verdict.
  std::istringstream words(reply);
  std::string word;
  if (words >> word) {
    auto head = canonicalize_answer(word, AnswerSpace::boolean());
    if (head) return *head == "yes" ? Belief::believes : Belief::disbelieves;
  }
  auto verdict = canonicalize_answer(reply, AnswerSpace::boolean());
  if (!verdict) return Belief::unparseable;
  return *verdict == "yes" ? Belief::believes : Belief::disbelieves;
}

}  // namespace dialectic
