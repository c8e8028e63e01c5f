#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dialectic/rational.hpp"

namespace dialectic {

enum class AnswerKind { boolean_, categorical, numeric, free_text };

struct AnswerSpace {
  AnswerKind kind = AnswerKind::free_text;
  std::vector<std::string> labels;  // categorical only; pairwise distinct

  static AnswerSpace boolean() { return {AnswerKind::boolean_, {}}; }
  static AnswerSpace numeric() { return {AnswerKind::numeric, {}}; }
  static AnswerSpace free_text() { return {AnswerKind::free_text, {}}; }
  static AnswerSpace categorical(std::vector<std::string> ls);
};

enum class ReasoningType { math, first_order_logic, commonsense, generic };

struct Problem {
  std::string id;
  std::string benchmark;
  ReasoningType reasoning_type = ReasoningType::generic;
  std::string question;
  std::string gold_answer;  // canonical within answer_space
  AnswerSpace answer_space;
  bool allow_indeterminate = false;
};

enum class Correctness { correct, incorrect, unextractable };
enum class SolutionOrigin { model_greedy, model_sampled, adversary };

struct Solution {
  std::string raw_text;
  std::optional<std::string> extracted_answer;
  Correctness correctness = Correctness::unextractable;
  SolutionOrigin origin = SolutionOrigin::model_greedy;
};

enum class Speaker { model, user };
enum class Ordering { model_first, user_first };

struct Turn {
  int index = 0;
  Speaker speaker = Speaker::model;
  std::string content;
};

struct Transcript {
  std::string problem_id;
  Ordering ordering = Ordering::model_first;
  Solution model_initial;
  Solution user_initial;
  std::vector<Turn> turns;
  int rounds_after_initial = 2;
  std::vector<std::string> tags;
  bool aborted = false;
  bool human_terminated = false;
  std::string model_name;
  std::string timestamp;
};

enum class Agreement { agreed, not_agreed };
enum class Outcome { success, failure };

// Sentinel stored in Verdict::agreed_answer for "it depends" conclusions.
inline constexpr const char* kIndeterminate = "indeterminate";

struct Verdict {
  Agreement agreement = Agreement::not_agreed;
  std::optional<std::string> agreed_answer;  // canonical value or kIndeterminate
  Outcome outcome = Outcome::success;
};

struct ConfidenceEstimate {
  int k = 9;
  int n_correct = 0;
  Rational ratio{0, 1};
};

enum class Belief { believes, disbelieves, unparseable };

struct ExampleResult {
  std::string problem_id;
  Verdict verdict_model_first;
  Verdict verdict_user_first;
  std::optional<ConfidenceEstimate> confidence;
  std::optional<Belief> belief_probe;
};

struct MetricsReport {
  int n = 0;
  Rational fr_model_first{0, 1};
  Rational fr_user_first{0, 1};
  Rational fr_average{0, 1};
  Rational fr_both{0, 1};
  Rational fr_either{0, 1};
  std::optional<Rational> mean_confidence;
  std::optional<double> covariance;
  std::optional<double> correlation;
  std::optional<Rational> fr_at_full_confidence;
};

const char* to_string(ReasoningType t);
const char* to_string(Correctness c);
const char* to_string(SolutionOrigin o);
const char* to_string(Speaker s);
const char* to_string(Ordering o);
const char* to_string(Agreement a);
const char* to_string(Outcome o);
const char* to_string(Belief b);
const char* to_string(AnswerKind k);

ReasoningType reasoning_type_from_string(const std::string& s);
AnswerKind answer_kind_from_string(const std::string& s);
Ordering ordering_from_string(const std::string& s);

}  // namespace dialectic
