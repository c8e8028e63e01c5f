#include "dialectic/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dialectic {

std::string percent_1dp(const Rational& r) {
  double pct = r.value() * 100.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", pct);
  return buf;
}

AnswerSpace AnswerSpace::categorical(std::vector<std::string> ls) {
  if (ls.size() < 2) throw std::invalid_argument("categorical space needs >= 2 labels");
  for (size_t i = 0; i < ls.size(); ++i)
    for (size_t j = i + 1; j < ls.size(); ++j)
      if (ls[i] == ls[j]) throw std::invalid_argument("categorical labels must be distinct");
  return {AnswerKind::categorical, std::move(ls)};
}

const char* to_string(ReasoningType t) {
  switch (t) {
    case ReasoningType::math: return "math";
    case ReasoningType::first_order_logic: return "first_order_logic";
    case ReasoningType::commonsense: return "commonsense";
    case ReasoningType::generic: return "generic";
  }
  return "generic";
}

const char* to_string(Correctness c) {
  switch (c) {
    case Correctness::correct: return "correct";
    case Correctness::incorrect: return "incorrect";
    case Correctness::unextractable: return "unextractable";
  }
  return "unextractable";
}

const char* to_string(SolutionOrigin o) {
  switch (o) {
    case SolutionOrigin::model_greedy: return "model_greedy";
    case SolutionOrigin::model_sampled: return "model_sampled";
    case SolutionOrigin::adversary: return "adversary";
  }
  return "model_greedy";
}

const char* to_string(Speaker s) { return s == Speaker::model ? "model" : "user"; }

const char* to_string(Ordering o) { return o == Ordering::model_first ? "model_first" : "user_first"; }

const char* to_string(Agreement a) { return a == Agreement::agreed ? "agreed" : "not_agreed"; }

const char* to_string(Outcome o) { return o == Outcome::success ? "success" : "failure"; }

const char* to_string(Belief b) {
  switch (b) {
    case Belief::believes: return "believes";
    case Belief::disbelieves: return "disbelieves";
    case Belief::unparseable: return "unparseable";
  }
  return "unparseable";
}

const char* to_string(AnswerKind k) {
  switch (k) {
    case AnswerKind::boolean_: return "boolean";
    case AnswerKind::categorical: return "categorical";
    case AnswerKind::numeric: return "numeric";
    case AnswerKind::free_text: return "free_text";
  }
  return "free_text";
}

ReasoningType reasoning_type_from_string(const std::string& s) {
  if (s == "math") return ReasoningType::math;
  if (s == "first_order_logic") return ReasoningType::first_order_logic;
  if (s == "commonsense") return ReasoningType::commonsense;
  if (s == "generic") return ReasoningType::generic;
  throw std::invalid_argument("unknown reasoning_type: " + s);
}

AnswerKind answer_kind_from_string(const std::string& s) {
  if (s == "boolean") return AnswerKind::boolean_;
  if (s == "categorical") return AnswerKind::categorical;
  if (s == "numeric") return AnswerKind::numeric;
  if (s == "free_text") return AnswerKind::free_text;
  throw std::invalid_argument("unknown answer space kind: " + s);
}

Ordering ordering_from_string(const std::string& s) {
  if (s == "model_first") return Ordering::model_first;
  if (s == "user_first") return Ordering::user_first;
  throw std::invalid_argument("unknown ordering: " + s);
}

}  // namespace dialectic
