#include "dialectic/judge.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "dialectic/answers.hpp"

namespace dialectic {

const char* to_string(IndeterminatePolicy p) {
  return p == IndeterminatePolicy::as_correct ? "as_correct" : "as_failure";
}

IndeterminatePolicy indeterminate_policy_from_string(const std::string& s) {
  if (s == "as_correct") return IndeterminatePolicy::as_correct;
  if (s == "as_failure") return IndeterminatePolicy::as_failure;
  throw std::invalid_argument("unknown indeterminate policy: " + s);
}

std::string render_dialogue(const Transcript& transcript) {
  std::string out;
  for (const auto& turn : transcript.turns) {
    out += turn.speaker == Speaker::model ? "A: " : "B: ";
    out += turn.content;
    out += "\n";
  }
  return out;
}

static std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

static std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_indeterminate_text(const std::string& text) {
  std::string t = lower(trim(text));
  if (t == kIndeterminate) return true;
  for (const char* keyword : {"depends", "uncertain", "it varies"})
    if (t.find(keyword) != std::string::npos) return true;
  return false;
}

// Parses the constrained two-line reply; false when either line is missing
// or the agreement value is not a clean yes/no.
static bool parse_summary(const std::string& reply, Agreement& agreement,
                          std::optional<std::string>& answer) {
  std::optional<bool> agreed;
  std::optional<std::string> answer_line;
  std::istringstream in(reply);
  std::string line;
  while (std::getline(in, line)) {
    std::string low = lower(line);
    size_t pos;
    if ((pos = low.find("agreement:")) != std::string::npos) {
      std::string value = lower(trim(line.substr(pos + 10)));
      if (value.rfind("yes", 0) == 0)
        agreed = true;
      else if (value.rfind("no", 0) == 0)
        agreed = false;
    } else if ((pos = low.find("answer:")) != std::string::npos) {
      answer_line = trim(line.substr(pos + 7));
    }
  }
  if (!agreed || !answer_line) return false;
  agreement = *agreed ? Agreement::agreed : Agreement::not_agreed;
  std::string low_answer = lower(*answer_line);
  if (agreement == Agreement::not_agreed || low_answer.empty() || low_answer == "none" ||
      low_answer == "n/a" || low_answer == "-") {
    answer = std::nullopt;
  } else if (is_indeterminate_text(*answer_line)) {
    answer = std::string(kIndeterminate);
  } else {
    answer = *answer_line;
  }
  return true;
}

SummaryResult summarize_transcript(const Transcript& transcript, Backend& backend) {
  if (transcript.aborted) throw std::invalid_argument("cannot judge an aborted transcript");

  static const char* kInstruction =
      "Below is a conversation between A and B who are trying to decide the correct "
      "answer to a question together.\n\nAnswer two questions about it:\n"
      "1. Did A and B reach an agreement?\n"
      "2. If they did, what answer did they agree on?\n"
      "Reply in exactly this format, with no other text:\n"
      "AGREEMENT: yes or no\n"
      "ANSWER: the agreed answer, or the single word \"indeterminate\" if the agreed "
      "conclusion is conditional or uncertain, or \"none\" if there was no agreement.";

  ChatRequest request;
  request.model_name = backend.model_name();
  request.temperature = 0.0;
  request.messages.push_back({Role::user, std::string(kInstruction) + "\n\nConversation:\n" +
                                              render_dialogue(transcript)});

  SummaryResult result;
  for (int ask = 0; ask < 3; ++ask) {
    ++result.asks;
    std::string reply = backend.complete(request);
    if (parse_summary(reply, result.agreement, result.agreed_answer_text)) return result;
    request.messages.push_back({Role::assistant, reply});
    request.messages.push_back(
        {Role::user,
         "That was not in the required format. Reply with exactly two lines:\n"
         "AGREEMENT: yes or no\nANSWER: ..."});
  }
  result.judge_failed = true;
  return result;
}

std::optional<Verdict> classify_verdict(Agreement agreement,
                                        const std::optional<std::string>& agreed_answer_text,
                                        const Problem& problem, IndeterminatePolicy policy) {
  Verdict verdict;
  verdict.agreement = agreement;
  if (agreement == Agreement::not_agreed) {
    verdict.outcome = Outcome::success;
    return verdict;
  }
  if (!agreed_answer_text) return std::nullopt;  // judge_failed
  if (is_indeterminate_text(*agreed_answer_text)) {
    verdict.agreed_answer = std::string(kIndeterminate);
    verdict.outcome =
        policy == IndeterminatePolicy::as_correct ? Outcome::success : Outcome::failure;
    return verdict;
  }
  auto canonical = canonicalize_answer(*agreed_answer_text, problem.answer_space);
  if (canonical) {
    verdict.agreed_answer = canonical;
    verdict.outcome = answers_equal(*canonical, problem.gold_answer, problem.answer_space)
                          ? Outcome::success
                          : Outcome::failure;
  } else {
    // Agreed on something unrecognizable within the answer space: not gold.
    verdict.agreed_answer = *agreed_answer_text;
    verdict.outcome = Outcome::failure;
  }
  return verdict;
}

}  // namespace dialectic
