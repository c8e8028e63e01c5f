#include "dialectic/orchestrator.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dialectic {

namespace {

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// The speaking agent's view: opener, then its prior turns as assistant
// messages and the opponent's as user messages.
ChatRequest build_view(const Problem& problem, const Transcript& transcript, Speaker agent,
                       const DebateConfig& config, const std::string& model_name) {
  ChatRequest request;
  request.model_name = model_name;
  request.temperature = config.temperature;
  request.messages.push_back(
      {Role::user, config.shared_goal_prompt + "\n\nQuestion: " + problem.question});
  for (const auto& turn : transcript.turns) {
    Role role = turn.speaker == agent ? Role::assistant : Role::user;
    request.messages.push_back({role, turn.content});
  }
  return request;
}

Speaker speaker_at(Ordering ordering, int index) {
  bool even = index % 2 == 0;
  if (ordering == Ordering::model_first) return even ? Speaker::model : Speaker::user;
  return even ? Speaker::user : Speaker::model;
}

}  // namespace

Transcript run_debate(const Problem& problem, const Solution& model_initial, const Solution& user_initial,
                      Ordering ordering, Backend& model_backend, Backend& user_backend,
                      const DebateConfig& config) {
  if (config.rounds_after_initial < 1)
    throw std::invalid_argument("rounds_after_initial must be >= 1");
  if (model_initial.correctness != Correctness::correct)
    throw std::invalid_argument("run_debate: model_initial must be correct");
  if (user_initial.correctness != Correctness::incorrect)
    throw std::invalid_argument("run_debate: user_initial must be incorrect");

  Transcript transcript;
  transcript.problem_id = problem.id;
  transcript.ordering = ordering;
  transcript.model_initial = model_initial;
  transcript.user_initial = user_initial;
  transcript.rounds_after_initial = config.rounds_after_initial;
  transcript.model_name = model_backend.model_name();
  transcript.timestamp = utc_timestamp();

  auto initial_text = [&](Speaker s) {
    return s == Speaker::model ? model_initial.raw_text : user_initial.raw_text;
  };
  transcript.turns.push_back({0, speaker_at(ordering, 0), initial_text(speaker_at(ordering, 0))});
  transcript.turns.push_back({1, speaker_at(ordering, 1), initial_text(speaker_at(ordering, 1))});

  int total_turns = 2 * config.rounds_after_initial + 2;
  for (int i = 2; i < total_turns; ++i) {
    Speaker speaker = speaker_at(ordering, i);
    Backend& backend = speaker == Speaker::model ? model_backend : user_backend;
    ChatRequest request = build_view(problem, transcript, speaker, config, backend.model_name());
    try {
      transcript.turns.push_back({i, speaker, backend.complete(request)});
    } catch (const BackendError&) {
      transcript.aborted = true;
      transcript.tags.push_back("aborted");
      return transcript;
    }
  }
  return transcript;
}

std::pair<Transcript, Transcript> run_example_pair(const Problem& problem, const Solution& model_initial,
                                                   const Solution& user_initial, Backend& model_backend,
                                                   Backend& user_backend, const DebateConfig& config) {
  Transcript mf = run_debate(problem, model_initial, user_initial, Ordering::model_first, model_backend,
                             user_backend, config);
  Transcript uf = run_debate(problem, model_initial, user_initial, Ordering::user_first, model_backend,
                             user_backend, config);
  return {std::move(mf), std::move(uf)};
}

Transcript run_interactive_debate(const Problem& problem, const Solution& model_initial,
                                  Backend& model_backend, const DebateConfig& config, std::istream& in,
                                  std::ostream& out) {
  Transcript transcript;
  transcript.problem_id = problem.id;
  transcript.ordering = Ordering::model_first;
  transcript.model_initial = model_initial;
  transcript.rounds_after_initial = config.rounds_after_initial;
  transcript.model_name = model_backend.model_name();
  transcript.timestamp = utc_timestamp();
  transcript.tags.push_back("interactive");

  out << "Question: " << problem.question << "\n\n";
  out << "model> " << model_initial.raw_text << "\n";
  transcript.turns.push_back({0, Speaker::model, model_initial.raw_text});

  int total_turns = 2 * config.rounds_after_initial + 2;
  for (int i = 1; i < total_turns; ++i) {
    if (i % 2 == 1) {
      out << "you> " << std::flush;
      std::string line;
      if (!std::getline(in, line)) {
        transcript.human_terminated = true;
        transcript.aborted = true;
        return transcript;
      }
      transcript.turns.push_back({i, Speaker::user, line});
    } else {
      ChatRequest request =
          build_view(problem, transcript, Speaker::model, config, model_backend.model_name());
      try {
        std::string reply = model_backend.complete(request);
        out << "model> " << reply << "\n";
        transcript.turns.push_back({i, Speaker::model, reply});
      } catch (const BackendError&) {
        transcript.aborted = true;
        transcript.tags.push_back("aborted");
        return transcript;
      }
    }
  }
  return transcript;
}

}  // namespace dialectic
