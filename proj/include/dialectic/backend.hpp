#pragma once

#include <atomic>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dialectic/types.hpp"

namespace dialectic {

enum class Role { system, user, assistant };

const char* to_string(Role r);
Role role_from_string(const std::string& s);

struct ChatMessage {
  Role role = Role::user;
  std::string content;  // non-empty
};

struct ChatRequest {
  std::string model_name;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;  // 0 denotes greedy decoding
  std::optional<int> max_tokens;
  std::optional<long long> seed_hint;
};

struct BackendSpec {
  enum class Kind { http, scripted };
  Kind kind = Kind::scripted;
  std::string model_name;
  std::string base_url;         // http only
  std::string api_key_env_var;  // http only
  std::string script_path;      // scripted only
  int max_retries = 3;
  int requests_per_minute_cap = 60;
  int timeout_seconds = 120;
  int backoff_base_ms = 1000;
};

class BackendError : public std::runtime_error {
 public:
  enum class Kind { rejected, unavailable, protocol, script_underrun };
  BackendError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Called with (agent, request, response) after every successful completion.
// Used by tests and the leak scan; never on the hot path otherwise.
using RequestRecorder = std::function<void(const std::string&, const ChatRequest&, const std::string&)>;

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
  virtual const std::string& model_name() const { return model_name_; }

  long long call_count() const { return calls_.load(); }
  long long retry_count() const { return retries_.load(); }
  void set_recorder(RequestRecorder recorder) { recorder_ = std::move(recorder); }

 protected:
  std::string model_name_;
  std::atomic<long long> calls_{0};
  std::atomic<long long> retries_{0};
  RequestRecorder recorder_;
};

// ---------------------------------------------------------------------------
// Scripted backend: deterministic replies from a JSONL script file.
// Line schema: {"mode":"sequence"|"fingerprint","agent":"model"|"user"|
//               "judge"|"adversary","key":...,"response":"..."}
// Fingerprint entries are reusable and matched as substrings of the last
// user-visible message (longest key wins); sequence entries are consumed in
// file order per agent.
// ---------------------------------------------------------------------------
class Script {
 public:
  static std::shared_ptr<Script> load(const std::string& path);
  static std::shared_ptr<Script> from_jsonl(const std::string& jsonl, const std::string& origin);

  std::string next(const std::string& agent, const ChatRequest& request);

 private:
  struct Entry {
    bool fingerprint = false;
    std::string key;
    std::string response;
    bool consumed = false;
  };
  std::mutex mu_;
  std::map<std::string, std::vector<Entry>> by_agent_;
  std::map<std::string, long long> call_index_;
};

class ScriptedBackend : public Backend {
 public:
  ScriptedBackend(std::shared_ptr<Script> script, std::string agent, std::string model_name = "scripted");
  std::string complete(const ChatRequest& request) override;
  const std::string& agent() const { return agent_; }

 private:
  std::shared_ptr<Script> script_;
  std::string agent_;
};

// ---------------------------------------------------------------------------
// Sliding-window rate limiter: never more than `cap` acquisitions in any 60 s
// window. Clock and sleep are injectable for tests.
// ---------------------------------------------------------------------------
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;
  using NowFn = std::function<Clock::time_point()>;
  using SleepUntilFn = std::function<void(Clock::time_point)>;

  explicit RateLimiter(int cap_per_minute);
  RateLimiter(int cap_per_minute, NowFn now, SleepUntilFn sleep_until);

  void acquire();

 private:
  int cap_;
  NowFn now_;
  SleepUntilFn sleep_until_;
  std::mutex mu_;
  std::deque<Clock::time_point> window_;
};

// OpenAI-compatible chat-completions client with retry and rate limiting.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(const BackendSpec& spec, std::string agent = "model");
  std::string complete(const ChatRequest& request) override;

 private:
  BackendSpec spec_;
  std::string agent_;
  std::string host_;    // scheme://host[:port]
  std::string prefix_;  // path prefix from base_url
  RateLimiter limiter_;
};

std::string serialize_chat_request(const ChatRequest& request);
ChatRequest parse_chat_request(const std::string& body);

// Builds a backend bound to a logical agent ("model"/"user"/"judge"/"adversary").
std::unique_ptr<Backend> make_backend(const BackendSpec& spec, const std::string& agent,
                                      std::shared_ptr<Script> shared_script = nullptr);

}  // namespace dialectic
