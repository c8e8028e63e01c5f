#include "dialectic/backend.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#define CPPHTTPLIB_NO_EXCEPTIONS 1
#include <httplib.h>
#include <json.hpp>

namespace dialectic {

using json = nlohmann::json;

const char* to_string(Role r) {
  switch (r) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "user";
}

Role role_from_string(const std::string& s) {
  if (s == "system") return Role::system;
  if (s == "user") return Role::user;
  if (s == "assistant") return Role::assistant;
  throw std::invalid_argument("unknown chat role: " + s);
}

std::string serialize_chat_request(const ChatRequest& request) {
  json body;
  body["model"] = request.model_name;
  body["messages"] = json::array();
  for (const auto& m : request.messages)
    body["messages"].push_back({{"role", to_string(m.role)}, {"content", m.content}});
  body["temperature"] = request.temperature;
  if (request.max_tokens) body["max_tokens"] = *request.max_tokens;
  if (request.seed_hint) body["seed"] = *request.seed_hint;
  return body.dump();
}

ChatRequest parse_chat_request(const std::string& body) {
  json j = json::parse(body);
  ChatRequest request;
  request.model_name = j.at("model").get<std::string>();
  for (const auto& m : j.at("messages"))
    request.messages.push_back({role_from_string(m.at("role").get<std::string>()),
                                m.at("content").get<std::string>()});
  request.temperature = j.value("temperature", 0.0);
  if (j.contains("max_tokens")) request.max_tokens = j["max_tokens"].get<int>();
  if (j.contains("seed")) request.seed_hint = j["seed"].get<long long>();
  return request;
}

// ---------------------------------------------------------------------------
// Script / ScriptedBackend
// ---------------------------------------------------------------------------

static std::string last_user_visible(const ChatRequest& request) {
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it)
    if (it->role != Role::assistant) return it->content;
  return {};
}

std::shared_ptr<Script> Script::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open script file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_jsonl(ss.str(), path);
}

std::shared_ptr<Script> Script::from_jsonl(const std::string& jsonl, const std::string& origin) {
  auto script = std::make_shared<Script>();
  std::istringstream in(jsonl);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": bad script line: " + e.what());
    }
    Entry entry;
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "fingerprint") {
      entry.fingerprint = true;
      entry.key = j.at("key").get<std::string>();
    } else if (mode != "sequence") {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": unknown script mode " + mode);
    }
    entry.response = j.at("response").get<std::string>();
    script->by_agent_[j.at("agent").get<std::string>()].push_back(std::move(entry));
  }
  return script;
}

std::string Script::next(const std::string& agent, const ChatRequest& request) {
  std::lock_guard<std::mutex> lock(mu_);
  long long index = call_index_[agent]++;
  auto it = by_agent_.find(agent);
  if (it != by_agent_.end()) {
    std::string needle = last_user_visible(request);
    const Entry* best = nullptr;
    for (const auto& e : it->second) {
      if (!e.fingerprint || needle.find(e.key) == std::string::npos) continue;
      if (!best || e.key.size() > best->key.size()) best = &e;
    }
    if (best) return best->response;
    for (auto& e : it->second) {
      if (e.fingerprint || e.consumed) continue;
      e.consumed = true;
      return e.response;
    }
  }
  throw BackendError(BackendError::Kind::script_underrun,
                     "script underrun: agent \"" + agent + "\" at call " + std::to_string(index));
}

ScriptedBackend::ScriptedBackend(std::shared_ptr<Script> script, std::string agent, std::string model_name)
    : script_(std::move(script)), agent_(std::move(agent)) {
  model_name_ = std::move(model_name);
}

std::string ScriptedBackend::complete(const ChatRequest& request) {
  ++calls_;
  std::string response = script_->next(agent_, request);
  if (recorder_) recorder_(agent_, request, response);
  return response;
}

// ---------------------------------------------------------------------------
// RateLimiter
// ---------------------------------------------------------------------------

RateLimiter::RateLimiter(int cap_per_minute)
    : RateLimiter(cap_per_minute, [] { return Clock::now(); },
                  [](Clock::time_point t) { std::this_thread::sleep_until(t); }) {}

RateLimiter::RateLimiter(int cap_per_minute, NowFn now, SleepUntilFn sleep_until)
    : cap_(cap_per_minute), now_(std::move(now)), sleep_until_(std::move(sleep_until)) {}

void RateLimiter::acquire() {
  using namespace std::chrono_literals;
  std::unique_lock<std::mutex> lock(mu_);
  for (;;) {
    auto now = now_();
    while (!window_.empty() && now - window_.front() >= 60s) window_.pop_front();
    if (static_cast<int>(window_.size()) < cap_) {
      window_.push_back(now);
      return;
    }
    auto wake = window_.front() + 60s;
    lock.unlock();
    sleep_until_(wake);
    lock.lock();
  }
}

// ---------------------------------------------------------------------------
// HttpBackend
// ---------------------------------------------------------------------------

HttpBackend::HttpBackend(const BackendSpec& spec, std::string agent)
    : spec_(spec), agent_(std::move(agent)), limiter_(spec.requests_per_minute_cap) {
  model_name_ = spec.model_name;
  if (spec_.base_url.empty()) throw std::invalid_argument("http backend requires base_url");
  // split scheme://host[:port] from any path prefix
  size_t scheme = spec_.base_url.find("://");
  size_t path = spec_.base_url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path == std::string::npos) {
    host_ = spec_.base_url;
  } else {
    host_ = spec_.base_url.substr(0, path);
    prefix_ = spec_.base_url.substr(path);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }
}

std::string HttpBackend::complete(const ChatRequest& request) {
  ++calls_;
  std::string body = serialize_chat_request(request);

  httplib::Headers headers;
  if (!spec_.api_key_env_var.empty()) {
    const char* key = std::getenv(spec_.api_key_env_var.c_str());
    if (!key) {
      throw BackendError(BackendError::Kind::rejected,
                         "backend rejected request: API key env var " + spec_.api_key_env_var + " unset");
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  std::mt19937_64 jitter_rng(std::random_device{}());
  int attempts = 0;
  std::string last_error;
  for (;;) {
    limiter_.acquire();
    httplib::Client client(host_);
    client.set_connection_timeout(spec_.timeout_seconds, 0);
    client.set_read_timeout(spec_.timeout_seconds, 0);
    client.set_write_timeout(spec_.timeout_seconds, 0);

    auto result = client.Post(prefix_ + "/chat/completions", headers, body, "application/json");
    bool transient;
    if (!result) {
      transient = true;
      last_error = "transport error " + httplib::to_string(result.error());
    } else if (result->status == 200) {
      json j = json::parse(result->body, nullptr, /*allow_exceptions=*/false);
      if (j.is_discarded() || !j.contains("choices") || j["choices"].empty() ||
          !j["choices"][0].contains("message") || !j["choices"][0]["message"].contains("content") ||
          !j["choices"][0]["message"]["content"].is_string()) {
        throw BackendError(BackendError::Kind::protocol, "protocol error: malformed response body");
      }
      std::string content = j["choices"][0]["message"]["content"].get<std::string>();
      if (recorder_) recorder_(agent_, request, content);
      return content;
    } else if (result->status == 429 || result->status >= 500) {
      transient = true;
      last_error = "HTTP " + std::to_string(result->status);
    } else {
      throw BackendError(BackendError::Kind::rejected,
                         "backend rejected request: HTTP " + std::to_string(result->status) + " " +
                             result->body);
    }
    if (transient) {
      if (attempts >= spec_.max_retries) {
        throw BackendError(BackendError::Kind::unavailable,
                           "backend unavailable after " + std::to_string(attempts) + " retries (" +
                               last_error + ")");
      }
      long long base = static_cast<long long>(spec_.backoff_base_ms) << attempts;
      long long jitter = spec_.backoff_base_ms > 1
                             ? static_cast<long long>(jitter_rng() % (spec_.backoff_base_ms / 2 + 1))
                             : 0;
      std::this_thread::sleep_for(std::chrono::milliseconds(base + jitter));
      ++attempts;
      ++retries_;
    }
  }
}

std::unique_ptr<Backend> make_backend(const BackendSpec& spec, const std::string& agent,
                                      std::shared_ptr<Script> shared_script) {
  if (spec.kind == BackendSpec::Kind::http) return std::make_unique<HttpBackend>(spec, agent);
  auto script = shared_script ? std::move(shared_script) : Script::load(spec.script_path);
  return std::make_unique<ScriptedBackend>(std::move(script), agent,
                                           spec.model_name.empty() ? "scripted" : spec.model_name);
}

}  // namespace dialectic
