#include "dialectic/pipeline.hpp"

#include <algorithm>
#include <map>

#include "dialectic/adversary.hpp"
#include "dialectic/answers.hpp"
#include "dialectic/metrics.hpp"
#include "dialectic/orchestrator.hpp"
#include "dialectic/parallel.hpp"

namespace dialectic {

namespace {

std::string solution_key(const std::string& id, const std::string& origin, int sample_index) {
  return id + "#" + origin + "#" + std::to_string(sample_index);
}

std::string solution_key_of(const json& record) {
  return solution_key(record.at("id").get<std::string>(), record.at("origin").get<std::string>(),
                      record.value("sample_index", -1));
}

std::string transcript_key_of(const json& record) {
  return record.at("problem_id").get<std::string>() + "#" + record.at("ordering").get<std::string>();
}

}  // namespace

Pipeline::Pipeline(Config config, RunDir dir, std::uint64_t seed, int concurrency,
                   std::string backend_override)
    : config_(std::move(config)),
      dir_(std::move(dir)),
      seed_(seed),
      concurrency_(concurrency),
      backend_override_(std::move(backend_override)) {}

std::shared_ptr<Script> Pipeline::shared_script(const BackendSpec& spec) {
  auto it = scripts_.find(spec.script_path);
  if (it != scripts_.end()) return it->second;
  auto script = Script::load(spec.script_path);
  scripts_[spec.script_path] = script;
  return script;
}

std::unique_ptr<Backend> Pipeline::make_backend_for(const std::string& agent,
                                                    std::shared_ptr<Script> shared) {
  std::string name = backend_override_.empty() ? agent : backend_override_;
  BackendSpec spec = config_.backend_spec(name);
  if (spec.kind == BackendSpec::Kind::scripted && !shared) shared = shared_script(spec);
  return make_backend(spec, agent, std::move(shared));
}

PromptPack Pipeline::prompt_pack() const {
  if (!config_.has("prompt.instruction")) {
    PromptPack pack;
    pack.cot_instruction =
        "Answer the following question. Let's think step by step, then state the final "
        "answer as \"The answer is ...\".";
    return pack;
  }
  std::optional<std::string> demos;
  if (config_.has("prompt.demonstrations")) demos = config_.require("prompt.demonstrations");
  return load_prompt_pack(config_.require("prompt.instruction"), demos,
                          config_.get("prompt.label", "valid-cot"));
}

std::vector<Problem> Pipeline::problems() const { return load_dataset(config_.require("dataset")); }

std::vector<std::pair<Problem, Solution>> Pipeline::kept_set() const {
  auto all = problems();
  std::map<std::string, Solution> greedy;
  for (const auto& record : dir_.read_jsonl(files::kSolutions))
    if (record.at("origin").get<std::string>() == "model_greedy")
      greedy[record.at("id").get<std::string>()] = solution_from_json(record);
  std::vector<Problem> covered;
  std::vector<Solution> solutions;
  for (const auto& p : all) {
    auto it = greedy.find(p.id);
    if (it == greedy.end()) continue;
    covered.push_back(p);
    solutions.push_back(it->second);
  }
  return filter_eval_set(covered, solutions);
}

void Pipeline::elicit() {
  auto all = problems();
  auto existing = dir_.existing_keys(files::kSolutions, solution_key_of);
  std::vector<Problem> todo;
  for (const auto& p : all)
    if (!existing.count(solution_key(p.id, "model_greedy", -1))) todo.push_back(p);

  auto pack = prompt_pack();
  auto backend = make_backend_for("model");
  double temperature = config_.get_double("temperature.greedy", 0.0);
  auto solutions = parallel_map(todo, concurrency_, [&](const Problem& p) {
    return elicit_solution(p, pack, *backend, temperature);
  });

  std::vector<json> records;
  for (size_t i = 0; i < todo.size(); ++i) {
    json r = to_json(solutions[i]);
    r["id"] = todo[i].id;
    r["sample_index"] = -1;
    records.push_back(std::move(r));
  }
  dir_.append_jsonl(files::kSolutions, records);
  dir_.manifest_append("elicit",
                       {{"tested", all.size()}, {"new", records.size()}, {"skipped", existing.size()}},
                       backend->model_name(), seed_);
}

void Pipeline::filter() {
  auto all = problems();
  auto kept = kept_set();
  dir_.manifest_append(
      "filter", {{"tested", all.size()}, {"kept", kept.size()}, {"dropped", all.size() - kept.size()}},
      config_.get("backend.model.model", "scripted"), seed_);
}

void Pipeline::synthesize() {
  auto kept = kept_set();
  auto existing = dir_.existing_keys(
      files::kInvalid, [](const json& r) { return r.at("id").get<std::string>(); });
  std::vector<std::pair<Problem, Solution>> todo;
  for (const auto& pair : kept)
    if (!existing.count(pair.first.id)) todo.push_back(pair);

  auto backend = make_backend_for("adversary");
  int max_attempts = config_.get_int("adversary.max_attempts", 5);
  auto outcomes = parallel_map(todo, concurrency_, [&](const std::pair<Problem, Solution>& pair) {
    return synthesize_invalid_solution(pair.first, *backend, max_attempts, seed_);
  });

  std::vector<json> records;
  int skipped = 0;
  for (size_t i = 0; i < todo.size(); ++i) {
    json r;
    r["id"] = todo[i].first.id;
    if (const Solution* s = std::get_if<Solution>(&outcomes[i])) {
      r["skipped"] = false;
      r["solution"] = to_json(*s);
    } else {
      const Skip& skip = std::get<Skip>(outcomes[i]);
      r["skipped"] = true;
      r["attempts"] = skip.attempts;
      r["reason"] = skip.reason;
      ++skipped;
    }
    records.push_back(std::move(r));
  }
  dir_.append_jsonl(files::kInvalid, records);
  dir_.manifest_append(
      "synthesize",
      {{"input", kept.size()}, {"new", records.size()}, {"skipped_new", skipped}},
      backend->model_name(), seed_);
}

void Pipeline::debate() {
  auto kept = kept_set();
  std::map<std::string, Solution> invalid;
  for (const auto& record : dir_.read_jsonl(files::kInvalid))
    if (!record.at("skipped").get<bool>())
      invalid[record.at("id").get<std::string>()] = solution_from_json(record.at("solution"));

  auto existing = dir_.existing_keys(files::kTranscripts, transcript_key_of);

  struct Job {
    Problem problem;
    Solution model_initial;
    Solution user_initial;
    Ordering ordering;
  };
  std::vector<Job> jobs;
  for (const auto& [problem, solution] : kept) {
    auto it = invalid.find(problem.id);
    if (it == invalid.end()) continue;
    for (Ordering ordering : {Ordering::model_first, Ordering::user_first})
      if (!existing.count(problem.id + "#" + to_string(ordering)))
        jobs.push_back({problem, solution, it->second, ordering});
  }

  auto model_backend = make_backend_for("model");
  auto user_backend = make_backend_for("user");
  DebateConfig debate_config;
  debate_config.rounds_after_initial = config_.get_int("rounds_after_initial", 2);
  debate_config.temperature = config_.get_double("temperature.debate", 0.0);
  if (config_.has("goal_prompt")) debate_config.shared_goal_prompt = config_.require("goal_prompt");

  auto transcripts = parallel_map(jobs, concurrency_, [&](const Job& job) {
    return run_debate(job.problem, job.model_initial, job.user_initial, job.ordering, *model_backend,
                      *user_backend, debate_config);
  });

  std::vector<json> records;
  int aborted = 0;
  for (const auto& t : transcripts) {
    aborted += t.aborted;
    records.push_back(to_json(t));
  }
  dir_.append_jsonl(files::kTranscripts, records);
  dir_.manifest_append("debate",
                       {{"examples", kept.size()},
                        {"new_transcripts", records.size()},
                        {"aborted_new", aborted}},
                       model_backend->model_name(), seed_);
}

void Pipeline::judge() {
  auto all = problems();
  std::map<std::string, Problem> by_id;
  for (const auto& p : all) by_id[p.id] = p;

  auto existing = dir_.existing_keys(files::kVerdicts, transcript_key_of);
  std::vector<Transcript> todo;
  int aborted = 0;
  for (const auto& record : dir_.read_jsonl(files::kTranscripts)) {
    Transcript t = transcript_from_json(record);
    if (t.aborted) {
      ++aborted;
      continue;
    }
    if (!existing.count(t.problem_id + "#" + to_string(t.ordering))) todo.push_back(std::move(t));
  }

  auto backend = make_backend_for("judge");
  IndeterminatePolicy policy = config_.indeterminate_policy();
  auto summaries = parallel_map(todo, concurrency_, [&](const Transcript& t) {
    return summarize_transcript(t, *backend);
  });

  std::vector<json> records;
  int judge_failed = 0;
  for (size_t i = 0; i < todo.size(); ++i) {
    VerdictRecord record;
    record.problem_id = todo[i].problem_id;
    record.ordering = todo[i].ordering;
    const SummaryResult& summary = summaries[i];
    std::optional<Verdict> verdict;
    if (!summary.judge_failed)
      verdict = classify_verdict(summary.agreement, summary.agreed_answer_text,
                                 by_id.at(todo[i].problem_id), policy);
    if (!verdict) {
      record.status = "judge_failed";
      ++judge_failed;
    } else {
      record.agreement = verdict->agreement;
      record.agreed_answer = verdict->agreed_answer;
      record.outcome = verdict->outcome;
    }
    records.push_back(to_json(record));
  }
  dir_.append_jsonl(files::kVerdicts, records);
  dir_.manifest_append("judge",
                       {{"new_verdicts", records.size()},
                        {"judge_failed_new", judge_failed},
                        {"aborted_transcripts", aborted}},
                       backend->model_name(), seed_);
}

void Pipeline::probe() {
  auto kept = kept_set();
  std::map<std::string, Solution> invalid;
  for (const auto& record : dir_.read_jsonl(files::kInvalid))
    if (!record.at("skipped").get<bool>())
      invalid[record.at("id").get<std::string>()] = solution_from_json(record.at("solution"));

  auto existing = dir_.existing_keys(
      files::kProbes, [](const json& r) { return r.at("id").get<std::string>(); });
  std::vector<std::pair<Problem, Solution>> todo;
  for (const auto& [problem, _] : kept) {
    auto it = invalid.find(problem.id);
    if (it != invalid.end() && !existing.count(problem.id)) todo.push_back({problem, it->second});
  }

  auto backend = make_backend_for("model");
  auto beliefs = parallel_map(todo, concurrency_, [&](const std::pair<Problem, Solution>& pair) {
    return probe_belief(pair.first, pair.second, *backend);
  });

  std::vector<json> records;
  for (size_t i = 0; i < todo.size(); ++i)
    records.push_back({{"id", todo[i].first.id}, {"belief", to_string(beliefs[i])}});
  dir_.append_jsonl(files::kProbes, records);
  dir_.manifest_append("probe", {{"new", records.size()}}, backend->model_name(), seed_);
}

void Pipeline::confidence() {
  auto kept = kept_set();
  int k = config_.get_int("confidence.k", 9);
  double temperature = config_.get_double("temperature.sample", 1.0);
  auto existing = dir_.existing_keys(files::kSolutions, solution_key_of);

  struct Job {
    Problem problem;
    int sample_index;
  };
  std::vector<Job> jobs;
  for (const auto& [problem, _] : kept)
    for (int i = 0; i < k; ++i)
      if (!existing.count(solution_key(problem.id, "model_sampled", i))) jobs.push_back({problem, i});

  auto pack = prompt_pack();
  auto backend = make_backend_for("model");
  auto samples = parallel_map(jobs, concurrency_, [&](const Job& job) {
    return elicit_solution(job.problem, pack, *backend, temperature);
  });

  std::vector<json> records;
  for (size_t i = 0; i < jobs.size(); ++i) {
    json r = to_json(samples[i]);
    r["id"] = jobs[i].problem.id;
    r["sample_index"] = jobs[i].sample_index;
    records.push_back(std::move(r));
  }
  dir_.append_jsonl(files::kSolutions, records);
  dir_.manifest_append("confidence", {{"new_samples", records.size()}, {"k", k}},
                       backend->model_name(), seed_);
}

json Pipeline::metrics() {
  auto all = problems();
  std::map<std::string, Problem> by_id;
  for (const auto& p : all) by_id[p.id] = p;

  IndeterminatePolicy policy = config_.indeterminate_policy();

  // Reclassify stored (agreement, agreed_answer) under the current policy so
  // `report` can rescore existing verdicts (Appendix-C style comparisons).
  std::map<std::string, std::map<std::string, Verdict>> verdicts;  // id -> ordering -> verdict
  int judge_failed = 0;
  for (const auto& record : dir_.read_jsonl(files::kVerdicts)) {
    VerdictRecord r = verdict_record_from_json(record);
    if (r.status != "ok") {
      ++judge_failed;
      continue;
    }
    auto verdict = classify_verdict(r.agreement, r.agreed_answer, by_id.at(r.problem_id), policy);
    if (!verdict) {
      ++judge_failed;
      continue;
    }
    verdicts[r.problem_id][to_string(r.ordering)] = *verdict;
  }

  // Confidence per problem from the persisted samples.
  std::map<std::string, std::vector<Solution>> samples;
  for (const auto& record : dir_.read_jsonl(files::kSolutions))
    if (record.at("origin").get<std::string>() == "model_sampled")
      samples[record.at("id").get<std::string>()].push_back(solution_from_json(record));

  std::map<std::string, Belief> beliefs;
  for (const auto& record : dir_.read_jsonl(files::kProbes)) {
    std::string b = record.at("belief").get<std::string>();
    beliefs[record.at("id").get<std::string>()] = b == "believes"      ? Belief::believes
                                                  : b == "disbelieves" ? Belief::disbelieves
                                                                       : Belief::unparseable;
  }

  // Assemble ExampleResults per benchmark, in dataset order.
  std::map<std::string, std::vector<ExampleResult>> by_benchmark;
  std::vector<std::string> benchmark_order;
  for (const auto& problem : all) {
    auto it = verdicts.find(problem.id);
    if (it == verdicts.end() || it->second.size() != 2) continue;
    ExampleResult result;
    result.problem_id = problem.id;
    result.verdict_model_first = it->second.at("model_first");
    result.verdict_user_first = it->second.at("user_first");
    auto sit = samples.find(problem.id);
    if (sit != samples.end())
      result.confidence = confidence_ratio(sit->second, problem.gold_answer, problem.answer_space);
    auto bit = beliefs.find(problem.id);
    if (bit != beliefs.end()) result.belief_probe = bit->second;
    if (!by_benchmark.count(problem.benchmark)) benchmark_order.push_back(problem.benchmark);
    by_benchmark[problem.benchmark].push_back(std::move(result));
  }

  auto row_for = [&](const std::string& name, const std::vector<ExampleResult>& results) {
    MetricsReport report = compute_failure_metrics(results);
    json row;
    row["benchmark"] = name;
    row["n"] = report.n;
    row["fr_model_first"] = to_json(report.fr_model_first);
    row["fr_user_first"] = to_json(report.fr_user_first);
    row["fr_average"] = to_json(report.fr_average);
    row["fr_both"] = to_json(report.fr_both);
    row["fr_either"] = to_json(report.fr_either);

    std::vector<std::pair<int, Rational>> pairs;
    for (const auto& r : results)
      if (r.confidence)
        pairs.emplace_back(r.verdict_model_first.outcome == Outcome::failure ||
                                   r.verdict_user_first.outcome == Outcome::failure
                               ? 1
                               : 0,
                           r.confidence->ratio);
    if (!pairs.empty()) {
      ConfidenceStats stats = compute_confidence_stats(pairs);
      row["mean_failure"] = to_json(stats.mean_failure);
      row["mean_confidence"] = to_json(stats.mean_confidence);
      row["covariance"] = stats.covariance;
      if (stats.correlation) row["correlation"] = *stats.correlation;
      if (stats.fr_at_full_confidence) row["fr_at_full_confidence"] = to_json(*stats.fr_at_full_confidence);
    }

    long long disbelieve = 0, believed = 0, restricted_failures = 0;
    for (const auto& r : results) {
      if (!r.belief_probe || *r.belief_probe == Belief::unparseable) continue;
      if (*r.belief_probe == Belief::disbelieves) {
        ++disbelieve;
        restricted_failures += r.verdict_model_first.outcome == Outcome::failure ||
                               r.verdict_user_first.outcome == Outcome::failure;
      } else {
        ++believed;
      }
    }
    if (disbelieve + believed > 0) {
      row["disbelieve_rate"] = to_json(Rational{disbelieve, disbelieve + believed});
      if (disbelieve > 0)
        row["fr_disbelieve_restricted"] = to_json(Rational{restricted_failures, disbelieve});
    }
    return row;
  };

  json metrics;
  metrics["indeterminate_policy"] = to_string(policy);
  metrics["normalization"] = "population";
  metrics["seed"] = seed_;
  metrics["judge_failed_or_aborted"] = judge_failed;
  metrics["benchmarks"] = json::array();
  std::vector<ExampleResult> overall;
  for (const auto& name : benchmark_order) {
    metrics["benchmarks"].push_back(row_for(name, by_benchmark[name]));
    for (const auto& r : by_benchmark[name]) overall.push_back(r);
  }
  if (!overall.empty()) metrics["overall"] = row_for("overall", overall);

  dir_.write_text(files::kMetrics, metrics.dump(2) + "\n");
  dir_.manifest_append("metrics", {{"examples", overall.size()}}, "n/a", seed_);
  return metrics;
}

}  // namespace dialectic
