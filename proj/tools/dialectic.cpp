#include <iostream>

#include <CLI11.hpp>

#include "dialectic/orchestrator.hpp"
#include "dialectic/pipeline.hpp"

using namespace dialectic;

int main(int argc, char** argv) {
  CLI::App app{"dialectic: batch evaluation of LLM belief defense via simulated debate"};
  app.require_subcommand(1);

  std::string run_dir_path = "run";
  std::string config_path;
  std::uint64_t seed = 0;
  int concurrency = 4;
  std::string backend_override;
  app.add_option("--run-dir", run_dir_path, "run directory (stage files + manifest)");
  app.add_option("--config", config_path, "flat key = value run configuration file");
  app.add_option("--seed", seed, "run-level RNG seed, recorded in the manifest");
  app.add_option("--concurrency", concurrency, "bounded fan-out for parallel stages");
  app.add_option("--backend", backend_override, "override the backend block for this stage");

  std::string report_format = "table";
  std::string interactive_problem_id;

  auto* elicit = app.add_subcommand("elicit", "obtain greedy CoT solutions for every problem");
  auto* filter = app.add_subcommand("filter", "record the correct-solution evaluation set");
  auto* synthesize = app.add_subcommand("synthesize", "synthesize one invalid solution per example");
  auto* debate = app.add_subcommand("debate", "run both debate orderings per example");
  auto* judge = app.add_subcommand("judge", "summarize and classify every completed debate");
  auto* probe = app.add_subcommand("probe", "pre-debate belief probe on the user's solution");
  auto* confidence = app.add_subcommand("confidence", "repeated-sampling confidence estimates");
  auto* report = app.add_subcommand("report", "compute metrics.json and render the report");
  report->add_option("--format", report_format, "table or csv");
  auto* interactive = app.add_subcommand("interactive", "debate a problem yourself as the user");
  interactive->add_option("--problem", interactive_problem_id, "problem id to debate")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Config config = config_path.empty() ? Config{} : Config::load(config_path);
    Pipeline pipeline(config, RunDir(run_dir_path), seed, concurrency, backend_override);

    if (elicit->parsed()) pipeline.elicit();
    if (filter->parsed()) pipeline.filter();
    if (synthesize->parsed()) pipeline.synthesize();
    if (debate->parsed()) pipeline.debate();
    if (judge->parsed()) pipeline.judge();
    if (probe->parsed()) pipeline.probe();
    if (confidence->parsed()) pipeline.confidence();
    if (report->parsed()) {
      json metrics = pipeline.metrics();
      std::cout << render_report(metrics, report_format);
    }
    if (interactive->parsed()) {
      auto problems = load_dataset(pipeline.config().require("dataset"));
      const Problem* problem = nullptr;
      for (const auto& p : problems)
        if (p.id == interactive_problem_id) problem = &p;
      if (!problem) throw std::runtime_error("no such problem id: " + interactive_problem_id);

      std::map<std::string, Solution> greedy;
      for (const auto& record : pipeline.dir().read_jsonl(files::kSolutions))
        if (record.at("origin").get<std::string>() == "model_greedy")
          greedy[record.at("id").get<std::string>()] = solution_from_json(record);
      auto it = greedy.find(problem->id);
      if (it == greedy.end() || it->second.correctness != Correctness::correct)
        throw std::runtime_error("problem has no correct greedy solution yet; run elicit first");

      BackendSpec spec = pipeline.config().backend_spec(
          backend_override.empty() ? "model" : backend_override);
      auto backend = make_backend(spec, "model");
      DebateConfig debate_config;
      debate_config.rounds_after_initial = pipeline.config().get_int("rounds_after_initial", 2);
      if (pipeline.config().has("goal_prompt"))
        debate_config.shared_goal_prompt = pipeline.config().require("goal_prompt");
      Transcript t =
          run_interactive_debate(*problem, it->second, *backend, debate_config, std::cin, std::cout);
      std::cout << "\n" << to_json(t).dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
