#pragma once

#include <memory>
#include <string>

#include "dialectic/config.hpp"
#include "dialectic/elicitation.hpp"
#include "dialectic/store.hpp"

namespace dialectic {

// Stage runners behind the CLI subcommands. Every stage is idempotent:
// records already present in the run directory are skipped on rerun.
class Pipeline {
 public:
  Pipeline(Config config, RunDir dir, std::uint64_t seed, int concurrency,
           std::string backend_override = "");

  void elicit();
  void filter();
  void synthesize();
  void debate();
  void judge();
  void probe();
  void confidence();

  // Computes metrics.json (always rewritten) and returns it.
  json metrics();

  const RunDir& dir() const { return dir_; }
  Config& config() { return config_; }

 private:
  std::unique_ptr<Backend> make_backend_for(const std::string& agent,
                                            std::shared_ptr<Script> shared = nullptr);
  std::shared_ptr<Script> shared_script(const BackendSpec& spec);
  PromptPack prompt_pack() const;
  std::vector<Problem> problems() const;
  std::vector<std::pair<Problem, Solution>> kept_set() const;

  Config config_;
  RunDir dir_;
  std::uint64_t seed_;
  int concurrency_;
  std::string backend_override_;
  std::map<std::string, std::shared_ptr<Script>> scripts_;
};

}  // namespace dialectic
