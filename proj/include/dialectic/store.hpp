#pragma once

#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dialectic/json_codec.hpp"
#include "dialectic/types.hpp"

namespace dialectic {

// JSONL dataset, one Problem per line. Validates invariants; rejects
// duplicate ids and unparseable lines with line-numbered diagnostics.
std::vector<Problem> load_dataset(const std::string& path);

// Stage-file names inside a run directory.
namespace files {
inline constexpr const char* kManifest = "manifest.jsonl";
inline constexpr const char* kSolutions = "solutions.jsonl";
inline constexpr const char* kInvalid = "invalid.jsonl";
inline constexpr const char* kTranscripts = "transcripts.jsonl";
inline constexpr const char* kVerdicts = "verdicts.jsonl";
inline constexpr const char* kProbes = "probes.jsonl";
inline constexpr const char* kMetrics = "metrics.json";
}  // namespace files

// Append-only JSONL persistence per stage plus the run manifest. Single
// writer per stage file; completed files may be read concurrently.
class RunDir {
 public:
  explicit RunDir(std::filesystem::path dir);

  const std::filesystem::path& root() const { return dir_; }
  std::filesystem::path file(const std::string& name) const { return dir_ / name; }

  std::vector<json> read_jsonl(const std::string& name) const;  // empty when missing
  void append_jsonl(const std::string& name, const std::vector<json>& records);
  void write_text(const std::string& name, const std::string& text);

  // Keys already persisted, for idempotent stage reruns.
  std::set<std::string> existing_keys(const std::string& name,
                                      const std::function<std::string(const json&)>& key_of) const;

  void manifest_append(const std::string& stage, const json& counts, const std::string& model_name,
                       std::uint64_t seed);

 private:
  std::filesystem::path dir_;
};

// Per-benchmark Table-1 row plus confidence and belief-probe columns.
std::string render_report(const json& metrics, const std::string& format);

}  // namespace dialectic
