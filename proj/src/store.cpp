#include "dialectic/store.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dialectic/answers.hpp"

namespace dialectic {

std::vector<Problem> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  std::vector<Problem> problems;
  std::set<std::string> ids;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": invalid JSON");
    Problem problem;
    try {
      problem = problem_from_json(j);
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!ids.insert(problem.id).second)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": duplicate id \"" + problem.id +
                               "\"");
    auto canonical = canonicalize_answer(problem.gold_answer, problem.answer_space);
    if (!canonical)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": gold_answer does not canonicalize within the answer space");
    problem.gold_answer = *canonical;
    problems.push_back(std::move(problem));
  }
  if (problems.empty()) std::cerr << "warning: dataset " << path << " is empty\n";
  return problems;
}

RunDir::RunDir(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_ / "prompts");
}

std::vector<json> RunDir::read_jsonl(const std::string& name) const {
  std::vector<json> records;
  std::ifstream in(file(name));
  if (!in) return records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw std::runtime_error(name + ":" + std::to_string(lineno) + ": corrupt run: invalid JSON");
    records.push_back(std::move(j));
  }
  return records;
}

void RunDir::append_jsonl(const std::string& name, const std::vector<json>& records) {
  if (records.empty()) return;
  std::ofstream out(file(name), std::ios::app);
  if (!out) throw std::runtime_error("cannot open for append: " + file(name).string());
  for (const auto& r : records) out << r.dump() << "\n";
}

void RunDir::write_text(const std::string& name, const std::string& text) {
  std::ofstream out(file(name), std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write: " + file(name).string());
  out << text;
}

std::set<std::string> RunDir::existing_keys(
    const std::string& name, const std::function<std::string(const json&)>& key_of) const {
  std::set<std::string> keys;
  for (const auto& record : read_jsonl(name)) keys.insert(key_of(record));
  return keys;
}

void RunDir::manifest_append(const std::string& stage, const json& counts,
                             const std::string& model_name, std::uint64_t seed) {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  append_jsonl(files::kManifest, {json{{"stage", stage},
                                       {"counts", counts},
                                       {"model_name", model_name},
                                       {"timestamp", buf},
                                       {"seed", seed}}});
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

namespace {

std::string pct(const json& row, const char* field) {
  if (!row.contains(field) || row[field].is_null()) return "-";
  return percent_1dp(rational_from_json(row[field]));
}

std::string real3(const json& row, const char* field) {
  if (!row.contains(field) || row[field].is_null()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", row[field].get<double>());
  return buf;
}

}  // namespace

std::string render_report(const json& metrics, const std::string& format) {
  const bool csv = format == "csv";
  if (!csv && format != "table") throw std::invalid_argument("unknown report format: " + format);

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Benchmark", "N", "Model first", "User first", "Average", "Both", "Either", "Mean FR",
                  "Mean Conf.", "Cov.", "Corr.", "FR@100%Conf.", "Disbelieve", "FR-restricted"});
  for (const auto& row : metrics.at("benchmarks")) {
    rows.push_back({row.at("benchmark").get<std::string>(), std::to_string(row.at("n").get<int>()),
                    pct(row, "fr_model_first"), pct(row, "fr_user_first"), pct(row, "fr_average"),
                    pct(row, "fr_both"), pct(row, "fr_either"), pct(row, "mean_failure"),
                    pct(row, "mean_confidence"), real3(row, "covariance"), real3(row, "correlation"),
                    pct(row, "fr_at_full_confidence"), pct(row, "disbelieve_rate"),
                    pct(row, "fr_disbelieve_restricted")});
  }

  std::ostringstream out;
  out << "# failure rates in percent; covariance/correlation use population normalization; policy: "
      << metrics.at("indeterminate_policy").get<std::string>() << "\n";
  if (csv) {
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << "\n";
    }
    return out.str();
  }
  std::vector<size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << row[i] << std::string(widths[i] - row[i].size(), ' ');
      if (i + 1 < row.size()) out << "  ";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace dialectic
