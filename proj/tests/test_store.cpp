#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dialectic/store.hpp"

using namespace dialectic;
namespace fs = std::filesystem;

namespace {

struct TmpDir {
  fs::path path;
  explicit TmpDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TmpDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string problem_line(const std::string& id, const std::string& gold) {
  json j = {{"id", id},
            {"benchmark", "gsm8k"},
            {"reasoning_type", "math"},
            {"question", "q " + id},
            {"gold_answer", gold},
            {"answer_space", {{"kind", "numeric"}}}};
  return j.dump() + "\n";
}

}  // namespace

TEST_CASE("load_dataset parses, canonicalizes gold, and skips blank lines") {
  TmpDir tmp("store_ds_ok");
  write_file(tmp.path / "d.jsonl",
             problem_line("a", "48.0") + "\n   \n" + problem_line("b", "1,200"));
  auto problems = load_dataset((tmp.path / "d.jsonl").string());
  REQUIRE(problems.size() == 2);
  CHECK(problems[0].id == "a");
  CHECK(problems[0].gold_answer == "48");
  CHECK(problems[1].gold_answer == "1200");
}

TEST_CASE("load_dataset failures carry line numbers") {
  TmpDir tmp("store_ds_bad");
  SUBCASE("duplicate id") {
    write_file(tmp.path / "d.jsonl", problem_line("a", "1") + problem_line("a", "2"));
    CHECK_THROWS_WITH_AS(load_dataset((tmp.path / "d.jsonl").string()),
                         doctest::Contains(":2: duplicate id \"a\""), std::runtime_error);
  }
  SUBCASE("invalid JSON") {
    write_file(tmp.path / "d.jsonl", problem_line("a", "1") + "{not json\n");
    CHECK_THROWS_WITH_AS(load_dataset((tmp.path / "d.jsonl").string()),
                         doctest::Contains(":2: invalid JSON"), std::runtime_error);
  }
  SUBCASE("gold answer outside the answer space") {
    write_file(tmp.path / "d.jsonl", problem_line("a", "not a number at all"));
    CHECK_THROWS_WITH_AS(load_dataset((tmp.path / "d.jsonl").string()),
                         doctest::Contains("gold_answer does not canonicalize"), std::runtime_error);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_dataset("/nonexistent/x.jsonl"), std::runtime_error); }
}

TEST_CASE("transcript survives a JSON round trip") {
  Transcript t;
  t.problem_id = "p1";
  t.ordering = Ordering::user_first;
  t.rounds_after_initial = 2;
  t.model_name = "m";
  t.timestamp = "2026-08-26T00:00:00Z";
  t.model_initial.raw_text = "The answer is 48.";
  t.model_initial.correctness = Correctness::correct;
  t.user_initial.raw_text = "The answer is 60.";
  t.user_initial.correctness = Correctness::incorrect;
  t.user_initial.origin = SolutionOrigin::adversary;
  t.turns = {{0, Speaker::user, "u0"}, {1, Speaker::model, "m1"}, {2, Speaker::user, "u2"}};
  t.tags = {"interactive"};
  t.aborted = false;

  Transcript r = transcript_from_json(to_json(t));
  CHECK(to_json(r) == to_json(t));
  CHECK(r.ordering == Ordering::user_first);
  CHECK(r.turns.size() == 3);
  CHECK(r.turns[2].content == "u2");
  CHECK(r.user_initial.origin == SolutionOrigin::adversary);
}

TEST_CASE("RunDir appends, reads back, and reports existing keys") {
  TmpDir tmp("store_rundir");
  RunDir dir(tmp.path / "run");
  CHECK(fs::is_directory(tmp.path / "run" / "prompts"));

  CHECK(dir.read_jsonl(files::kSolutions).empty());
  dir.append_jsonl(files::kSolutions, {json{{"key", "a"}}, json{{"key", "b"}}});
  dir.append_jsonl(files::kSolutions, {json{{"key", "c"}}});
  auto records = dir.read_jsonl(files::kSolutions);
  REQUIRE(records.size() == 3);
  CHECK(records[2]["key"] == "c");

  auto keys = dir.existing_keys(files::kSolutions,
                                [](const json& j) { return j.at("key").get<std::string>(); });
  CHECK(keys == std::set<std::string>{"a", "b", "c"});

  // an idempotent rerun appends nothing and leaves the file byte-identical
  auto before = fs::file_size(dir.file(files::kSolutions));
  std::vector<json> fresh;
  for (const auto& r : std::vector<json>{{{"key", "a"}}, {{"key", "c"}}})
    if (!keys.count(r.at("key").get<std::string>())) fresh.push_back(r);
  dir.append_jsonl(files::kSolutions, fresh);
  CHECK(fs::file_size(dir.file(files::kSolutions)) == before);

  dir.manifest_append("elicit", json{{"graded", 3}}, "scripted", 7);
  auto manifest = dir.read_jsonl(files::kManifest);
  REQUIRE(manifest.size() == 1);
  CHECK(manifest[0]["stage"] == "elicit");
  CHECK(manifest[0]["counts"]["graded"] == 3);
  CHECK(manifest[0]["seed"] == 7);
  CHECK(manifest[0]["timestamp"].get<std::string>().size() == 20);
}

TEST_CASE("verdict record codec") {
  VerdictRecord v;
  v.problem_id = "p1";
  v.ordering = Ordering::model_first;
  v.status = "ok";
  v.agreement = Agreement::agreed;
  v.agreed_answer = "480";
  v.outcome = Outcome::failure;
  VerdictRecord r = verdict_record_from_json(to_json(v));
  CHECK(to_json(r) == to_json(v));
  CHECK(r.outcome == Outcome::failure);
}

TEST_CASE("render_report formats the hand-enumerated derived row") {
  // 4 examples: MF failures {1,2}, UF failures {2,3} -> 50/50/50/25/75 percent
  json row = {{"benchmark", "gsm8k"},
              {"n", 4},
              {"fr_model_first", to_json(Rational{1, 2})},
              {"fr_user_first", to_json(Rational{1, 2})},
              {"fr_average", to_json(Rational{1, 2})},
              {"fr_both", to_json(Rational{1, 4})},
              {"fr_either", to_json(Rational{3, 4})}};
  json metrics = {{"indeterminate_policy", "as_correct"}, {"benchmarks", json::array({row})}};

  std::string csv = render_report(metrics, "csv");
  CHECK(csv.find("gsm8k,4,50.0,50.0,50.0,25.0,75.0,-,-,-,-,-,-,-") != std::string::npos);
  CHECK(csv.find("population normalization") != std::string::npos);
  CHECK(csv.find("as_correct") != std::string::npos);

  std::string table = render_report(metrics, "table");
  CHECK(table.find("Benchmark") != std::string::npos);
  CHECK(table.find("50.0") != std::string::npos);

  CHECK_THROWS_AS(render_report(metrics, "yaml"), std::invalid_argument);
}

TEST_CASE("render_report includes confidence and belief columns when present") {
  json row = {{"benchmark", "cs"},
              {"n", 2},
              {"fr_model_first", to_json(Rational{0, 1})},
              {"fr_user_first", to_json(Rational{1, 2})},
              {"fr_average", to_json(Rational{1, 4})},
              {"fr_both", to_json(Rational{0, 1})},
              {"fr_either", to_json(Rational{1, 2})},
              {"mean_failure", to_json(Rational{1, 2})},
              {"mean_confidence", to_json(Rational{7, 9})},
              {"covariance", -0.25},
              {"correlation", -1.0},
              {"fr_at_full_confidence", to_json(Rational{1, 1})},
              {"disbelieve_rate", to_json(Rational{1, 2})},
              {"fr_disbelieve_restricted", to_json(Rational{1, 1})}};
  json metrics = {{"indeterminate_policy", "as_failure"}, {"benchmarks", json::array({row})}};
  std::string csv = render_report(metrics, "csv");
  CHECK(csv.find("cs,2,0.0,50.0,25.0,0.0,50.0,50.0,77.8,-0.250,-1.000,100.0,50.0,100.0") !=
        std::string::npos);
}
