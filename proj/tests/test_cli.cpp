#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "doctest.h"
#include "json.hpp"
#include "rebalance/pipeline.hpp"
#include "rebalance/rng.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace rebalance;
using rebalance::testing::kTable1Csv;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rebalance");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("rebalance_cli_" + std::to_string(std::random_device{}()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// First seed whose index draws equal `wanted`, with the range of each draw given alongside.
std::uint64_t seed_for(const std::vector<std::pair<std::size_t, std::size_t>>& wanted) {
  for (std::uint64_t seed = 0;; ++seed) {
    SeededDraws d(seed);
    bool ok = true;
    for (const auto& [n, v] : wanted) ok = ok && d.index(n) == v;
    if (ok) return seed;
  }
}

nlohmann::json without_timings(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("timings_ms");
  return j;
}

std::string balanced_csv() {
  std::ostringstream s;
  s << "a,b,y\n";
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0, 1);
  for (int i = 0; i < 40; ++i) s << g(rng) + (i % 2) << ',' << g(rng) << ',' << (i % 2 ? "pos" : "neg") << '\n';
  return s.str();
}

}  // namespace

TEST_CASE("resample smote reproduces the worked example") {
  TempDir tmp;
  const auto in = tmp.write("t1.csv", kTable1Csv);
  // minority #1 (4,3) -> slot 0 (5,3); minority #2 (5,2) -> slot 0 (5,3)
  const auto seed = seed_for({{3, 1}, {2, 0}, {3, 2}, {2, 0}});
  const Run r = run({"resample", in, tmp.file("out.csv"), "--method", "smote", "--k", "2", "--n", "2", "--delta",
                     "0.5", "--seed", std::to_string(seed), "--label-col", "class", "--positive-label", "No"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(slurp(tmp.file("out.csv")) == std::string(kTable1Csv) + "4.5,3,No\n5,2.5,No\n");
}

TEST_CASE("resample adasyn reproduces the worked example") {
  TempDir tmp;
  const auto in = tmp.write("t1.csv", kTable1Csv);
  const auto seed = seed_for({{2, 1}, {2, 0}, {2, 1}});
  const Run r = run({"resample", in, tmp.file("out.csv"), "--method", "adasyn", "--beta", "0.75", "--k", "2",
                     "--delta", "0.5", "--seed", std::to_string(seed), "--positive-label", "No"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(slurp(tmp.file("out.csv")) == std::string(kTable1Csv) + "5,2.5,No\n4.5,3,No\n4.5,2.5,No\n");
}

TEST_CASE("--n 0 leaves the data unchanged") {
  TempDir tmp;
  const auto in = tmp.write("t1.csv", kTable1Csv);
  const Run r = run({"resample", in, tmp.file("out.csv"), "--method", "smote", "--n", "0", "--positive-label", "No"});
  REQUIRE(r.code == 0);
  CHECK(slurp(tmp.file("out.csv")) == kTable1Csv);
}

TEST_CASE("resampled output reloads to the same matrix") {
  TempDir tmp;
  const auto in = tmp.write("t1.csv", kTable1Csv);
  REQUIRE(run({"resample", in, tmp.file("out.csv"), "--method", "smote", "--k", "2", "--seed", "5",
               "--positive-label", "No"}).code == 0);
  const Dataset reloaded = load_csv(tmp.file("out.csv"), "class", "No");
  const Resampled direct = resample(rebalance::testing::table1(), {.method = Method::smote, .k = 2, .seed = 5});
  CHECK(reloaded.values() == direct.data.values());
  CHECK(reloaded.labels() == direct.data.labels());
  CHECK(reloaded.minority_count() == 7);
}

TEST_CASE("RESAMPLE_SEED is the fallback seed") {
  TempDir tmp;
  const auto in = tmp.write("t1.csv", kTable1Csv);
  REQUIRE(run({"resample", in, tmp.file("a.csv"), "--method", "smote", "--k", "2", "--seed", "123",
               "--positive-label", "No"}).code == 0);
  ::setenv("RESAMPLE_SEED", "123", 1);
  const Run r = run({"resample", in, tmp.file("b.csv"), "--method", "smote", "--k", "2", "--positive-label", "No"});
  ::setenv("RESAMPLE_SEED", "bogus", 1);
  const Run bad = run({"resample", in, tmp.file("c.csv"), "--method", "smote", "--positive-label", "No"});
  ::unsetenv("RESAMPLE_SEED");
  REQUIRE(r.code == 0);
  CHECK(slurp(tmp.file("a.csv")) == slurp(tmp.file("b.csv")));
  CHECK(bad.code == cli::kExitUsage);
}

TEST_CASE("exit codes and diagnostics") {
  TempDir tmp;
  const auto in = tmp.write("t1.csv", kTable1Csv);
  const auto out = tmp.file("o.csv");
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"resample", in, out, "--method", "smote"}).code == cli::kExitUsage);
  CHECK(run({"resample", in, out, "--method", "bogus", "--positive-label", "No"}).code == cli::kExitUsage);
  CHECK(run({"resample", in, out, "--method", "smote", "--n", "2", "--beta", "0.5", "--positive-label", "No"}).code ==
        cli::kExitUsage);
  CHECK(run({"resample", in, out, "--method", "adasyn", "--n", "2", "--positive-label", "No"}).code == cli::kExitUsage);
  CHECK(run({"resample", in, out, "--method", "smote", "--n", "-1", "--positive-label", "No"}).code == cli::kExitUsage);
  CHECK(run({"resample", in, out, "--method", "adasyn", "--beta", "2", "--positive-label", "No"}).code ==
        cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);

  const Run missing = run({"resample", tmp.file("nope.csv"), out, "--method", "smote", "--positive-label", "No"});
  CHECK(missing.code == cli::kExitData);
  CHECK(missing.err.find("cannot open") != std::string::npos);
  CHECK(std::count(missing.err.begin(), missing.err.end(), '\n') == 1);

  CHECK(run({"resample", in, out, "--method", "smote", "--label-col", "zzz", "--positive-label", "No"}).code ==
        cli::kExitData);
  const auto one = tmp.write("one.csv", "x,class\n1,a\n2,b\n3,b\n");
  CHECK(run({"resample", one, out, "--method", "smote", "--positive-label", "a"}).code == cli::kExitData);
  const auto holes = tmp.write("holes.csv", "x,class\n1,a\n,b\n");
  const Run h = run({"resample", holes, out, "--method", "smote", "--positive-label", "a"});
  CHECK(h.code == cli::kExitData);
  CHECK(h.err.find("row 2") != std::string::npos);
}

TEST_CASE("the installed binary maps errors to exit codes") {
  const std::string cmd = std::string(REBALANCE_CLI_PATH) + " resample /nonexistent.csv /tmp/x.csv --method smote "
                          "--positive-label 1 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == cli::kExitData);
}

TEST_CASE("evaluate reports counts and all measures") {
  TempDir tmp;
  const auto in = tmp.write("bal.csv", balanced_csv());
  const Run r = run({"evaluate", in, "--method", "none", "--label-col", "y", "--positive-label", "pos", "--seed", "3",
                     "--roc-out", tmp.file("roc.csv"), "--model-out", tmp.file("model.txt")});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["method"] == "none");
  CHECK(j["counts"]["train_before"] == j["counts"]["train_after"]);
  CHECK(j["counts"]["train_before"]["minority"] == 16);
  CHECK(j["counts"]["test"]["majority"] == 4);
  CHECK(j["counts"]["generated"] == 0);
  for (const char* m : {"accuracy", "precision", "recall", "f1", "auc_roc", "auc_single_point"}) {
    CHECK(j["metrics"][m].get<double>() >= 0.0);
    CHECK(j["metrics"][m].get<double>() <= 1.0);
  }
  CHECK(j.contains("timings_ms"));
  CHECK(slurp(tmp.file("roc.csv")).rfind("fpr,tpr\n0,0\n", 0) == 0);
  std::ifstream mf(tmp.file("model.txt"));
  CHECK(load_model(mf).weights.size() == 2);
}

TEST_CASE("evaluate is deterministic apart from timings") {
  TempDir tmp;
  const auto in = tmp.write("pima.csv", slurp(rebalance::testing::data_path("pima.csv")));
  const std::vector<std::string> args{"evaluate", in, "--method", "smote", "--label-col", "Class", "--positive-label",
                                      "positive", "--seed", "9", "--epochs", "200"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(without_timings(a.out) == without_timings(b.out));
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["counts"]["train_after"]["minority"].get<int>() ==
        j["counts"]["train_before"]["minority"].get<int>() + j["counts"]["generated"].get<int>());
  CHECK(j["counts"]["train_after"]["minority"] == j["counts"]["train_after"]["majority"]);
}

TEST_CASE("resampling never touches the test partition") {
  const Dataset ds = load_csv(rebalance::testing::data_path("pima.csv"), "Class", "positive");
  std::vector<RunReport> reports;
  for (Method m : {Method::none, Method::smote, Method::adasyn}) {
    EvaluateOptions o;
    o.resampling = {.method = m, .seed = 4};
    o.training.epochs = 50;
    reports.push_back(evaluate(ds, o));
  }
  CHECK(reports[0].test_rows == reports[1].test_rows);
  CHECK(reports[0].test_rows == reports[2].test_rows);
  CHECK(reports[0].test.minority == reports[2].test.minority);
  CHECK(reports[1].generated == 400 - 214);
  CHECK(reports[2].generated == 400 - 214);
}
