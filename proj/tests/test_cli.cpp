#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <doctest.h>

#include "commands.hpp"
#include "sortlab/atomic_file.hpp"
#include "sortlab/dataset_io.hpp"

using namespace sortlab;
using namespace sortlab::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sortlab_cli_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

constexpr const char* kSmallPlan = R"({
  "factors": [
    {"name": "n", "values": [30, 50, 70]},
    {"name": "s", "values": [1, 10, 100]},
    {"name": "m", "values": [0, 5, 10]}
  ],
  "replicates": 3,
  "master_seed": 2024,
  "algorithms": ["insertion", "shift_insertion"]
})";

int run_main(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "sortlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int rc = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

std::size_t count_data_rows(const std::string& csv) {
  std::size_t rows = 0;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#' && !line.starts_with("algorithm,")) ++rows;
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("run writes one dataset per algorithm and leaves no temporaries") {
  TempDir dir;
  write_file_atomic(dir.path / "plan.json", kSmallPlan);
  std::string out, err;
  REQUIRE(run_main({"run", "--plan", (dir.path / "plan.json").string(), "--out",
                    (dir.path / "data").string()},
                   &out, &err) == kExitOk);
  for (const char* name : {"insertion.csv", "shift_insertion.csv"}) {
    const auto text = read_file(dir.path / "data" / name);
    CHECK(count_data_rows(text) == 81);
    CHECK(text.find("# prng=") != std::string::npos);
    CHECK(text.find("# clock=") != std::string::npos);
    CHECK(text.find("# run_order=") != std::string::npos);
  }
  for (const auto& entry : fs::directory_iterator(dir.path / "data")) {
    CHECK(entry.path().string().find(".tmp.") == std::string::npos);
  }
}

TEST_CASE("run warns when replicates = 1") {
  TempDir dir;
  write_file_atomic(dir.path / "plan.json",
                    R"({"factors":[{"name":"n","values":[5,9]}],"replicates":1,"algorithms":["insertion"]})");
  std::string out, err;
  CHECK(run_main({"run", "--plan", (dir.path / "plan.json").string(), "--out", dir.path.string()}, &out,
                 &err) == kExitOk);
  CHECK(err.find("warning") != std::string::npos);
  CHECK(err.find("error degrees of freedom") != std::string::npos);
}

TEST_CASE("run with a missing plan names the path") {
  std::string out, err;
  CHECK(run_main({"run", "--plan", "/nonexistent/plan.json", "--out", "/tmp/x"}, &out, &err) ==
        kExitValidation);
  CHECK(err.find("/nonexistent/plan.json") != std::string::npos);
}

TEST_CASE("anova, compare on datasets from run") {
  TempDir dir;
  write_file_atomic(dir.path / "plan.json", kSmallPlan);
  const auto plan = (dir.path / "plan.json").string();
  REQUIRE(run_main({"run", "--plan", plan, "--out", (dir.path / "a").string(), "--no-timing"}) == kExitOk);
  REQUIRE(run_main({"run", "--plan", plan, "--out", (dir.path / "b").string(), "--no-timing"}) == kExitOk);
  const auto ins_a = (dir.path / "a" / "insertion.csv").string();
  const auto ins_b = (dir.path / "b" / "insertion.csv").string();
  const auto shift_a = (dir.path / "a" / "shift_insertion.csv").string();

  SUBCASE("counters-response JSON is identical across reruns") {
    std::string ja, jb;
    REQUIRE(run_main({"anova", ins_a, "--response", "comparisons", "--format", "json"}, &ja) == kExitOk);
    REQUIRE(run_main({"anova", ins_b, "--response", "comparisons", "--format", "json"}, &jb) == kExitOk);
    CHECK(ja == jb);
    CHECK(ja.find("\"source\": \"n*s*m\"") != std::string::npos);
  }
  SUBCASE("text and csv formats, output file") {
    std::string text;
    REQUIRE(run_main({"anova", shift_a, "--response", "writes"}, &text) == kExitOk);
    CHECK(text.find("R-Sq(adj)") != std::string::npos);
    REQUIRE(run_main({"anova", shift_a, "--response", "comparisons", "--format", "csv", "--out",
                      (dir.path / "t.csv").string()}) == kExitOk);
    CHECK(read_file(dir.path / "t.csv").starts_with("source,df,seq_ss"));
  }
  SUBCASE("unknown response or format") {
    CHECK(run_main({"anova", ins_a, "--response", "bogus"}) == kExitValidation);
    CHECK(run_main({"anova", ins_a, "--format", "xml"}) == kExitValidation);
  }
  SUBCASE("dataset with one row removed") {
    auto text = read_file(ins_a);
    const auto last = text.rfind('\n', text.size() - 2);
    text.erase(last + 1);
    write_file_atomic(dir.path / "cut.csv", text);
    std::string out, err;
    CHECK(run_main({"anova", (dir.path / "cut.csv").string(), "--response", "comparisons"}, &out, &err) ==
          kExitValidation);
    CHECK(err.find("missing observation") != std::string::npos);
  }
  SUBCASE("compare emits seven sources") {
    std::string csv;
    REQUIRE(run_main({"compare", ins_a, shift_a, "--response", "comparisons", "--format", "csv"}, &csv) ==
            kExitOk);
    CHECK(count_data_rows(csv) == 8);  // header counted as a data row here
    for (const char* src : {"\nn,", "\ns,", "\nm,", "\nn*s,", "\nn*m,", "\ns*m,", "\nn*s*m,"}) {
      CHECK(csv.find(src) != std::string::npos);
    }
  }
  SUBCASE("compare a dataset with itself gives ties") {
    std::string csv;
    REQUIRE(run_main({"compare", ins_a, ins_a, "--response", "comparisons", "--format", "csv"}, &csv) ==
            kExitOk);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) CHECK(line.ends_with(",tie"));
  }
  SUBCASE("compare rejects mismatched factor sets") {
    write_file_atomic(dir.path / "p2.json",
                      R"({"factors":[{"name":"n","values":[5,9]}],"replicates":3,"algorithms":["insertion"]})");
    REQUIRE(run_main({"run", "--plan", (dir.path / "p2.json").string(), "--out", (dir.path / "c").string(),
                      "--no-timing"}) == kExitOk);
    CHECK(run_main({"compare", ins_a, (dir.path / "c" / "insertion.csv").string()}) == kExitValidation);
  }
}

TEST_CASE("run --seed overrides the master seed") {
  TempDir dir;
  write_file_atomic(dir.path / "plan.json", kSmallPlan);
  REQUIRE(run_main({"run", "--plan", (dir.path / "plan.json").string(), "--out", dir.path.string(),
                    "--seed", "99", "--no-timing"}) == kExitOk);
  const auto ds = parse_dataset_csv(read_file(dir.path / "insertion.csv"));
  CHECK(ds.plan.master_seed() == 99);
}

TEST_CASE("fprob") {
  std::string out;
  REQUIRE(run_main({"fprob", "4.42", "2", "54"}, &out) == kExitOk);
  CHECK(out.starts_with("0.0166"));
  REQUIRE(run_main({"fprob", "0", "3", "10"}, &out) == kExitOk);
  CHECK(out == "1\n");
  REQUIRE(run_main({"fprob", "15.28", "2", "54"}, &out) == kExitOk);
  CHECK(std::stod(out) < 0.0005);
  CHECK(run_main({"fprob", "--", "-1", "2", "54"}) == kExitValidation);
  CHECK(run_main({"fprob", "1", "0", "54"}) == kExitValidation);
}

TEST_CASE("gen dumps a one-column CSV") {
  std::string out;
  REQUIRE(run_main({"gen", "-n", "5", "-m", "1500", "-s", "0", "--seed", "42"}, &out) == kExitOk);
  CHECK(out == "value\n1500\n1500\n1500\n1500\n1500\n");
  CHECK(run_main({"gen", "-n", "0"}) == kExitValidation);
}

TEST_CASE("selftest prints one line per check") {
  std::string out;
  run_main({"selftest"}, &out);
  std::size_t lines = 0;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("PASS") || line.starts_with("FAIL")) ++lines;
  }
  CHECK(lines == 18);
  CHECK(out.find("PASS  insertion footer") != std::string::npos);
  CHECK(out.find("PASS  shift_insertion footer") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run_main({}) == kExitValidation);
  CHECK(run_main({"frobnicate"}) == kExitValidation);
  CHECK(run_main({"run"}) == kExitValidation);
  CHECK(run_main({"--help"}) == kExitOk);
}

}  // TEST_SUITE
