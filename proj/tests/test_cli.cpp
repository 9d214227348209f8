#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polarslice/cli.hpp"

using polarslice::cli::CommandResult;
using polarslice::cli::dispatch;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
  nlohmann::json payload;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CommandResult r = dispatch(args, out, err);
  return {r.exit_code, out.str(), err.str(), r.payload};
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& p, const std::string& content = "") : path(p) {
    if (!content.empty()) {
      std::ofstream f(path);
      f << content;
    }
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("count commands") {
  RunResult r = run({"eddeg", "spectrum", "--lambda", "1,2,3", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.payload["ed_degree"] == 6);
  CHECK(r.payload["command"] == "eddeg spectrum");

  // unsorted input is sorted before counting
  r = run({"eddeg", "spectrum", "--lambda", "9,7,7"});
  CHECK(r.exit_code == 0);
  CHECK(r.payload["ed_degree"] == 3);

  r = run({"eddeg", "adjoint", "--n", "4"});
  CHECK(r.exit_code == 0);
  CHECK(r.payload["ed_degree"] == 24);

  r = run({"eddeg", "adjoint", "--n", "1"});
  CHECK(r.exit_code == 2);

  r = run({"eddeg", "spectrum", "--lambda", "1,,3"});
  CHECK(r.exit_code == 2);
}

TEST_CASE("bad invocations exit 2") {
  CHECK(run({}).exit_code == 2);
  CHECK(run({"no-such-command"}).exit_code == 2);
  CHECK(run({"polarity", "test"}).exit_code == 2);           // missing rep path
  CHECK(run({"polarity", "test", "missing.json"}).exit_code == 2);
  CHECK(run({"catalog", "export", "bogus-family", "--out", "x.json"}).exit_code == 2);
  CHECK(run({"eddeg", "spectrum", "--lambda", "1,2", "--format", "yaml"}).exit_code == 2);
}

TEST_CASE("catalog list") {
  RunResult r = run({"catalog", "list", "--format", "json"});
  CHECK(r.exit_code == 0);
  REQUIRE(r.payload.contains("families"));
  CHECK(r.payload["families"].size() == 13);
}

TEST_CASE("catalog export round trips through the loader") {
  TempFile f("cli_export_test.json");
  RunResult r = run({"catalog", "export", "sp-lambda2", "--n", "2", "--out", f.path});
  REQUIRE(r.exit_code == 0);
  polarslice::LoadedRep loaded = polarslice::load_rep(f.path);
  CHECK(loaded.rep.name == "sp-lambda2(n=2)");
  CHECK(loaded.rep.dim == 6);
  REQUIRE(loaded.slice.has_value());
  CHECK(loaded.slice->vectors.size() == 2);
}

TEST_CASE("polarity test against expectations") {
  TempFile quartics("cli_quartics.json");
  REQUIRE(run({"catalog", "export", "sl2-quartics", "--out", quartics.path}).exit_code == 0);
  TempFile control("cli_control.json");
  REQUIRE(run({"catalog", "export", "so2-double-standard", "--out", control.path}).exit_code == 0);

  RunResult r = run({"polarity", "test", quartics.path, "--expect", "polar",
                     "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.payload["verdict"] == "POLAR");
  CHECK(r.payload["orbit_dim"] == 3);
  CHECK(r.payload["seed"] == polarslice::kDefaultSeed);

  r = run({"polarity", "test", control.path, "--expect", "not-polar", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.payload["verdict"] == "NOT_POLAR");
  REQUIRE(r.payload.contains("witness"));
  CHECK(r.payload["witness"]["generator_index"] == 0);

  // mismatched expectation: computed result still reported, exit code 4
  r = run({"polarity", "test", control.path, "--expect", "polar", "--format", "json"});
  CHECK(r.exit_code == 4);
  CHECK(r.payload["verdict"] == "NOT_POLAR");

  r = run({"polarity", "test", quartics.path, "--expect", "sideways"});
  CHECK(r.exit_code == 2);
}

TEST_CASE("polarity slice writes a certified basis document") {
  TempFile rep("cli_slice_rep.json");
  REQUIRE(run({"catalog", "export", "so-standard", "--n", "3", "--out", rep.path}).exit_code == 0);
  TempFile slice("cli_slice_out.json");
  RunResult r = run({"polarity", "slice", rep.path, "--out", slice.path, "--format", "json"});
  REQUIRE(r.exit_code == 0);
  CHECK(r.payload["slice_dim"] == 1);
  CHECK(r.payload["status"] == "CERTIFIED");
  std::ifstream in(slice.path);
  nlohmann::json doc;
  in >> doc;
  CHECK(doc["dim"] == 3);
  CHECK(doc["status"] == "CERTIFIED");
  REQUIRE(doc["vectors"].size() == 1);
  CHECK(doc["vectors"][0].size() == 3);
}

TEST_CASE("nearest and critical commands on matrix files") {
  TempFile data("cli_data.json", "[[1, 0], [0, 2]]");
  RunResult r = run({"nearest", "spectrum", "--data", data.path, "--lambda", "5,6",
                     "--format", "json"});
  REQUIRE(r.exit_code == 0);
  CHECK(r.payload["matrix"][0][0].get<double>() == Catch::Approx(5).margin(1e-10));
  CHECK(r.payload["matrix"][1][1].get<double>() == Catch::Approx(6).margin(1e-10));
  CHECK(r.payload["residual"].get<double>() <= polarslice::kCriticalityTol);

  r = run({"critical", "enumerate", "spectrum", "--data", data.path, "--lambda", "5,6",
           "--format", "json"});
  REQUIRE(r.exit_code == 0);
  CHECK(r.payload["count"] == 2);
  CHECK(r.payload["ed_degree_expected"] == 2);

  TempFile rect("cli_rect.json", "[[3, 0, 0], [0, 1, 0]]");
  r = run({"critical", "enumerate", "singular", "--data", rect.path, "--sigma", "5,2",
           "--format", "json"});
  REQUIRE(r.exit_code == 0);
  CHECK(r.payload["count"] == 8);

  r = run({"nearest", "singular", "--data", rect.path, "--sigma", "5,2", "--format", "json"});
  REQUIRE(r.exit_code == 0);
  CHECK(r.payload["matrix"][0][0].get<double>() == Catch::Approx(5).margin(1e-10));

  // numeric failures exit 3: colliding eigenvalues
  TempFile degen("cli_degen.json", "[[1, 0], [0, 1]]");
  r = run({"critical", "enumerate", "spectrum", "--data", degen.path, "--lambda", "5,6"});
  CHECK(r.exit_code == 3);

  // malformed matrix file exits 2
  TempFile bad("cli_bad.json", "[[1, \"x\"]]");
  r = run({"nearest", "spectrum", "--data", bad.path, "--lambda", "1"});
  CHECK(r.exit_code == 2);
}

TEST_CASE("identical invocations yield byte-identical JSON output") {
  TempFile rep("cli_repeat_rep.json");
  REQUIRE(run({"catalog", "export", "sl2-quartics", "--out", rep.path}).exit_code == 0);
  std::vector<std::string> argv = {"polarity", "test", rep.path, "--seed", "99",
                                   "--format", "json"};
  RunResult a = run(argv);
  RunResult b = run(argv);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("text format prints key-value lines") {
  RunResult r = run({"eddeg", "adjoint", "--n", "3"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ed_degree: 6") != std::string::npos);
}
