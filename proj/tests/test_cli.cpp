#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

const char* cli_path() {
  const char* p = std::getenv("QFDIV_CLI");
  REQUIRE_MESSAGE(p != nullptr,
                  "set QFDIV_CLI to the CLI binary path (ctest does)");
  return p;
}

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + (env.empty() ? "" : " ") + cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& content)
      : path_(std::filesystem::temp_directory_path() /
              ("qfdiv_cli_" + name)) {
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

const char* kGoldenPair =
    R"({"rho":[[[1.5,0],[0,0]],[[0,0],[0,0]]],"sigma":[[[1,0],[1,0]],[[1,0],[1,0]]]})";
const char* kCommutingPair =
    R"({"rho":[[[0.6,0],[0,0]],[[0,0],[0.4,0]]],"sigma":[[[0.3,0],[0,0]],[[0,0],[0.7,0]]]})";
const char* kRatioChi2 =
    R"('{"canonical":{"a":0,"b":0,"c":0,"d":0,"atoms":[[1,1]]}}')";

}  // namespace

TEST_CASE("compute reports the golden pair") {
  TempFile pair("golden.json", kGoldenPair);
  const RunResult r = run("compute " + pair.str() + " --f xlogx --which maximal");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["value"] == "inf");
  CHECK(doc["method"] == "maximal-integral");
  CHECK(doc["boundary_zero_mass"].get<double>() == doctest::Approx(2.0));
  CHECK(doc["boundary_one_mass"].get<double>() == doctest::Approx(1.5));

  const RunResult both =
      run("compute " + pair.str() + " --f " + kRatioChi2 +
          " --which standard,maximal");
  REQUIRE(both.exit_code == 0);
  const auto d2 = nlohmann::json::parse(both.out);
  CHECK(d2["standard"]["value"].get<double>() ==
        doctest::Approx(25.0 / 14.0).epsilon(1e-9));
  CHECK(d2["maximal"]["value"].get<double>() ==
        doctest::Approx(3.5).epsilon(1e-9));
  CHECK(!d2.contains("bs"));
}

TEST_CASE("output bytes are deterministic and mirror --out") {
  TempFile pair("det.json", kGoldenPair);
  const std::string cmd = "compute " + pair.str() + " --f " + kRatioChi2 +
                          " --which standard,maximal,bs";
  const RunResult a = run(cmd);
  const RunResult b = run(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  TempFile sink("sink.json", "");
  const RunResult c = run(cmd + " --out " + sink.str());
  REQUIRE(c.exit_code == 0);
  CHECK(c.out.empty());
  std::ifstream in(sink.str(), std::ios::binary);
  std::string file_bytes((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  CHECK(file_bytes == a.out);
}

TEST_CASE("compare collapses on a commuting pair") {
  TempFile pair("comm.json", kCommutingPair);
  const RunResult r = run("compare " + pair.str() + " --f xlogx --seed 11");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["commutes"] == true);
  const double standard = doc["standard"].get<double>();
  CHECK(doc["measured"].get<double>() ==
        doctest::Approx(standard).epsilon(1e-8));
  CHECK(doc["maximal"].get<double>() == doctest::Approx(standard).epsilon(1e-8));
  CHECK(doc["gap_maximal_standard"].get<double>() ==
        doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("renyi zeros out on an equal pair and validates alpha") {
  TempFile pair("equal.json",
                R"({"rho":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]],"sigma":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]})");
  const RunResult r = run("renyi " + pair.str() + " --alpha 1.5 --variant all");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["alpha"].get<double>() == 1.5);
  for (const char* v : {"standard", "sandwiched", "maximal"}) {
    CHECK(doc[v].get<double>() == doctest::Approx(0.0).epsilon(1e-10));
  }
  CHECK(run("renyi " + pair.str() + " --alpha 1").exit_code == 2);
}

TEST_CASE("sweep-eps emits a monotone csv toward the unregularized value") {
  TempFile pair("sweep.json", kGoldenPair);
  const RunResult r = run("sweep-eps " + pair.str() + " --f " + kRatioChi2 +
                          " --schedule 2^-4..2^-20 --format csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "step,parameter,value,is_infinite");
  double prev = -1.0, last = 0.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
    const auto c3 = line.rfind(',');
    const double value = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
    CHECK(value >= prev - 1e-9);
    prev = last = value;
    ++rows;
  }
  CHECK(rows == 17);
  CHECK(last == doctest::Approx(3.5).epsilon(1e-3));
}

TEST_CASE("martingale runs both chain variants") {
  TempFile pair("mart.json", kCommutingPair);
  const RunResult pin = run("martingale " + pair.str() +
                            " --f xlogx --chain '[[[0],[1]],[[0,1]]]'");
  REQUIRE(pin.exit_code == 0);
  const auto doc = nlohmann::json::parse(pin.out);
  REQUIRE(doc["rows"].size() == 2);
  // Pinching fixes an already-diagonal pair, so the sequence is constant.
  CHECK(doc["rows"][0]["value"].get<double>() ==
        doctest::Approx(doc["rows"][1]["value"].get<double>()));

  const RunResult comp =
      run("martingale " + pair.str() +
          " --f xlogx --chain '[[0],[0,1]]' --variant compression --format csv");
  REQUIRE(comp.exit_code == 0);
  CHECK(comp.out.find("step,parameter,value,is_infinite\n") == 0);
  CHECK(comp.out.find("\n0,1,") != std::string::npos);
  CHECK(comp.out.find("\n1,2,") != std::string::npos);
}

TEST_CASE("reverse-test emits the minimal test atoms") {
  TempFile pair("rt.json", kGoldenPair);
  const RunResult r = run("reverse-test " + pair.str());
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["atoms"].size() == 2);
  double nu_total = 0.0;
  for (const auto& atom : doc["atoms"]) {
    nu_total += atom["nu"].get<double>();
    CHECK(atom["D"].size() == 2);
    CHECK(atom["p"].get<double>() + atom["q"].get<double>() ==
          doctest::Approx(1.0));
  }
  CHECK(nu_total == doctest::Approx(3.5).epsilon(1e-9));
  CHECK(run("reverse-test " + pair.str() + " --format csv").exit_code == 2);
}

TEST_CASE("propcheck passes a suite and honors the seed env default") {
  const RunResult r = run("propcheck --suite P6 --trials 10 --seed 3");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("seed=3 trials=10") == 0);
  CHECK(r.out.find("P6 PASS") != std::string::npos);

  const RunResult env_seeded =
      run("propcheck --suite P6 --trials 10", "QFDIV_SEED=3");
  CHECK(env_seeded.exit_code == 0);
  CHECK(env_seeded.out == r.out);

  CHECK(run("propcheck --suite P6 --trials 5", "QFDIV_SEED=zebra").exit_code ==
        2);
  CHECK(run("propcheck --suite P99 --trials 5").exit_code == 2);
}

TEST_CASE("input errors map to exit code 2") {
  CHECK(run("compute /no/such/file.json --f xlogx").exit_code == 2);
  TempFile bad("bad.json", "{\"rho\": [[[1,0]]], \"sigma\": oops");
  CHECK(run("compute " + bad.str() + " --f xlogx").exit_code == 2);
  TempFile pair("dims.json", kCommutingPair);
  CHECK(run("compute " + pair.str() + " --f xlogx --dims 1").exit_code == 2);
  CHECK(run("compute " + pair.str() + " --f mystery").exit_code == 2);
  CHECK(run("compute " + pair.str() + " --f xlogx --which nothing").exit_code ==
        2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("compute " + pair.str() + " --no-such-flag").exit_code == 2);
  CHECK(run("sweep-eps " + pair.str() + " --f xlogx --schedule 1,2,3")
            .exit_code == 2);
  CHECK(run("martingale " + pair.str() +
            " --f xlogx --chain '[[[0]],[[0],[1]]]' --variant pinching")
            .exit_code == 2);
}
