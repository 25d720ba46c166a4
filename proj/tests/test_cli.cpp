#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + MES_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string("\"") + MES_TEST_DATA_DIR + "/" + name + "\""; }

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / (std::string("mes_cli_") + name)).string();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("estimate").code == 2);
  CHECK(run("simulate --model example3").code == 2);
  CHECK(run("estimate " + data("knmi_like.csv") + " --x-col rain_cabauw --y-col rain_rotterdam --p 0").code == 2);
  CHECK(run("estimate " + data("nope.csv") + " --x-col a --y-col b --p 0.001").code == 3);
  CHECK(run("estimate " + data("five_rows.csv") + " --x-col a --y-col q --p 0.001").code == 3);
  CHECK(run("estimate " + data("headers_only.csv") + " --x-col x --y-col y --p 0.001").code == 3);
  CHECK(run("--help").code == 0);
}

TEST_CASE("estimate prints the reference value and writes a JSON document") {
  const auto out = temp_path("estimate.json");
  const auto r = run("estimate " + data("knmi_like.csv") +
                     " --x-col rain_cabauw --y-col rain_rotterdam --k 50 --p 5.479452054794521e-05 --out \"" +
                     out + "\"");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("theta_p\t61.37446181") != std::string::npos);
  std::ifstream in(out);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["command"] == "estimate");
  CHECK(doc["data"]["n"] == 2937);
  CHECK(doc["data"]["rows_dropped"] == 63);
  CHECK(doc["estimate"]["theta_p"].get<double>() == doctest::Approx(61.374461814613525).epsilon(1e-10));
  std::filesystem::remove(out);
}

TEST_CASE("return-level and scan") {
  const auto r = run("return-level " + data("knmi_like.csv") + " --x-col 2 --y-col 3 --M 50 --M 100");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("61.37446181") != std::string::npos);
  CHECK(r.out.find("76.01234301") != std::string::npos);

  const auto s = run("scan " + data("knmi_like.csv") +
                     " --x-col rain_cabauw --y-col rain_rotterdam --target gamma1 --k-min 200 --k-max 200");
  REQUIRE(s.code == 0);
  CHECK(s.out.find("200\t0.4957790574") != std::string::npos);
  CHECK(run("scan " + data("knmi_like.csv") + " --x-col 2 --y-col 3 --target theta_p").code == 2);
}

TEST_CASE("simulate output is reproducible") {
  const std::string args = "simulate --n 1000 --replicates 5 --k 50 --k1 100 --k2 100 --seed 4";
  const auto a = run(args + " --threads 1");
  const auto b = run(args + " --threads 3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("theta_emp") != std::string::npos);
}

TEST_CASE("oracle") {
  const auto r = run("oracle --model example1 --p 0.002");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("3.62523175") != std::string::npos);
}
