#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "spherelp/bounds.hpp"
#include "spherelp/serialize.hpp"

using namespace spherelp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

Json json_of(const Result& r) { return Json::parse(r.out); }

}  // namespace

TEST_CASE("ulb command") {
  const Result r = run_cli({"ulb", "--n", "3", "--capacity", "31.9565", "--potential", "riesz:1"});
  REQUIRE(r.code == 0);
  const Json j = json_of(r);
  CHECK(std::abs(j["value"].get<double>() - 0.804786) < 1e-5);
  CHECK(j["value"].get<double>() == round_significant(ulb(3, 31.9565, Potential::riesz(1.0)).value));
}

TEST_CASE("uub command on a built-in code") {
  const Result r = run_cli({"uub", "--n", "3", "--config", "pentakis", "--potential", "riesz:1"});
  REQUIRE(r.code == 0);
  const Json j = json_of(r);
  CHECK(std::abs(j["value"].get<double>() - 0.8234054) < 1e-6);
  CHECK(std::abs(j["lambda_star"].get<double>() - 7.47994) < 1e-4);
}

TEST_CASE("usage errors") {
  const Result r = run_cli({"ulb", "--n", "3", "--capacity", "1.5"});
  CHECK(r.code == 1);
  CHECK(r.err.find("capacity must exceed 2") != std::string::npos);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"bogus"}).code == 1);
  CHECK(run_cli({"ulb", "--capacity", "10"}).code == 1);
  CHECK(run_cli({"ulb", "--n", "3", "--capacity", "10", "--config", "pentakis"}).code == 1);
  CHECK(run_cli({"test-functions", "--n", "3", "--capacity", "31.9565", "--jmax", "0"}).code == 1);
  CHECK(run_cli({"ulb", "--n", "3", "--capacity", "10", "--potential", "coulomb"}).code == 1);
  CHECK(run_cli({"ulb", "--n", "3", "--capacity", "10", "--format", "xml"}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("energy and design-check") {
  const Result e = run_cli({"energy", "--config", "pentakis", "--potential", "riesz:1"});
  REQUIRE(e.code == 0);
  CHECK(std::abs(json_of(e)["value"].get<double>() - 0.8050318) < 1e-6);
  const Result d5 = run_cli({"design-check", "--config", "cube-cross:5"});
  REQUIRE(d5.code == 0);
  CHECK(json_of(d5)["strength"] == 5);
  CHECK(json_of(run_cli({"design-check", "--config", "pentakis"}))["strength"] == 9);
}

TEST_CASE("malformed code files") {
  const std::string path = "test_cli_bad_code.json";
  {
    std::ofstream f(path);
    f << R"({"n": 2, "points": [[1, 0], [0, 1]], "weights": [0.5, 0.7]})";
  }
  const Result r = run_cli({"energy", "--weights-file", path, "--potential", "riesz:1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("sum to 1") != std::string::npos);
  {
    std::ofstream f(path);
    f << R"({"n": 2, "points": [[1, 0.5], [0, 1]], "weights": [0.5, 0.5]})";
  }
  CHECK(run_cli({"energy", "--weights-file", path}).code == 1);
  std::remove(path.c_str());
}

TEST_CASE("code file input matches the built-in configuration") {
  const std::string path = "test_cli_code.json";
  {
    std::ofstream f(path);
    f << code_to_json(build_config("pentakis")).dump();
  }
  const Result a = run_cli({"ulb", "--weights-file", path, "--potential", "riesz:1"});
  const Result b = run_cli({"ulb", "--config", "pentakis", "--potential", "riesz:1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::remove(path.c_str());
}

TEST_CASE("test-functions command") {
  const Result r = run_cli({"test-functions", "--n", "3", "--capacity", "31.9565", "--jmax", "27"});
  REQUIRE(r.code == 0);
  const Json j = json_of(r);
  CHECK(j["values"].size() == 27);
  for (int i = 0; i < 9; ++i) CHECK(std::abs(j["values"][static_cast<std::size_t>(i)]["q"].get<double>()) < 1e-9);
  const Json d = json_of(run_cli({"test-functions", "--n", "3", "--capacity", "31.9565"}));
  CHECK(d["values"].size() == 27);
}

TEST_CASE("design commands") {
  const Result u = run_cli({"design-uub", "--config", "pentakis", "--tau", "9", "--potential", "riesz:1"});
  REQUIRE(u.code == 0);
  CHECK(std::abs(json_of(u)["value"].get<double>() - 0.805816) < 1e-6);
  const Result l = run_cli({"design-ulb", "--n", "3", "--capacity", "31.9565", "--tau", "7"});
  CHECK(l.code == 1);
  const Result ok = run_cli({"design-ulb", "--n", "3", "--capacity", "31.9565", "--tau", "9", "--potential", "fejes-toth"});
  CHECK(ok.code == 0);
}

TEST_CASE("output formats") {
  const Result csv = run_cli({"ulb", "--n", "3", "--capacity", "31.9565", "--format", "csv"});
  CHECK(csv.out.rfind("i,alpha_i,rho_i\n", 0) == 0);
  const Result text = run_cli({"uub", "--n", "3", "--capacity", "31.9565", "--s", "0.79", "--format", "text"});
  CHECK(text.out.find("lambda*") != std::string::npos);
  const Result a = run_cli({"uub", "--n", "4", "--capacity", "24", "--s", "0.5", "--potential", "newton"});
  const Result b = run_cli({"uub", "--n", "4", "--capacity", "24", "--s", "0.5", "--potential", "newton"});
  CHECK(a.out == b.out);
}

TEST_CASE("m-override and reproduce") {
  const Result r = run_cli({"uub", "--config", "cube-cross:3", "--m-override", "5"});
  REQUIRE(r.code == 0);
  CHECK(json_of(r)["m"] == 5);
  CHECK(run_cli({"ulb", "--n", "3", "--capacity", "14", "--m-override", "5"}).code == 1);
  CHECK(run_cli({"reproduce", "--table", "1"}).code == 0);
  const Result j = run_cli({"reproduce", "--table", "1", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(json_of(j).size() == 1);
  const Result mis = run_cli({"reproduce", "--table", "2"});
  CHECK(mis.code == 3);
  CHECK(mis.err.find("outside tolerance") != std::string::npos);
  CHECK(run_cli({"reproduce", "--table", "x"}).code == 1);
}

TEST_CASE("infeasible bounds exit with 2") {
  const Result r = run_cli({"uub", "--n", "3", "--capacity", "31.9565", "--s", "0.9", "--m-override", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("levenshtein_positive") != std::string::npos);
  CHECK(json_of(r)["feasible"] == false);
}

TEST_CASE("binary smoke test") {
  const std::string cmd = std::string(SPHERE_LP_BINARY) + " ulb --n 3 --capacity 31.9565 --potential riesz:1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 512> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) out += buf.data();
  const int status = pclose(pipe);
  CHECK(status == 0);
  CHECK(std::abs(Json::parse(out)["value"].get<double>() - 0.804786) < 1e-5);
}
