#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbcfb/montecarlo.hpp"
#include "gbcfb/regions.hpp"

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(GBCFB_CLI_PATH) + " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

const std::string kNoFb =
    "--sigma1-sq 1 --sigma2-sq 4 --sigma-fb1-sq inf --sigma-fb2-sq inf "
    "--power 1";

} // namespace

TEST_CASE("classify emits stable alphabetical JSON") {
  const RunResult r = run_cli("classify " + kNoFb);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"margin\":-3.0,\"verdict\":\"unchanged\"}\n");
}

TEST_CASE("classify accepts a config file with flag overrides") {
  const std::string path = "/tmp/gbcfb_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"sigma1_sq":1,"sigma2_sq":4,"sigma_fb1_sq":"inf",)"
        << R"("sigma_fb2_sq":"inf","power":1})";
  }
  const RunResult base = run_cli("classify --config " + path);
  CHECK(base.exit_code == 0);
  CHECK(base.out.find("\"unchanged\"") != std::string::npos);

  // Override the weak receiver's feedback to sit below the threshold.
  const RunResult over =
      run_cli("classify --config " + path + " --sigma-fb2-sq 1.0");
  CHECK(over.exit_code == 0);
  CHECK(over.out.find("\"enlarged\"") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("boundary CSV has the pinned header and round-trippable values") {
  const RunResult r = run_cli(
      "boundary --kind nofb --samples 101 --sigma1-sq 1 --sigma2-sq 4 "
      "--sigma-fb1-sq inf --sigma-fb2-sq inf --power 3");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 102);
  CHECK(lines[0] == "theta,r1_bits,r2_bits");

  // Row at theta = 0.5 parses back to the exact library doubles.
  const auto mid = lines_of(r.out)[51];
  double theta, r1, r2;
  REQUIRE(std::sscanf(mid.c_str(), "%lf,%lf,%lf", &theta, &r1, &r2) == 3);
  CHECK(theta == 0.5);
  const gbcfb::BoundarySample expect =
      gbcfb::nofb_point({1, 4, kInf, kInf, 3}, 0.5);
  CHECK(r1 == expect.rates.r1);
  CHECK(r2 == expect.rates.r2);
}

TEST_CASE("scheme JSON carries the derived quantities") {
  const RunResult r = run_cli(
      "scheme --sigma1-sq 1 --sigma2-sq 1 --sigma-fb1-sq 1 --sigma-fb2-sq inf "
      "--power 1 --theta-prime 0.5 --gamma1 -0.2");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("eff_var1").get<double>() == doctest::Approx(1.84).epsilon(1e-14));
  CHECK(j.at("eff_var2").get<double>() == doctest::Approx(2.04).epsilon(1e-14));
  CHECK(j.at("hat_sigma1_sq").get<double>() == 0.5);
  CHECK(j.at("hat_sigma2_sq").get<double>() == 0.0);
  CHECK(j.at("excess_rate").get<double>() > 0.0);
  CHECK(j.at("r1_bits").get<double>() ==
        doctest::Approx(0.26535013616603587).epsilon(1e-12));
}

TEST_CASE("certify-lowpower and search JSON payloads") {
  const RunResult cert = run_cli(
      "certify-lowpower --sigma1-sq 1 --sigma2-sq 2 --sigma-fb1-sq 1 "
      "--sigma-fb2-sq 2 --power 1");
  CHECK(cert.exit_code == 0);
  const json cj = json::parse(cert.out);
  CHECK(cj.at("feasible").get<bool>());
  CHECK(cj.at("g_at_xstar").get<double>() ==
        doctest::Approx(-0.29289321881345254).epsilon(1e-12));

  const RunResult notfound = run_cli("search " + kNoFb);
  CHECK(notfound.exit_code == 0);
  const json nj = json::parse(notfound.out);
  CHECK(nj.at("found").get<bool>() == false);
  CHECK(nj.contains("best_excess"));

  const RunResult found = run_cli(
      "search --sigma1-sq 1 --sigma2-sq 1 --sigma-fb1-sq 1 --sigma-fb2-sq inf "
      "--power 1");
  CHECK(found.exit_code == 0);
  const json fj = json::parse(found.out);
  CHECK(fj.at("found").get<bool>());
  CHECK(fj.at("excess").get<double>() > 1e-4);
  CHECK(fj.at("scheme").contains("gamma1"));
}

TEST_CASE("simulate echoes the seed and is reproducible") {
  const std::string cmd =
      "simulate --blocks 20000 --seed 42 --theta-prime 0.5 --gamma1 -0.2 "
      "--sigma1-sq 1 --sigma2-sq 1 --sigma-fb1-sq 1 --sigma-fb2-sq inf "
      "--power 1";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j.at("seed").get<std::uint64_t>() == 42);
  CHECK(j.at("n_blocks").get<std::uint64_t>() == 20000);

  // The report matches an in-process run bit for bit.
  const gbcfb::SimReport rep = gbcfb::simulate(
      {1, 1, 1, kInf, 1}, {0.5, -0.2, 0}, 20000, 42);
  CHECK(j.at("emp_var_s1").get<double>() == rep.emp_var_s1);
  CHECK(j.at("emp_power_even").get<double>() == rep.emp_power_even);
}

TEST_CASE("sweep CSV covers the regime plane") {
  const RunResult r = run_cli("sweep --x-max 1 --y-max 1 --resolution 2");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "x,y,verdict,margin");
  CHECK(lines[1] == "0,0,unchanged,0");
  CHECK(lines[2] == "1,0,unchanged,-inf");
  CHECK(lines[3] == "0,1,unchanged,-inf");
  CHECK(lines[4] == "1,1,enlarged,1");
}

TEST_CASE("csv format flattens scalar payloads") {
  const RunResult r = run_cli("classify " + kNoFb + " --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "margin,verdict\n-3,unchanged\n");

  const RunResult w = run_cli(
      "search --sigma1-sq 1 --sigma2-sq 1 --sigma-fb1-sq 1 --sigma-fb2-sq inf "
      "--power 1 --format csv");
  CHECK(w.exit_code == 0);
  const auto lines = lines_of(w.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].find("scheme.gamma1") != std::string::npos);
  CHECK(lines[0].find("rates.r1_bits") != std::string::npos);
}

TEST_CASE("--output writes to a file") {
  const std::string path = "/tmp/gbcfb_test_out.json";
  const RunResult r = run_cli("classify " + kNoFb + " --output " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  CHECK(contents == "{\"margin\":-3.0,\"verdict\":\"unchanged\"}\n");
  std::remove(path.c_str());
}

TEST_CASE("argument errors exit with status 2") {
  CHECK(run_cli("classify --sigma1-sq -1 --sigma2-sq 4 --sigma-fb1-sq inf "
                "--sigma-fb2-sq inf --power 1")
            .exit_code == 2);
  CHECK(run_cli("classify --sigma1-sq nope --sigma2-sq 4 --sigma-fb1-sq inf "
                "--sigma-fb2-sq inf --power 1")
            .exit_code == 2);
  CHECK(run_cli("classify").exit_code == 2); // missing channel flags
  CHECK(run_cli("simulate " + kNoFb).exit_code == 2); // missing --seed
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("").exit_code == 2); // a subcommand is required
  CHECK(run_cli("boundary --samples 1 " + kNoFb).exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
