#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "lcmb/cli.hpp"

using namespace lcmb;
using namespace lcmb::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const RunConfig& config) {
  std::ostringstream out, err;
  const int code = run_command(config, out, err);
  return {code, out.str(), err.str()};
}

RunConfig make(std::string cmd, u64 u0, u64 r) {
  RunConfig c;
  c.subcommand = std::move(cmd);
  c.u0 = u0;
  c.r = r;
  return c;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

int shell(const std::string& args) {
  const std::string cmd = std::string(LCMB_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("n_values") {
  RunConfig c;
  c.n = 5;
  CHECK(n_values(c) == std::vector<u64>{5});
  c.n.reset();
  c.n_from = 2;
  c.n_to = 10;
  c.step = 4;
  CHECK(n_values(c) == std::vector<u64>{2, 6, 10});
  c.n_to = 1;
  CHECK(n_values(c).empty());
  c.n = 3;
  CHECK_THROWS(n_values(c));
}

TEST_CASE("bounds") {
  auto c = make("bounds", 1, 2);
  c.n = 4;
  const auto r = run(c);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("L_n = 315") != std::string::npos);
  CHECK(r.out.find("binomial_printed") != std::string::npos);
  CHECK(r.out.find("all verdicts valid") != std::string::npos);

  auto bad = make("bounds", 2, 4);
  bad.n = 4;
  const auto b = run(bad);
  CHECK(b.code == kExitUsage);
  CHECK(b.err.find("gcd") != std::string::npos);

  auto json_cfg = make("bounds", 3, 4);
  json_cfg.n = 3;
  json_cfg.format = OutputFormat::json;
  const auto j = run(json_cfg);
  REQUIRE(j.code == kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["schema_version"] == kJsonSchemaVersion);
  CHECK(doc["command"] == "bounds");
  bool witness = false;
  for (const auto& row : doc["rows"]) {
    CHECK(row["lcm"] == "1155");
    if (row["variant"] == "multi_prime" && row["k"] == 0) witness = row["exact"] == "1155";
  }
  CHECK(witness);
}

TEST_CASE("scan") {
  auto c = make("scan", 1, 2);
  c.n_from = 1;
  c.n_to = 100;
  const auto r = run(c);
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 101);
  const auto header = split(ls[0]);
  CHECK(header.front() == "n");
  CHECK(header.back() == "ratio_log");
  const auto th_col = std::find(header.begin(), header.end(), "log_tan_hong_opt") - header.begin();
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto cells = split(ls[i]);
    REQUIRE(cells.size() == header.size());
    CHECK(std::stoull(cells[0]) == i);
    CHECK(std::stod(cells.back()) >= 0.0);
    CHECK(cells[th_col].empty() == (i < 12));
  }

  SUBCASE("parallel output equals serial output") {
    auto p = c;
    p.workers = 4;
    CHECK(run(p).out == r.out);
  }

  SUBCASE("empty range gives a header only") {
    auto e = c;
    e.n_from = 10;
    e.n_to = 5;
    const auto er = run(e);
    CHECK(er.code == kExitOk);
    CHECK(lines(er.out).size() == 1);
  }

  SUBCASE("json") {
    auto j = c;
    j.n_to = 5;
    j.format = OutputFormat::json;
    const auto doc = nlohmann::json::parse(run(j).out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["rows"].size() == 5);
  }
}

TEST_CASE("sharpness") {
  auto c = make("sharpness", 1, 2);
  c.n_from = 2;
  c.n_to = 12;
  c.format = OutputFormat::csv;
  const auto r = run(c);
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 12);
  const auto row4 = split(lines(r.out)[3]);
  CHECK(row4[0] == "4");
  CHECK(row4[2] == "3");   // odd part of lcm(1..4) = 12
  CHECK(row4[4] == "8");   // A = 2^{v_2(4!)}
  CHECK(row4[6] == "true");

  auto composite = make("sharpness", 1, 4);
  composite.n = 5;
  CHECK(run(composite).code == kExitUsage);
}

TEST_CASE("asympt") {
  auto c = make("asympt", 1, 4);
  c.n_from = 0;
  c.n_to = 40;
  c.step = 20;
  const auto r = run(c);
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  const auto row = split(ls[2]);
  CHECK(row[0] == "20");
  CHECK(row[3] == "true");
  CHECK(row[5].empty());  // step4 needs prime r
  CHECK(split(ls[1])[7].empty());  // gap undefined at n = 0

  auto capped = make("asympt", 1, 2);
  capped.n = 1000;
  capped.sieve_cap = 100;
  CHECK(run(capped).code == kExitUsage);
}

TEST_CASE("compare") {
  auto c = make("compare", 1, 2);
  c.n = 1000;
  c.format = OutputFormat::csv;
  const auto r = run(c);
  REQUIRE(r.code == kExitOk);
  const auto row = split(lines(r.out)[1]);
  CHECK(row[2] == "1/2");
  CHECK(row[3] == "true");
  CHECK(row[7] == "true");
}

TEST_CASE("verify with an injected fault exits 1") {
  RunConfig c;
  c.subcommand = "verify";
  c.quick = true;
  std::ostringstream out, err;
  const int code = cmd_verify(c, out, err, [](const Progression& p, u64 n, u64 k) {
    return bound_multi_prime(p, n, k).scaled(3);
  });
  CHECK(code == kExitFailure);
  CHECK(out.str().find("FAIL bound_validity") != std::string::npos);
}

TEST_CASE("binary exit codes") {
  CHECK(shell("bounds --u0 1 --r 2 --n 4") == 0);
  CHECK(shell("bounds --u0 2 --r 4 --n 4") == 2);
  CHECK(shell("bounds --u0 1 --r 2") == 2);
  CHECK(shell("scan --u0 1 --r 2 --n-from 1 --n-to 5 --format xml") == 2);
  CHECK(shell("frobnicate") == 2);
  CHECK(shell("bounds --u0 1 --r 2 --n 4 --variant nope") == 2);
  CHECK(shell("compare --u0 1 --r 3 --n 50 --format json") == 0);
}

TEST_CASE("binary verify") {
  CHECK(shell("verify --quick") == 0);
  CHECK(shell("verify --quick --format json") == 0);
}
