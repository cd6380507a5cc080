#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "stirling/error.hpp"
#include "stirling/report.hpp"

using namespace stirling;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(STIRLING_CLI) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<Json> json_lines(const std::string& text) {
  std::vector<Json> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    const auto line = text.substr(start, end - start);
    if (!line.empty()) out.push_back(Json::parse(line));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("to_json keeps big values exact") {
  CHECK(to_json(BigCount(42)).dump() == "42");
  CHECK(to_json(BigCount(-7)).dump() == "-7");
  CHECK(to_json(factorial(25)).dump() == "\"15511210043330985984000000\"");
}

TEST_CASE("expected_sphere_count") {
  CHECK(expected_sphere_count(0, 3) == 0);
  CHECK(expected_sphere_count(1, 3) == 0);
  CHECK(expected_sphere_count(2, 3) == 1);
  CHECK(expected_sphere_count(4, 5) == 121);
}

TEST_CASE("verify_instance on the edge tree") {
  const auto report = verify_instance(SubtreeFamily::all_vertices(path_tree(2)), 4, VerifyOptions{});
  CHECK(report.passed);
  CHECK_FALSE(report.skipped);
  CHECK(report.f_vector == FVector{14, 24, 12});
  CHECK(report.betti.size() == 2);
  CHECK(report.betti[0] == std::vector<std::uint64_t>{1, 0, 1});
  const auto& payload = report.payload;
  CHECK(payload["status"] == "PASS");
  CHECK(payload["expected_spheres"] == 1);
  CHECK(payload["expected_degree"] == 2);
  for (const auto& [name, value] : payload["checks"].items()) {
    CAPTURE(name);
    CHECK((value.is_null() || value == true));
  }
}

TEST_CASE("verify_instance on a partial family") {
  const auto t = path_tree(3);
  const auto report = verify_instance(parse_family_spec(t, "1,2"), 3, VerifyOptions{});
  CHECK(report.passed);
  CHECK(report.payload["betti"][0]["reduced"] == Json::array({0, 1}));
}

TEST_CASE("verify_instance on the empty family") {
  const auto report = verify_instance(parse_family_spec(path_tree(3), "none"), 3, VerifyOptions{});
  CHECK(report.passed);
  CHECK(report.betti[0] == std::vector<std::uint64_t>{1, 0, 0, 0});
}

TEST_CASE("instances over the cap are skipped, not failed") {
  VerifyOptions options;
  options.max_cells = 100;
  const auto report = verify_instance(SubtreeFamily::all_vertices(path_tree(4)), 6, options);
  CHECK(report.skipped);
  CHECK(report.passed);
  CHECK(report.payload["status"] == "SKIPPED");
}

TEST_CASE("count_report") {
  bool consistent = false;
  const auto j = count_report(4, 6, consistent);
  CHECK(consistent);
  CHECK(j["f_closed"] == 479);
  CHECK(j["cell_counts"] == Json::array({1560, 4320, 3240}));
  CHECK(count_report(5, 5, consistent)["euler_formula"] == 120);
}

TEST_CASE("verify_suite output does not depend on the job count") {
  SuiteRequest request;
  request.m_min = 2;
  request.m_max = 4;
  request.n_min = 0;
  request.n_max = 1;
  VerifyOptions options;
  request.jobs = 1;
  const auto serial = verify_suite(request, options);
  request.jobs = 3;
  const auto parallel = verify_suite(request, options);
  CHECK(serial.passed);
  REQUIRE(serial.instances.size() == 1 + 3 + 16 + 1 + 3 + 16);
  REQUIRE(serial.instances.size() == parallel.instances.size());
  for (std::size_t i = 0; i < serial.instances.size(); ++i)
    CHECK(serial.instances[i].payload.dump() == parallel.instances[i].payload.dump());
  REQUIRE(serial.summaries.size() == parallel.summaries.size());
  for (std::size_t i = 0; i < serial.summaries.size(); ++i) CHECK(serial.summaries[i] == parallel.summaries[i]);
}

TEST_CASE("cli count") {
  const auto r = run_cli("count 4 6");
  CHECK(r.exit_code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["f_closed"] == 479);
  CHECK(j["f_agree"] == true);
  CHECK(Json::parse(run_cli("count 2 9").out)["f_recursive"] == 1);
  const auto five = Json::parse(run_cli("count 5 5").out);
  CHECK(five["f_closed"] == 119);
  CHECK(five["euler_formula"] == 120);
  CHECK(run_cli("count 1 3").exit_code == 2);
  CHECK(run_cli("count 5 4").exit_code == 2);
}

TEST_CASE("cli betti") {
  const auto edge = run_cli("betti --tree 1-2 -n 4");
  CHECK(edge.exit_code == 0);
  const auto e = Json::parse(edge.out)["payload"];
  CHECK(e["betti"][0]["betti"] == Json::array({1, 0, 1}));
  CHECK(e["expected_spheres"] == 1);
  CHECK(e["status"] == "PASS");

  const auto star = Json::parse(run_cli("betti --tree 1-2,1-3,1-4 -n 5").out)["payload"];
  CHECK(star["betti"][1]["betti"][1] == 121);

  const auto partial = Json::parse(run_cli("betti --tree 1-2,2-3 --S 1,2 -n 3").out)["payload"];
  CHECK(partial["betti"][0]["reduced"][1] == 1);
}

TEST_CASE("cli verify is deterministic and exits 0") {
  const std::string args = "verify --m 2:4 --extra 0:1 --jobs 2";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  const auto la = json_lines(a.out), lb = json_lines(b.out);
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i].contains("payload")) {
      CHECK(la[i]["payload"].dump() == lb[i]["payload"].dump());
      CHECK(la[i]["payload"]["status"] == "PASS");
    } else {
      CHECK(la[i].dump() == lb[i].dump());
    }
  }
  const auto empty = json_lines(run_cli("verify --m 3:3 --n 3:3 --S none").out);
  CHECK(empty.front()["payload"]["betti"][0]["betti"] == Json::array({1, 0, 0, 0}));
}

TEST_CASE("cli decompose and valency") {
  CHECK(run_cli("decompose --tree 1-2 -n 4").exit_code == 0);
  const auto d = Json::parse(run_cli("decompose --tree 1-2,2-3 -n 4").out);
  CHECK(d["decomposition"]["ok"] == true);
  CHECK(run_cli("decompose --tree 1-2,2-3 -n 3").exit_code == 2);

  const auto v = Json::parse(run_cli("valency --tree 1-2,2-3,2-4 -n 5").out);
  CHECK(v["histogram"] == Json{{"2", 180}, {"6", 60}});
  CHECK(Json::parse(run_cli("valency --tree 1-2 -n 3").out)["histogram"] == Json{{"2", 6}});
}

TEST_CASE("cli trees") {
  const auto r = run_cli("trees 4");
  CHECK(r.exit_code == 0);
  CHECK(json_lines(r.out).size() == 16);
  CHECK(run_cli("trees 9").exit_code == 2);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("betti --tree 1-2,2-3,3-1 -n 3").exit_code == 2);
  CHECK(run_cli("betti --tree 1-2,2-3 --S '{1,3}' -n 3").exit_code == 2);
  CHECK(run_cli("betti --tree 1-2,2-3,3-4 -n 6 --max-cells 100").exit_code == 1);
  CHECK(run_cli("betti --tree-file /nonexistent/tree.txt -n 3").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
