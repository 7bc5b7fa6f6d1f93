#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "emm/json_io.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(EMM_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("emm_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("info k4").code == 0);
  CHECK(run("zemm k4").code == 0);
  CHECK(run("zemm k4").out.find("A3") != std::string::npos);
  CHECK(run("zemm k7").code == 3);
  CHECK(run("torelli fig1_genus9 --fan cent").code == 3);
  CHECK(run("torelli fig1_genus9 --fan perf").code == 0);
  CHECK(run("torelli fig1_genus9 --fan vor").code == 0);
  CHECK(run("--max-nodes 10 zemm fig1_genus9").code == 4);
  CHECK(run("qemm petersen").code == 0);
  CHECK(run("corpus").code == 0);
  CHECK(run("zemm no_such_graph").code == 2);
  CHECK(run("torelli k4 --fan other").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("edge-list input") {
  const std::string path = temp_file("square.txt", "# square with a diagonal\n0 1\n1 2\n2 3\n3 0\n0 2\n");
  const Run r = run("--json info " + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("\"genus\": 2") != std::string::npos);
  CHECK(run("info " + temp_file("bad.txt", "0 1 2 3 4 extra\nnot an edge\n")).code == 2);
}

TEST_CASE("certificates round-trip through verify") {
  for (const char* g : {"theta", "k5", "petersen", "w5"}) {
    CAPTURE(g);
    const Run q = run(std::string("--json qemm ") + g);
    REQUIRE(q.code == 0);
    CHECK(run(std::string("verify ") + g + " " + temp_file("q.json", q.out) + " --q --strong").code == 0);
    const Run z = run(std::string("--json zemm ") + g);
    REQUIRE(z.code == 0);
    CHECK(run(std::string("verify ") + g + " " + temp_file("z.json", z.out) + " --z").code == 0);
    const Run t = run(std::string("--json torelli ") + g + " --fan cent");
    CHECK(run(std::string("verify ") + g + " " + temp_file("t.json", t.out) + " --z").code == 0);
  }
  CHECK(run("verify theta " + temp_file("id.json", "[[1,0],[0,1]]") + " --z").code == 1);
  CHECK(run("verify theta " + temp_file("garbage.json", "{not json")).code == 2);
  CHECK(run("verify theta " + temp_file("small.json", "[[1]]")).code == 2);
}

TEST_CASE("JSON output is deterministic") {
  for (const char* args : {"--json qemm fig1_genus9", "--json zemm petersen", "--json torelli k33 --fan vor"})
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("rationals and forms in JSON") {
  using namespace emm;
  CHECK(to_json(make_rational(-6, 4)) == "-3/2");
  CHECK(to_json(Rational(2)) == "2");
  CHECK(rational_from_json(Json("4/6")) == make_rational(2, 3));
  CHECK(rational_from_json(Json(5)) == 5);
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_json(Json("x")), std::invalid_argument);
  const QuadForm q = form_from_json(Json::parse(R"({"gram": [["1", "-1/2"], ["-1/2", 1]]})"));
  CHECK(q(0, 1) == make_rational(-1, 2));
  CHECK(form_from_json(to_json(q)).gram() == q.gram());
  CHECK_THROWS_AS(form_from_json(Json::parse(R"([["1", "1/2"], ["0", "1"]])")), std::invalid_argument);
  CHECK_THROWS_AS(form_from_json(Json::parse(R"([["1", "1/2"]])")), std::invalid_argument);
}
