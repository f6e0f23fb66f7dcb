#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "etaparity/cli.hpp"

using namespace etaparity;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"etaparity"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("verify exit codes") {
  const auto thm4 = run({"verify", "--filter", "thm4/*"});
  CHECK(thm4.code == kAllPass);
  CHECK(contains(thm4.out, "PASS thm4/b11/B28"));
  CHECK(contains(thm4.out, "5/5 claims pass at N=100000"));

  CHECK(run({"verify", "--filter", "thm1/*", "--terms", "100000"}).code == kAllPass);
  CHECK(run({"verify", "--filter", "nonexistent"}).code == kUsage);
  CHECK(run({"verify", "--terms", "999"}).code == kUsage);
  CHECK(run({"verify", "--format", "xml"}).code == kUsage);
  CHECK(run({}).code == kUsage);
  CHECK(run({"frobnicate"}).code == kUsage);
}

TEST_CASE("verify reports mismatches with exit code 1") {
  const char* path = "cli_test_bad_catalog.txt";
  {
    std::ofstream f(path);
    f << "# one true claim, one false one\n"
      << "good | f40 / f1 | 25n+9 | 0 | EVEN | - | - | test\n"
      << "bad | f40 / f1 | 25n+8 | 0 | EVEN | - | - | test\n";
  }
  const auto r = run({"verify", "--catalog", path, "--terms", "10000"});
  CHECK(r.code == kMismatch);
  CHECK(contains(r.out, "PASS good"));
  CHECK(contains(r.out, "FAIL bad"));
  CHECK(contains(r.out, "1/2 claims pass"));

  CHECK(run({"verify", "--catalog", path, "--filter", "good", "--terms", "10000"}).code ==
        kAllPass);
  std::remove(path);

  CHECK(run({"verify", "--catalog", "/nonexistent/catalog.txt"}).code == kUsage);
}

TEST_CASE("structured verify output is deterministic") {
  const auto a = run({"verify", "--filter", "thm2/*", "--format", "structured", "--threads", "1"});
  const auto b = run({"verify", "--filter", "thm2/*", "--format", "structured", "--threads", "1"});
  const auto c = run({"verify", "--filter", "thm2/*", "--format", "structured", "--threads", "3"});
  CHECK(a.code == kAllPass);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(contains(a.out, R"({"name":"thm2/b50/B11","checked":)"));
  CHECK(contains(a.out, R"({"total":36,"passed":36,"failed":0,"truncation":100000})"));
  CHECK_FALSE(contains(a.out, "millis"));
  CHECK(contains(run({"verify", "--filter", "thm6/*", "--format", "structured", "--timing"}).out,
                 "\"millis\":"));
}

TEST_CASE("--out writes to a file") {
  const char* path = "cli_test_out.txt";
  const auto r = run({"verify", "--filter", "thm6/*", "--out", path});
  CHECK(r.code == kAllPass);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(contains(ss.str(), "PASS thm6/b40/B9"));
  std::remove(path);
}

TEST_CASE("b8 command") {
  const auto r = run({"b8", "12"});
  CHECK(r.code == kAllPass);
  CHECK(contains(r.out, "b8(12) even"));
  CHECK(contains(r.out, "295 = 5 * 59"));

  const auto range = run({"b8-oracle", "0..2"});
  CHECK(contains(range.out, "b8(0) odd"));
  CHECK(contains(range.out, "b8(1) odd"));
  CHECK(contains(range.out, "b8(2) even"));

  CHECK(run({"b8", "x12"}).code == kUsage);
  CHECK(run({"b8", "5..2"}).code == kUsage);
}

TEST_CASE("residues command") {
  const auto r = run({"residues", "8", "13"});
  CHECK(r.code == kAllPass);
  CHECK(contains(r.out, "0,1,3,4,5,7,8\n"));

  const auto form = run({"residues", "--form", "1 + T + 4T", "45"});
  CHECK(form.code == kAllPass);
  CHECK(contains(form.out, "missing: 0,3,9,12,18,21,27,30,36,39"));

  CHECK(run({"residues", "--form", "1 + X", "45"}).code == kUsage);
  CHECK(run({"residues", "8"}).code == kUsage);
}

TEST_CASE("rk-fit command") {
  const auto r = run({"rk-fit", "25", "1"});
  CHECK(r.code == kAllPass);
  CHECK(contains(r.out, "pattern {(1,0),(1,1),(5,0)}"));
  CHECK(run({"rk-fit", "9", "1"}).code == kUsage);
  CHECK(run({"rk-fit", "4", "1"}).code == kUsage);
}

TEST_CASE("density and search commands") {
  const auto csv = run({"density", "f10 / f1", "-A", "7", "-B", "3", "--terms", "10000",
                        "--windows", "4", "--format", "csv"});
  CHECK(csv.code == kAllPass);
  CHECK(csv.out.rfind("window_start,window_end,odd_count,density\n", 0) == 0);

  const auto s = run({"search-even", "f40 / f1", "--amax", "25"});
  CHECK(s.code == kAllPass);
  CHECK(contains(s.out, "25n+9"));
  CHECK(contains(s.out, "25n+19"));

  const auto bad = run({"density", "f10 / f0"});
  CHECK(bad.code == kUsage);
  CHECK(contains(bad.err, "position 8"));
  CHECK(run({"search-even", "f1", "--amax", "1"}).code == kUsage);
}

TEST_CASE("catalog command dumps the claim file") {
  const auto r = run({"catalog"});
  CHECK(r.code == kAllPass);
  CHECK(contains(r.out, "thm6/b40/B9"));
  CHECK(contains(r.out, "rk/a29"));
}
