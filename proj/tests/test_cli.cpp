#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "localdt/dtseries.hpp"
#include "localdt/series_json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// binary location injected by the build
#ifndef LOCALDT_CLI_PATH
#error "LOCALDT_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// every run of this test binary works against its own throwaway cache
// directory; the child processes inherit it through the environment
const std::string& cache_dir() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/localdt-cli-test-XXXXXX";
    if (mkdtemp(tmpl) == nullptr) {
      perror("mkdtemp");
      std::abort();
    }
    setenv("LOCAL_DT_CACHE_DIR", tmpl, 1);
    return std::string(tmpl);
  }();
  return dir;
}

RunResult run(const std::string& args) {
  cache_dir();
  std::string cmd = std::string(LOCALDT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

using namespace localdt;

TEST_CASE("series: plain output matches the closed form") {
  RunResult r = run("series --surface p2 --order 1 --format plain");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1 + L^{-1/2}(L^2+L+1) t\n");
}

TEST_CASE("series: Euler specialization of the C^3 series") {
  RunResult r = run("series --surface c3 --order 2 --specialize euler");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1, -1, 3\n");
}

TEST_CASE("series: flag validation") {
  CHECK(run("series --order -1").exit_code == 2);
  CHECK(run("series --order 17").exit_code == 2);
  CHECK(run("series --surface q7").exit_code == 2);
  CHECK(run("series --format yaml").exit_code == 2);
  CHECK(run("series --bogus-flag").exit_code == 2);
  CHECK(run("").exit_code == 2);  // a subcommand is required
}

TEST_CASE("series: JSON output is byte-deterministic and round-trips") {
  RunResult a = run("series --surface fn:2 --order 4 --format json");
  RunResult b = run("series --surface fn:2 --order 4 --format json");
  RunResult c = run("series --surface fn:2 --order 4 --format json --no-cache");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  MotivicSeries parsed = series_from_json(nlohmann::json::parse(a.out));
  CHECK(parsed == hilb_series_closed(Surface::fn(2), 4));
}

TEST_CASE("punctual series verb") {
  RunResult r = run("punctual --order 2 --format json --no-cache");
  CHECK(r.exit_code == 0);
  CHECK(series_from_json(nlohmann::json::parse(r.out)) == punctual_series(2));
}

TEST_CASE("strata: report and cross-route residual") {
  RunResult plain = run("strata --surface p2 -n 2");
  CHECK(plain.exit_code == 0);
  CHECK(plain.out.find("residual: 0\n") != std::string::npos);

  RunResult zero = run("strata -n 0");
  CHECK(zero.exit_code == 0);
  CHECK(zero.out.find("total: 1\n") != std::string::npos);

  RunResult js = run("strata --surface fn:1 -n 3 --format json");
  CHECK(js.exit_code == 0);
  auto j = nlohmann::json::parse(js.out);
  CHECK(j["n"] == 3);
  CHECK(j["strata"].size() == 3);
  bool found_simple = false;
  for (const auto& rec : j["strata"])
    if (rec["gamma"] == nlohmann::json{{"1", 3}}) found_simple = true;
  CHECK(found_simple);
  CHECK(weight_from_json(j["residual"]).is_zero());
  MotivicWeight total = weight_from_json(j["total"]);
  CHECK(total == hilb_series_power(omega_class(Surface::fn(1)), 3)[3]);

  CHECK(run("strata -n 9").exit_code == 2);
}

TEST_CASE("fan: surface reports and validation") {
  RunResult p2 = run("fan --surface p2");
  CHECK(p2.exit_code == 0);
  CHECK(p2.out.find("relation basis: [1 1 1 -3]") != std::string::npos);
  CHECK(p2.out.find("self-intersections: 1 1 1") != std::string::npos);

  RunResult fn2 = run("fan --surface fn:2");
  CHECK(fn2.exit_code == 0);
  CHECK(fn2.out.find("self-intersections: 0 -2 0 2") != std::string::npos);

  RunResult js = run("fan --surface p2 --format json");
  CHECK(js.exit_code == 0);
  auto j = nlohmann::json::parse(js.out);
  CHECK(j["transitions"].size() == 3);
  CHECK(j["transitions"][0]["f"] == 1);
  CHECK(j["transitions"][0]["exponents"].size() == 3);

  std::string bad = cache_dir() + "/bad.json";
  std::ofstream(bad) << "{\"rays2d\":[[2,0],[0,1],[-1,-1]]}";
  CHECK(run("fan --file " + bad).exit_code == 2);
  std::string junk = cache_dir() + "/junk.json";
  std::ofstream(junk) << "not json";
  CHECK(run("fan --file " + junk).exit_code == 2);
  CHECK(run("fan --surface c3").exit_code == 2);
}

TEST_CASE("verify-gluing: pass, usage and failure exits") {
  RunResult ok = run("verify-gluing --f -2..2 --size 2 --trials 10");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  RunResult scalars = run("verify-gluing --f 0..0 --size 1 --trials 5");
  CHECK(scalars.exit_code == 0);

  CHECK(run("verify-gluing --f 2..1").exit_code == 2);
  CHECK(run("verify-gluing --f nonsense").exit_code == 2);

  RunResult good_poly = run("verify-gluing --poly 'tr(XYZ)-tr(YXZ)' --trials 10");
  CHECK(good_poly.exit_code == 0);
  RunResult bad_poly = run("verify-gluing --poly 'tr(XYZ)' --trials 10");
  CHECK(bad_poly.exit_code == 4);
  CHECK(run("verify-gluing --poly 'tr('").exit_code == 2);
}

TEST_CASE("verify-gluing: output is deterministic for a fixed seed") {
  RunResult a = run("verify-gluing --f -1..1 --size 3 --trials 20 --seed 5");
  RunResult b = run("verify-gluing --f -1..1 --size 3 --trials 20 --seed 5");
  RunResult c = run("verify-gluing --f -1..1 --size 3 --trials 20 --seed 5 --serial");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("euler-check verb") {
  RunResult r = run("euler-check --surface p2 --order 6");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sign convention: alternating") != std::string::npos);
  CHECK(run("euler-check --surface c3 --order 8").exit_code == 0);
  CHECK(run("euler-check --order 11").exit_code == 2);
}
