#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cubelab/harness.hpp"
#include "cubelab/sample.hpp"
#include "doctest.h"

using namespace cubelab;

namespace {

const char* kBin = CUBELAB_BIN_PATH;

int run(const std::string& args) {
  const std::string cmd = std::string(kBin) + " " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cli: schema subcommand prints the embedded schema") {
  TempFile out("/tmp/cubelab_cli_schema.json");
  CHECK(run("schema > " + out.path + " 2>/dev/null") == 0);
  CHECK(slurp(out.path) == result_schema_json());
}

TEST_CASE("cli: version exits cleanly, bad invocations exit 2") {
  CHECK(run("--version > /dev/null 2>&1") == 0);
  CHECK(run("> /dev/null 2>&1") == 2);             // --config missing
  CHECK(run("--bogus-flag > /dev/null 2>&1") == 2);
  CHECK(run("--config /nonexistent_zzz.json > /dev/null 2>&1") == 2);
  CHECK(run("sample --d 4 --p 0.5 > /dev/null 2>&1") == 2);  // --out required
  TempFile bad("/tmp/cubelab_cli_bad.json");
  spit(bad.path, "{not json");
  CHECK(run("--config " + bad.path + " > /dev/null 2>&1") == 2);
  TempFile unknown("/tmp/cubelab_cli_unknown.json");
  spit(unknown.path, R"({"kind":"cycles","d":4,"p":0.5,"wat":1})");
  CHECK(run("--config " + unknown.path + " > /dev/null 2>&1") == 2);
}

TEST_CASE("cli: runtime failures exit 3") {
  // parses fine, but an empty sample cannot host the alpha window
  TempFile cfg("/tmp/cubelab_cli_doomed.json");
  spit(cfg.path,
       R"({"kind":"expansion","d":4,"p":0.0,"trials":1,"params":{"alpha":0.5}})");
  CHECK(run("--config " + cfg.path + " > /dev/null 2>&1") == 3);
}

TEST_CASE("cli: experiment run writes both formats, overrides apply") {
  TempFile cfg("/tmp/cubelab_cli_run.json");
  spit(cfg.path,
       R"({"kind":"phase_portrait","d":5,"epsilon":1.0,"trials":3,"seed":"7"})");
  TempFile csv("/tmp/cubelab_cli_run_out.csv");
  TempFile json("/tmp/cubelab_cli_run_out.json");
  const std::string base = "/tmp/cubelab_cli_run_out";
  CHECK(run("--config " + cfg.path + " --out " + base + " > /dev/null 2>&1") ==
        0);
  CHECK(slurp(csv.path).rfind("record,stat,", 0) == 0);
  CHECK_FALSE(slurp(json.path).empty());

  // format override writes only the one file
  TempFile csv2("/tmp/cubelab_cli_fmt_out.csv");
  CHECK(run("--config " + cfg.path +
            " --out /tmp/cubelab_cli_fmt_out --format csv > /dev/null 2>&1") ==
        0);
  std::ifstream no_json("/tmp/cubelab_cli_fmt_out.json");
  CHECK_FALSE(no_json.good());

  // a different master seed must change the rows
  TempFile csv3("/tmp/cubelab_cli_seed_out.csv");
  TempFile json3("/tmp/cubelab_cli_seed_out.json");
  CHECK(run("--config " + cfg.path +
            " --out /tmp/cubelab_cli_seed_out --seed 8 > /dev/null 2>&1") == 0);
  CHECK(slurp(csv3.path) != slurp(csv.path));
}

TEST_CASE("cli: thread count never changes the bytes") {
  TempFile cfg("/tmp/cubelab_cli_threads.json");
  spit(cfg.path,
       R"({"kind":"expansion","d":6,"epsilon":[0.5,1.0],"trials":4,"seed":"99"})");
  TempFile c1("/tmp/cubelab_cli_t1.csv"), j1("/tmp/cubelab_cli_t1.json");
  TempFile c8("/tmp/cubelab_cli_t8.csv"), j8("/tmp/cubelab_cli_t8.json");
  CHECK(run("--config " + cfg.path +
            " --out /tmp/cubelab_cli_t1 --threads 1 > /dev/null 2>&1") == 0);
  CHECK(run("--config " + cfg.path +
            " --out /tmp/cubelab_cli_t8 --threads 8 > /dev/null 2>&1") == 0);
  CHECK(slurp(c1.path) == slurp(c8.path));
  CHECK(slurp(j1.path) == slurp(j8.path));
}

TEST_CASE("cli: sample subcommand round-trips through load_sample") {
  TempFile dump("/tmp/cubelab_cli_sample.bin");
  CHECK(run("sample --d 6 --p 0.3 --seed 12345 --out " + dump.path +
            " > /dev/null 2>&1") == 0);
  auto s = load_sample(dump.path);
  CHECK(s.dim.d() == 6);
  CHECK(s.p == 0.3);
  CHECK(s.seed == 12345);
  auto direct = sample(Dimension(6), 0.3, 12345);
  CHECK(s.retained_count() == direct.retained_count());
  CHECK(run("sample --d 1 --p 0.5 --out " + dump.path +
            " > /dev/null 2>&1") == 2);
  CHECK(run("sample --d 6 --p 1.5 --out " + dump.path +
            " > /dev/null 2>&1") == 2);
}
