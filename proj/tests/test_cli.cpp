#include "ckh/io.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace ckh;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(CKH_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string data(const std::string& rel) { return std::string(CKH_DATA_DIR) + "/" + rel; }

std::filesystem::path scratch(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("ckh-cli-test-" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("algebra audit") {
  auto r = run("algebra n=1 --audit");
  CHECK(r.status == 0);
  CHECK(r.out.find("idempotents: 2\n") != std::string::npos);
  CHECK(r.out.find("generators: 2\n") != std::string::npos);
  CHECK(r.out.find("(d = 0)") != std::string::npos);
  CHECK(r.out.find("(0,-1) used; alternative reading (0,-1/2)") != std::string::npos);
  CHECK(r.out.find("consistency: ok") != std::string::npos);
}

TEST_CASE("pairing example reproduces the left trefoil table") {
  auto r = run("pair left=" + data("tangles/unknot-half.tangle") + " right=" + data("tangles/trefoil.tangle") +
               " --simplify --homology --against-oracle");
  CHECK(r.status == 0);
  auto got = homology_from_json(json::parse(r.out));
  auto want = golden_from_json(read_json_file(data("golden/trefoil-left.json")));
  CHECK(got == want.table);
}

TEST_CASE("homology of a diagram and of a dumped complex agree") {
  auto d = scratch("complex");
  auto box = d / "box.json";
  CHECK(run("pair --left " + data("tangles/unknot-half.tangle") + " --right " + data("tangles/trefoil.tangle") + " -o " +
            box.string())
            .status == 0);
  auto a = run("homology " + box.string());
  auto b = run("homology " + data("links/06-trefoil-left.link"));
  auto c = run("oracle --homology " + data("links/06-trefoil-left.link"));
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(b.out == c.out);
}

TEST_CASE("artifacts are byte-identical across runs") {
  auto d = scratch("determinism");
  for (const char* cmd : {"type-a --simplify ", "type-d --simplify "}) {
    std::string file = std::string(cmd).rfind("type-a", 0) == 0 ? data("tangles/hopf.tangle") : data("tangles/trefoil.tangle");
    auto x = run(cmd + file), y = run(cmd + file);
    CHECK(x.status == 0);
    CHECK(!x.out.empty());
    CHECK(x.out == y.out);
    CHECK(json::parse(x.out).contains("reduction_log"));
  }
  CHECK(run("algebra n=2").out == run("algebra -n 2").out);
}

TEST_CASE("exit codes") {
  auto d = scratch("exit");
  write(d / "bad.tangle", "inside n=1: cap(2)\n");
  CHECK(run("type-a " + (d / "bad.tangle").string()).status == 2);
  CHECK(run("type-a " + (d / "missing.tangle").string()).status == 2);
  CHECK(run("type-a " + data("tangles/trefoil.tangle")).status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("algebra n=4").status == 3);
  CHECK(run("--cap 2 pair left=" + data("tangles/unknot-half.tangle") + " right=" + data("tangles/trefoil.tangle")).status == 3);

  write(d / "square.json",
        R"({"schema":"ckh.complex","version":1,"generators":[{"key":"a","h":0,"q":"0"},{"key":"b","h":1,"q":"0"},)"
        R"({"key":"c","h":2,"q":"0"}],"differential":[[0,1,1],[1,2,1]]})");
  CHECK(run("homology " + (d / "square.json").string()).status == 4);

  // endpoint orientations that do not glue: pairing works, the oracle refuses
  CHECK(run("pair left=" + data("tangles/hopf.tangle") + " right=" + data("tangles/trefoil.tangle")).status == 0);
  CHECK(run("pair left=" + data("tangles/hopf.tangle") + " right=" + data("tangles/trefoil.tangle") + " --against-oracle")
            .status == 5);
}

TEST_CASE("verify on a small directory and against a wrong golden table") {
  auto d = scratch("verify");
  std::filesystem::create_directories(d / "links");
  std::filesystem::create_directories(d / "golden");
  std::filesystem::copy_file(data("links/04-hopf-pos.link"), d / "links/04-hopf-pos.link");
  std::filesystem::copy_file(data("golden/hopf-positive.json"), d / "golden/hopf-positive.json");
  auto ok = run("verify " + (d / "links").string() + " --golden " + (d / "golden").string() + " -o " +
                (d / "report.json").string());
  CHECK(ok.status == 0);
  auto rep = read_json_file((d / "report.json").string());
  CHECK(rep["schema"] == "ckh.verify-report");
  CHECK(rep["ok"] == true);

  auto g = read_json_file(data("golden/hopf-positive.json"));
  g["homology"]["table"][0]["free_rank"] = 2;
  write(d / "golden/hopf-positive.json", g.dump());
  CHECK(run("verify " + (d / "links").string() + " --golden " + (d / "golden").string()).status == 5);
}
