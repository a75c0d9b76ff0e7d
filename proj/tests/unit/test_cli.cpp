#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "anchorsr/image/io.hpp"
#include "anchorsr/image/resample.hpp"
#include "support.hpp"

using namespace anchorsr;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string output;
};

Result run(const std::string& args, const std::string& env = "ANCHORSR_THREADS=1") {
  const std::string cmd = env + " '" ANCHORSR_CLI "' " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Workspace {
  fs::path root = fs::temp_directory_path() / "anchorsr_cli_test";
  Workspace() {
    fs::remove_all(root);
    fs::create_directories(root / "train");
    fs::create_directories(root / "test");
    fs::create_directories(root / "empty");
    for (int i = 0; i < 3; ++i) write_image(root / "train" / ("t" + std::to_string(i) + ".png"), test::textured_luma(60, 60, 10 + i));
    write_image(root / "test" / "a.png", test::textured_luma(36, 33, 20));
    write_image(root / "test" / "b.png", test::textured_luma(30, 30, 21));
    write_image(root / "gray.png", Image(10, 8, ColorSpace::rgb, 128.0));
    write_image(root / "tiny.png", test::random_luma(6, 6, 3));
    std::ofstream(root / "junk.model") << "not a model";
  }
  ~Workspace() { fs::remove_all(root); }
  std::string p(const std::string& rel) const { return "'" + (root / rel).string() + "'"; }
};

const std::string kSmall = " -k 16 -n 3000 --dict-iters 3 --dict-samples 3000 --pca-samples 3000 --train-stride 2 --no-augment -q";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 1") {
  Workspace ws;
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("train -o " + ws.p("m.model")).code == 1);
  CHECK(run("train -d " + ws.p("train") + " -o " + ws.p("m.model") + " -k 0").code == 1);
  CHECK(run("eval -d " + ws.p("test") + " --ycbcr purple").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("data errors exit with 2") {
  Workspace ws;
  CHECK(run("eval -d " + ws.p("empty")).code == 2);
  CHECK(run("eval -d " + ws.p("missing")).code == 2);
  CHECK(run("sr -m " + ws.p("junk.model") + " -o " + ws.p("out") + " " + ws.p("gray.png")).code == 2);
  CHECK(run("sr -m " + ws.p("absent.model") + " -o " + ws.p("out") + " " + ws.p("gray.png")).code == 2);
  CHECK(run("train -d " + ws.p("train") + " -o " + ws.p("m.model") + " -k 1000000 -q").code == 2);
}

TEST_CASE("train, super-resolve and evaluate end to end") {
  Workspace ws;
  const Result t1 = run("train -d " + ws.p("train") + " -o " + ws.p("a.model") + kSmall);
  REQUIRE_MESSAGE(t1.code == 0, t1.output);
  const Result t2 = run("train -d " + ws.p("train") + " -o " + ws.p("b.model") + kSmall, "ANCHORSR_THREADS=2");
  REQUIRE(t2.code == 0);
  CHECK(slurp(ws.root / "a.model") == slurp(ws.root / "b.model"));
  CHECK(run("train -d " + ws.p("train") + " -o " + ws.p("c.model") + kSmall + " --seed 9").code == 0);
  CHECK(slurp(ws.root / "a.model") != slurp(ws.root / "c.model"));

  const Result sr = run("sr -m " + ws.p("a.model") + " -o " + ws.p("out") + " " + ws.p("gray.png"));
  REQUIRE_MESSAGE(sr.code == 0, sr.output);
  const Image up = read_image(ws.root / "out" / "gray.png");
  CHECK(up.width() == 30);
  CHECK(up.height() == 24);
  for (double v : up.samples()) CHECK(v == 128.0);

  const Result mismatch = run("sr -m " + ws.p("a.model") + " -s 2 -o " + ws.p("out") + " " + ws.p("gray.png"));
  CHECK(mismatch.code == 1);
  CHECK(mismatch.output.find("scale") != std::string::npos);
  CHECK(run("eval -m " + ws.p("a.model") + " -d " + ws.p("test") + " -s 4").code == 1);

  const Result fallback =
      run("sr -m " + ws.p("a.model") + " --self-sim on -o " + ws.p("out") + " " + ws.p("tiny.png"));
  CHECK(fallback.code == 0);
  CHECK(fallback.output.find("warning") != std::string::npos);

  const Result ev = run("eval -m " + ws.p("a.model") + " -d " + ws.p("test") + " --bicubic --jsonl " + ws.p("rows.jsonl"));
  REQUIRE_MESSAGE(ev.code == 0, ev.output);
  CHECK(ev.output.find("average") != std::string::npos);
  CHECK(ev.output.find("bicubic") != std::string::npos);
  const std::string rows = slurp(ws.root / "rows.jsonl");
  CHECK(rows.find("{\"name\":\"a.png\",\"psnr_db\":") == 0);
  CHECK(rows.find("(average)") != std::string::npos);

  const Result sw = run("sweep --train-dir " + ws.p("train") + " --test-dir " + ws.p("test") +
                        " --anchor-grid 8,16 --sample-grid 2000 --stage-grid 1" + kSmall.substr(kSmall.find(" --dict")));
  REQUIRE_MESSAGE(sw.code == 0, sw.output);
  std::istringstream lines(sw.output);
  std::string line;
  int records = 0;
  while (std::getline(lines, line)) records += line.rfind("{\"anchors\":", 0) == 0 ? 1 : 0;
  CHECK(records == 2);
}

}
