// Drives the installed command-line tool as a subprocess.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = TRAVWAVE_TEST_SCRATCH;

fs::path fresh(const std::string& name) {
  const fs::path p = kScratch / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

// Exit status of `travwave <args>`, stderr captured into `err`.
int run(const std::string& args, std::string* err = nullptr) {
  const fs::path err_file = kScratch / "stderr.txt";
  const std::string cmd = std::string("\"") + TRAVWAVE_CLI_PATH + "\" " + args + " > /dev/null 2> \"" + err_file.string() + "\"";
  const int status = std::system(cmd.c_str());
  if (err) *err = slurp(err_file);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kKdvConfig = R"([equation]
name = kdv
L = 2*pi

[discretization]
N = 32

[boundary]
condition = mean_zero

[navigation]
step = 0.05
n_iter = 12
)";

} // namespace

TEST_CASE("unknown keys are rejected with exit 1") {
  const auto dir = fresh("strict");
  write(dir / "bad.ini", std::string(kKdvConfig) + "\n[newton]\nnewton_tollerance = 1e-10\n");
  std::string err;
  CHECK(run("branch --config \"" + (dir / "bad.ini").string() + "\" --out \"" + (dir / "o").string() + "\"", &err) == 1);
  CHECK(err.find("newton_tollerance") != std::string::npos);

  write(dir / "good.ini", kKdvConfig);
  CHECK(run("branch --config \"" + (dir / "good.ini").string() + "\" --set newton_tollerance=1e-10", &err) == 1);
  CHECK(err.find("newton_tollerance") != std::string::npos);

  CHECK(run("branch --config \"" + (dir / "missing.ini").string() + "\"") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("converge --config \"" + (dir / "good.ini").string() + "\" --set name=whitham --out \"" +
            (dir / "c").string() + "\"") == 1);
}

TEST_CASE("reruns are byte-identical and analysis round-trips") {
  const auto dir = fresh("determinism");
  write(dir / "kdv.ini", kKdvConfig);
  const std::string cfg = " --config \"" + (dir / "kdv.ini").string() + "\"";
  REQUIRE(run("branch" + cfg + " --out \"" + (dir / "a").string() + "\"") == 0);
  REQUIRE(run("branch" + cfg + " --out \"" + (dir / "b").string() + "\"") == 0);

  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), dir / "a");
    CAPTURE(rel.string());
    CHECK(slurp(entry.path()) == slurp(dir / "b" / rel));
    ++compared;
  }
  CHECK(compared >= 14);

  // Re-reading the stored CSVs reproduces the report exactly.
  REQUIRE(run("analyze" + cfg + " --set branch_dir=\"" + (dir / "a").string() + "\" --out \"" + (dir / "an").string() +
              "\"") == 0);
  CHECK(slurp(dir / "an" / "report.json") == slurp(dir / "a" / "report.json"));
  CHECK(slurp(dir / "an" / "summary.csv") == slurp(dir / "a" / "summary.csv"));

  REQUIRE(run("refine" + cfg + " --set branch_dir=\"" + (dir / "a").string() + "\" --set doubling=1 --out \"" +
              (dir / "r").string() + "\"") == 0);
  CHECK(slurp(dir / "r" / "refined_N64" / "branch.csv").find(",64\n") != std::string::npos);
}

TEST_CASE("evolution of stored profiles") {
  const auto dir = fresh("evolve");
  write(dir / "kdv.ini", kKdvConfig);
  REQUIRE(run("branch --config \"" + (dir / "kdv.ini").string() + "\" --out \"" + (dir / "br").string() + "\"") == 0);

  const std::string zero = (dir / "br" / "profiles" / "point_00000.csv").string();
  REQUIRE(run("evolve --config \"" + (dir / "kdv.ini").string() + "\" --set profile=\"" + zero +
              "\" --set t_end=0.5 --set dt=0.01 --out \"" + (dir / "zero").string() + "\"") == 0);
  const auto index = slurp(dir / "zero" / "index.csv");
  CHECK(index.rfind("t,file,mass,momentum,max_u\n", 0) == 0);
  CHECK(index.find(",0,0,0\n") != std::string::npos);

  const std::string tall = (dir / "br" / "profiles" / "point_00013.csv").string();
  REQUIRE(run("evolve --config \"" + (dir / "kdv.ini").string() + "\" --set profile=\"" + tall +
              "\" --set t_end=1 --set dt=0.005 --out \"" + (dir / "tall").string() + "\"") == 0);
  CHECK(slurp(dir / "tall" / "evolution.json").find("\"shape_deviation\"") != std::string::npos);

  // An unstable step without dealiasing blows up: exit 2, data kept.
  std::string err;
  CHECK(run("evolve --config \"" + (dir / "kdv.ini").string() + "\" --set profile=\"" + tall +
                "\" --set t_end=2000 --set dt=0.5 --set dealias=false --set M=256 --out \"" + (dir / "boom").string() + "\"",
            &err) == 2);
  CHECK(err.find("blow-up") != std::string::npos);
  CHECK(fs::exists(dir / "boom" / "index.csv"));
  CHECK(slurp(dir / "boom" / "evolution.json").find("\"blow_up_time\": null") == std::string::npos);

  CHECK(run("evolve --config \"" + (dir / "kdv.ini").string() + "\" --set profile=\"" + (dir / "nope.csv").string() +
            "\" --out \"" + (dir / "missing").string() + "\"") == 1);
}
