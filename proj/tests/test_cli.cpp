// End-to-end checks of the command-line tool. The binary path arrives as
// --cli=<path>, stripped from the arguments before doctest sees them.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_cli;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path log = fs::temp_directory_path() /
                       ("sckey_cli_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++) + ".log");
  const std::string cmd = "'" + g_cli + "' " + args + " > '" + log.string() + "' 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream is(log);
  std::ostringstream ss;
  ss << is.rdbuf();
  fs::remove(log);
  return {rc == -1 ? -1 : WEXITSTATUS(rc), ss.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() /
                       ("sckey_cli_scratch_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

int count_lines(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  int n = 0;
  while (std::getline(is, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("frame-verify reports and exit codes") {
  auto trine = run("frame-verify trine");
  CHECK(trine.exit_code == 0);
  CHECK(trine.output.find("equiangular: yes") != std::string::npos);
  CHECK(trine.output.find("0.25") != std::string::npos);
  CHECK(trine.output.find("4.5") != std::string::npos);
  CHECK(trine.output.find("3.375") != std::string::npos);
  CHECK(trine.output.find("all checks passed") != std::string::npos);

  auto bb84 = run("frame-verify bb84");
  CHECK(bb84.exit_code == 0);
  CHECK(bb84.output.find("equiangular: no") != std::string::npos);
  CHECK(bb84.output.find("all checks passed") != std::string::npos);

  auto simplex = run("frame-verify simplex:4");
  CHECK(simplex.exit_code == 0);
  CHECK(simplex.output.find("0.0625") != std::string::npos);  // (n-d)/(d(n-1)) = 1/16
  CHECK(simplex.output.find("all checks passed") != std::string::npos);

  CHECK(run("frame-verify nonsense").exit_code == 2);
  CHECK(run("frame-verify simplex:1").exit_code == 2);
}

TEST_CASE("rates subcommand writes the CSV and prints thresholds") {
  const fs::path dir = scratch_dir();
  const fs::path csv = dir / "trine.csv";

  auto r = run("rates --protocol trine --attack intercept-resend --q-points 5 --out '" +
               csv.string() + "'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("lower tolerable error: 0.088") != std::string::npos);
  CHECK(r.output.find("upper tolerable error: 0.166") != std::string::npos);
  REQUIRE(fs::exists(csv));
  CHECK(count_lines(csv) == 6);  // header + 5 points

  std::ifstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "protocol,attack,q,error_rate,rate_lower,rate_upper");
  std::getline(is, line);
  CHECK(line.rfind("trine,intercept-resend,0,", 0) == 0);
  // the q=0 error rate is zero up to rounding noise in the dual states
  CHECK(line.find(",0.584962500721,0.584962500721") != std::string::npos);

  SUBCASE("two-point grid is exactly q=0 and q=1") {
    const fs::path csv2 = dir / "bb84.csv";
    auto r2 = run("rates --protocol bb84 --q-points 2 --out '" + csv2.string() + "'");
    CHECK(r2.exit_code == 0);
    CHECK(count_lines(csv2) == 3);
    std::ifstream is2(csv2);
    std::string l;
    std::getline(is2, l);
    std::getline(is2, l);
    CHECK(l.rfind("bb84,intercept-resend,0,", 0) == 0);
    std::getline(is2, l);
    CHECK(l.rfind("bb84,intercept-resend,1,0.125,", 0) == 0);
  }

  SUBCASE("cloning sweep reports no zero crossing") {
    const fs::path csv3 = dir / "clone.csv";
    auto r3 = run("rates --protocol trine --attack clone --cloner paper --q-points 11 --out '" +
                  csv3.string() + "'");
    CHECK(r3.exit_code == 0);
    CHECK(r3.output.find("no zero crossing") != std::string::npos);
  }

  SUBCASE("the built-in cloner is refused for bb84") {
    auto r4 = run("rates --protocol bb84 --attack clone --cloner paper --out '" +
                  (dir / "x.csv").string() + "'");
    CHECK(r4.exit_code == 2);
  }

  fs::remove_all(dir);
}

TEST_CASE("dump-dist emits the a,b,e,p table") {
  auto r = run("dump-dist --protocol trine --attack intercept-resend --q 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("a,b,e,p\n", 0) == 0);
  // 3 x 3 x 6 cells at q=1
  std::istringstream ss(r.output);
  std::string line;
  int rows = -1;  // discount header
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 54);

  auto r2 = run("dump-dist --protocol trine --q 0.5");
  std::istringstream ss2(r2.output);
  rows = -1;
  while (std::getline(ss2, line)) ++rows;
  CHECK(rows == 63);  // extra no-intercept symbol below q=1
}

TEST_CASE("clone-opt with a degenerate budget stays symmetric and exits cleanly") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "cloner.txt";
  auto r = run("clone-opt --protocol trine --steps 1 --restarts 1 --out '" + out.string() + "'");
  CHECK(r.exit_code == 0);  // the identity start clones the trine symmetrically
  CHECK(r.output.find("fidelity") != std::string::npos);
  CHECK(r.output.find("symmetry penalty") != std::string::npos);
  CHECK(fs::exists(out));
  CHECK(count_lines(out) == 4);
  fs::remove_all(dir);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("rates --protocol sixstate").exit_code == 2);
  CHECK(run("rates --no-such-flag").exit_code == 2);
  CHECK(run("").exit_code == 2);  // a subcommand is required
}

int main(int argc, char** argv) {
  std::vector<char*> args;
  args.push_back(argv[0]);
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--cli=", 0) == 0) {
      g_cli = a.substr(6);
      continue;
    }
    args.push_back(argv[i]);
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "missing --cli=<path to sckey binary>\n");
    return 1;
  }
  doctest::Context ctx(static_cast<int>(args.size()), args.data());
  return ctx.run();
}
