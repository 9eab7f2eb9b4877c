// End-to-end checks of the command-line tool: exit codes, file formats,
// config precedence, and byte-level determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SMOPT_BIN
#error "SMOPT_BIN must be defined to the path of the smopt executable"
#endif

namespace {

const std::string kBin = SMOPT_BIN;
const std::string kDir = "/tmp/smopt_cli_test";

int run(const std::string& args) {
  std::string cmd = kBin + " " + args + " > " + kDir + "/out.log 2> " + kDir + "/err.log";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct Setup {
  Setup() { std::system(("mkdir -p " + kDir).c_str()); }
} setup;

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("frobnicate") == 2);
  CHECK(run("run --algo gm") == 2);             // missing --data
  CHECK(run("gen --problem robust --m 5") == 2);  // missing --n/--seed
  CHECK(run("run --algo nope --data /tmp/x") == 2);
}

TEST_CASE("runtime errors exit with 3") {
  CHECK(run("run --algo gm --data " + kDir + "/does_not_exist.txt") == 3);
}

TEST_CASE("help exits with 0") {
  CHECK(run("--help") == 0);
  CHECK(run("run --help") == 0);
}

TEST_CASE("gen writes the documented header and a loadable file") {
  REQUIRE(run("gen --problem robust --m 6 --n 4 --kappa 2.5 --p 0.25 --seed 9 --out " + kDir +
              "/d.txt") == 0);
  std::string first = slurp(kDir + "/d.txt");
  first = first.substr(0, first.find('\n'));
  CHECK(first == "SMOPT1 robust 6 4 2.5 0.25 quad 9");
  REQUIRE(run("gen --problem pwq --m 3 --n 4 --seed 9 --out " + kDir + "/p.txt") == 0);
  std::string ph = slurp(kDir + "/p.txt");
  ph = ph.substr(0, ph.find('\n'));
  CHECK(ph == "SMOPT1 pwq 3 4 0 0 none 9");  // hkind placeholder for pwq
}

TEST_CASE("run produces the documented trace and is byte-deterministic") {
  REQUIRE(run("gen --problem robust --m 10 --n 4 --kappa 2 --p 0.2 --seed 3 --out " + kDir +
              "/r.txt") == 0);
  REQUIRE(run("run --algo sspg --data " + kDir + "/r.txt --alpha0 1 --seed 5 --out " + kDir +
              "/t1.csv") == 0);
  REQUIRE(run("run --algo sspg --data " + kDir + "/r.txt --alpha0 1 --seed 5 --out " + kDir +
              "/t2.csv") == 0);
  std::string t1 = slurp(kDir + "/t1.csv");
  CHECK(t1 == slurp(kDir + "/t2.csv"));
  CHECK(t1.substr(0, t1.find('\n')) ==
        "k,oracle_count,f_true,phi_eta,gen_grad_norm,moreau_surrogate,step,Lhat,ls_steps,reason");
  // different seed changes the bytes (x0 differs)
  REQUIRE(run("run --algo sspg --data " + kDir + "/r.txt --alpha0 1 --seed 6 --out " + kDir +
              "/t3.csv") == 0);
  CHECK(t1 != slurp(kDir + "/t3.csv"));
}

TEST_CASE("config file is honored and overridden by explicit flags") {
  std::ofstream(kDir + "/cfg.txt") << "alpha0=2.5\neta=0.4\n";
  REQUIRE(run("run --algo sspg --data " + kDir + "/r.txt --config " + kDir + "/cfg.txt --out " +
              kDir + "/c1.csv") == 0);
  std::string echo = slurp(kDir + "/c1.csv.config");
  CHECK(echo.find("alpha0=2.5") != std::string::npos);
  CHECK(echo.find("eta=0.40000000000000002") != std::string::npos);
  REQUIRE(run("run --algo sspg --data " + kDir + "/r.txt --config " + kDir +
              "/cfg.txt --alpha0 1 --out " + kDir + "/c2.csv") == 0);
  std::string echo2 = slurp(kDir + "/c2.csv.config");
  CHECK(echo2.find("alpha0=1") != std::string::npos);
  CHECK(echo2.find("eta=0.40000000000000002") != std::string::npos);
}

TEST_CASE("sweep emits the documented csv and is deterministic under parallelism") {
  std::string args = "sweep --algo sspg --data " + kDir +
                     "/r.txt --grid 0.1,1 --seeds 1,2,3 --out " + kDir;
  REQUIRE(run(args + "/s1.csv") == 0);
  REQUIRE(run(args + "/s2.csv") == 0);
  std::string s1 = slurp(kDir + "/s1.csv");
  CHECK(s1 == slurp(kDir + "/s2.csv"));
  CHECK(s1.substr(0, s1.find('\n')) == "alpha0,seed,iters,oracles,final_f,reason");
  // 2 x 3 grid plus header
  int lines = 0;
  for (char ch : s1)
    if (ch == '\n') ++lines;
  CHECK(lines == 7);
}

TEST_CASE("check subcommand prints one line per property") {
  CHECK(run("check --suite prox") == 0);
  std::string log = slurp(kDir + "/out.log");
  CHECK(log.find("PASS") != std::string::npos);
  CHECK(run("check --suite nope") == 2);
}

TEST_CASE("plot renders an svg from a trace") {
  REQUIRE(run("plot --in " + kDir + "/t1.csv --out " + kDir + "/f.svg") == 0);
  std::string svg = slurp(kDir + "/f.svg");
  CHECK(svg.find("<svg") != std::string::npos);
}
