#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gl2/algebra.hpp"
#include "gl2/iso_check.hpp"
#include "json.hpp"

using namespace gl2;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

struct Cli {
  std::string bin;
  fs::path dir;

  Cli() {
    const char* b = std::getenv("GL2WB_BIN");
    bin = b ? b : "";
    dir = fs::temp_directory_path() / ("gl2wb_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Cli() { fs::remove_all(dir); }

  std::string path(const std::string& f) const { return (dir / f).string(); }

  Run run(const std::string& args) const {
    std::string log = path("stdout.txt");
    std::string cmd = "cd '" + dir.string() + "' && '" + bin + "' " + args + " > '" + log + "' 2>/dev/null";
    int st = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.out = read(log);
    return r;
  }

  static std::string read(const std::string& f) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("build-an writes algebra-v1") {
    Cli cli;
    REQUIRE_FALSE(cli.bin.empty());
    Run r = cli.run("build-an --p 3 --n 1 --out a1.json");
    CHECK(r.code == 0);
    Algebra a = algebra_from_json(Cli::read(cli.path("a1.json")));
    CHECK(a.dim() == 4 * 3 - 3);
    auto rec = nlohmann::json::parse(r.out);
    CHECK(rec["status"] == "pass");
    CHECK(rec["seed"] == 0);
  }

  TEST_CASE("verify-iso writes a certificate that checks") {
    Cli cli;
    REQUIRE(cli.run("build-an --p 2 --n 2 --out a2.json").code == 0);
    REQUIRE(cli.run("build-en --p 2 --n 2 --out e2.json").code == 0);
    Run r = cli.run("verify-iso a2.json e2.json --out cert.json");
    CHECK(r.code == 0);
    Algebra a = algebra_from_json(Cli::read(cli.path("a2.json")));
    Algebra e = algebra_from_json(Cli::read(cli.path("e2.json")));
    IsoCertificate cert = certificate_from_json(Cli::read(cli.path("cert.json")));
    CHECK(verify_iso(a, e, cert));
    // c_2 and A_2 differ
    REQUIRE(cli.run("build-cp --p 2 --out c2.json").code == 0);
    CHECK(cli.run("verify-iso c2.json e2.json").code == 1);
  }

  TEST_CASE("braid words") {
    Cli cli;
    Run r = cli.run("braid --p 3 --word 1,2,1 --against 2,1,2 --out map.json");
    CHECK(r.code == 0);
    auto rec = nlohmann::json::parse(r.out);
    CHECK(rec["tables_equal"] == true);
    CHECK(rec["quasi_iso"] == "found");
    CHECK(fs::exists(cli.path("map.json")));
    CHECK(cli.run("braid --p 3 --word 1,2 --against 2,1").code == 1);
  }

  TEST_CASE("verification commands") {
    Cli cli;
    CHECK(cli.run("gamma-check --p 2 --word 1").code == 0);
    CHECK(cli.run("selfdual-check --p 2 --n 1").code == 0);
    CHECK(cli.run("filtration-check --p 3 --n 1").code == 0);
    CHECK(cli.run("tight-check --p 2 --n 1").code == 0);
    Run s = cli.run("schur-report --p 2 --n 1 --format text");
    CHECK(s.code == 0);
    CHECK(s.out.find("not desk-verifiable") != std::string::npos);
  }

  TEST_CASE("usage errors and budgets") {
    Cli cli;
    CHECK(cli.run("no-such-command").code == 64);
    CHECK(cli.run("build-an --p 4 --n 1").code == 64);
    CHECK(cli.run("build-an --p 3 --n x").code == 64);
    CHECK(cli.run("verify-iso missing.json other.json").code == 64);
    CHECK(cli.run("braid --p 3 --word 1,,2 --against 1").code == 64);
    Run b = cli.run("build-en --p 2 --n 3 --budget-dim 50");
    CHECK(b.code == 2);
    CHECK(nlohmann::json::parse(b.out)["status"] == "inconclusive");
  }

  TEST_CASE("artifacts are deterministic and round-trip") {
    Cli cli;
    REQUIRE(cli.run("schur-report --p 2 --n 2 --seed 5 --out r1.json").code == 0);
    REQUIRE(cli.run("schur-report --p 2 --n 2 --seed 5 --out r2.json").code == 0);
    CHECK(Cli::read(cli.path("r1.json")) == Cli::read(cli.path("r2.json")));
    CHECK(Cli::read(cli.path("r1.json")).find("\"seed\": 5") != std::string::npos);
    REQUIRE(cli.run("build-cn --p 3 --n 1 --out c.json").code == 0);
    REQUIRE(cli.run("export c.json --out c2.json").code == 0);
    CHECK(Cli::read(cli.path("c.json")) == Cli::read(cli.path("c2.json")));
    Run imp = cli.run("import c.json");
    CHECK(imp.code == 0);
    CHECK(nlohmann::json::parse(imp.out)["canonical"] == true);
  }
}
