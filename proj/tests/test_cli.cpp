#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

#ifndef HELION_CLI_PATH
#error "HELION_CLI_PATH must point at the built command line binary"
#endif

int run(const std::string& args) {
  std::string cmd = std::string(HELION_CLI_PATH) + " " + args + " > cli_stdout.tmp 2> cli_stderr.tmp";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string out() { return slurp("cli_stdout.tmp"); }
std::string err() { return slurp("cli_stderr.tmp"); }

const std::string kSolveSmall =
    "solve --state 1s1s --spin singlet --omega 3 --alpha 2.25 --beta 2.07 --digits 20 ";

}  // namespace

TEST_CASE("help exits cleanly") {
  REQUIRE(run("--help") == 0);
  REQUIRE(out().find("solve") != std::string::npos);
}

TEST_CASE("missing subcommand is a config error") { REQUIRE(run("") == 2); }

TEST_CASE("solve writes a state artifact") {
  REQUIRE(run(kSolveSmall + "--output cli_ground.state") == 0);
  REQUIRE(std::filesystem::exists("cli_ground.state"));
  REQUIRE(out().find("energy=") != std::string::npos);
  auto artifact = slurp("cli_ground.state");
  REQUIRE(artifact.rfind("helion-state 1", 0) == 0);
  REQUIRE(artifact.find("digits 20") != std::string::npos);
  REQUIRE(artifact.find("terms 13") != std::string::npos);
}

TEST_CASE("invalid state label is rejected") {
  REQUIRE(run("solve --state 1s0s --omega 2 --alpha 2 --beta 2") == 2);
  REQUIRE(run("solve --state 2p3d --omega 2 --alpha 2 --beta 2") == 2);
}

TEST_CASE("alpha and beta must come together") {
  REQUIRE(run("solve --state 1s1s --omega 2 --alpha 2.0") == 2);
}

TEST_CASE("triplet 1s1s is rejected") {
  REQUIRE(run("solve --state 1s1s --spin triplet --omega 3 --alpha 2 --beta 1") == 2);
}

TEST_CASE("entropy on a missing artifact is a pipeline error") {
  REQUIRE(run("entropy --input does_not_exist.state") == 4);
  REQUIRE(err().find("does_not_exist.state") != std::string::npos);
}

TEST_CASE("entropy report from a solved artifact") {
  REQUIRE(run(kSolveSmall + "--output cli_ground.state") == 0);
  REQUIRE(run("entropy --input cli_ground.state --lmax 2 --lamax 10 --digits 25 "
              "--output cli_entropy.csv") == 0);
  auto rep = slurp("cli_entropy.csv");
  REQUIRE(rep.find("energy,") != std::string::npos);
  REQUIRE(rep.find("S_L,") != std::string::npos);
  REQUIRE(rep.find("S_vN,") != std::string::npos);
  REQUIRE(rep.find("eps_von_neumann,") != std::string::npos);
  // per-channel rows for l = 0..2
  REQUIRE(rep.find("\n0,") != std::string::npos);
  REQUIRE(rep.find("\n2,") != std::string::npos);
}

TEST_CASE("tsv format switches the separator") {
  REQUIRE(run(kSolveSmall + "--output cli_ground.state") == 0);
  REQUIRE(run("entropy --input cli_ground.state --lmax 1 --lamax 8 --digits 25 --format tsv "
              "--output cli_entropy.tsv") == 0);
  auto rep = slurp("cli_entropy.tsv");
  REQUIRE(rep.find("S_L\t") != std::string::npos);
  REQUIRE(run("entropy --input cli_ground.state --format xml") == 2);
}

TEST_CASE("scan rejects descending values") {
  REQUIRE(run("scan --axis l_max --values 3,2,1 --state 1s1s --omega 2 --alpha 2.2 --beta 2.0") ==
          2);
}

TEST_CASE("scan rejects an unknown axis") {
  REQUIRE(run(std::string("scan --axis bogus --values 1,2 --state 1s1s --omega 2 ") +
              "--alpha 2.2 --beta 2.0 --digits 20 --lamax 8") == 2);
}

TEST_CASE("channel scan over an artifact emits one row per value") {
  REQUIRE(run(kSolveSmall + "--output cli_ground.state") == 0);
  REQUIRE(run("scan --axis l_max --values 0,1,2 --input cli_ground.state --lamax 10 "
              "--digits 25 --output cli_scan.csv") == 0);
  auto rep = slurp("cli_scan.csv");
  REQUIRE(rep.find("l_max,N_t,energy,eigenvalue_sum,S_L,S_vN") != std::string::npos);
  REQUIRE(rep.find("\n0,-,-,") != std::string::npos);
  REQUIRE(rep.find("\n1,-,-,") != std::string::npos);
  REQUIRE(rep.find("\n2,-,-,") != std::string::npos);
}

TEST_CASE("omega scan reports basis sizes and energies") {
  REQUIRE(run("scan --axis omega --values 2,3 --state 1s1s --alpha 2.25 --beta 2.07 "
              "--digits 20 --lmax 1 --lamax 8 --output cli_omega.csv") == 0);
  auto rep = slurp("cli_omega.csv");
  REQUIRE(rep.find("\n2,7,") != std::string::npos);
  REQUIRE(rep.find("\n3,13,") != std::string::npos);
}

TEST_CASE("figure lists every missing artifact") {
  REQUIRE(run("figure --artifacts nope_a.state,nope_b.state") == 4);
  auto e = err();
  REQUIRE(e.find("nope_a.state") != std::string::npos);
  REQUIRE(e.find("nope_b.state") != std::string::npos);
}

TEST_CASE("figure emits the log-log dataset") {
  REQUIRE(run(kSolveSmall + "--output cli_ground.state") == 0);
  REQUIRE(run("figure --artifacts cli_ground.state --lmax 1 --lamax 8 --digits 25 "
              "--output cli_figure.csv") == 0);
  auto rep = slurp("cli_figure.csv");
  REQUIRE(rep.find("n,spin,eps_linear,eps_von_neumann,log10_n,log10_eps_von_neumann") !=
          std::string::npos);
  REQUIRE(rep.find("\n1,singlet,") != std::string::npos);
}

TEST_CASE("config file supplies subcommand options") {
  {
    std::ofstream cfg("cli_config.ini");
    cfg << "[solve]\n"
        << "state=1s1s\n"
        << "spin=singlet\n"
        << "omega=2\n"
        << "alpha=2.25\n"
        << "beta=2.07\n"
        << "digits=20\n"
        << "output=cli_from_config.state\n";
  }
  REQUIRE(run("solve --config cli_config.ini") == 0);
  REQUIRE(std::filesystem::exists("cli_from_config.state"));
  REQUIRE(slurp("cli_from_config.state").find("terms 7") != std::string::npos);
}

TEST_CASE("precision environment variable reaches the solver") {
  std::string cmd = std::string("HELION_PRECISION_DIGITS=22 ") + HELION_CLI_PATH +
                    " solve --state 1s1s --omega 2 --alpha 2.25 --beta 2.07 "
                    "--output cli_env.state > cli_stdout.tmp 2> cli_stderr.tmp";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  REQUIRE(slurp("cli_env.state").find("digits 22") != std::string::npos);
}

TEST_CASE("explicit digits flag beats the environment variable") {
  std::string cmd = std::string("HELION_PRECISION_DIGITS=22 ") + HELION_CLI_PATH +
                    " solve --state 1s1s --omega 2 --alpha 2.25 --beta 2.07 --digits 24 "
                    "--output cli_env2.state > cli_stdout.tmp 2> cli_stderr.tmp";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  REQUIRE(slurp("cli_env2.state").find("digits 24") != std::string::npos);
}
