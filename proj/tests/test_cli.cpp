#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const std::string out = "catcav_cli_test.out";
  const std::string err = "catcav_cli_test.err";
  const std::string cmd = std::string(CATCAV_CLI) + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help").code == 0);
  CHECK(run("mc --help").code == 0);
  CHECK(run("").code == 1);
  CHECK(run("nonsense").code == 1);
  CHECK(run("headline --coop abc").code == 1);
  CHECK(run("headline --format xml").code == 1);
  CHECK(run("mc --sigmas 1,2").code == 1);
  CHECK(run("headline --config /nonexistent.cfg").code == 1);
}

TEST_CASE("parameter and numerical errors") {
  const Run bad_eta = run("headline --eta-esc 1.5");
  CHECK(bad_eta.code == 2);
  CHECK(bad_eta.err.find("eta") != std::string::npos);
  CHECK(run("figure2 --lambda-grid 0.5,10,5").code == 2);
  CHECK(run("mc --n-atoms 1 --runs 4").code == 2);
  CHECK(run("mc --wavelength -1 --runs 2 --n-atoms 3").code == 2);
}

TEST_CASE("headline values") {
  const Run r = run("headline");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["lambda_opt"].get<double>() == 21.0);
  CHECK(j["L_gen"].get<double>() == doctest::Approx(0.0175).epsilon(1e-12));
  CHECK(j["alpha_out_sq_at_ratio"].get<double>() == doctest::Approx(28.0714).epsilon(1e-5));
  CHECK(j["meta"]["command_line"].is_string());
  const Run unbounded = run("headline --eta-esc 1");
  REQUIRE(unbounded.code == 0);
  CHECK(unbounded.out.find("unbounded") != std::string::npos);
  const Run csv = run("headline --format csv");
  CHECK(first_line(csv.out).find("L_gen") != std::string::npos);
}

TEST_CASE("CSV output is byte-stable") {
  const Run a = run("figure2 --lambda-grid 1,100,20");
  const Run b = run("figure2 --lambda-grid 1,100,20");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(first_line(a.out) == "lambda_dn,L_a,L_m,L_gen,a_up_over_in,a_dn_over_in");

  const Run m1 = run("mc --n-atoms 12 --runs 6 --seed 4 --format csv --threads 1");
  const Run m2 = run("mc --n-atoms 12 --runs 6 --seed 4 --format csv --threads 2");
  REQUIRE(m1.code == 0);
  CHECK(m1.out == m2.out);
  const Run m3 = run("mc --n-atoms 12 --runs 6 --seed 5 --format csv");
  CHECK(m1.out != m3.out);
}

TEST_CASE("subcommands produce tables") {
  const Run amp = run("amplitudes --branch both");
  REQUIRE(amp.code == 0);
  CHECK(first_line(amp.out) == "branch,re_r,im_r,re_a,im_a,re_m,im_m,energy_residual");
  const Run fig3 = run("figure3 --kx-grid 0,10,11");
  REQUIRE(fig3.code == 0);
  CHECK(fig3.out.find("\n0,1,1,1\n") != std::string::npos);
  const Run fig4 = run("figure4 --n-grid 3,6 --total-pairs 2000 --format json");
  REQUIRE(fig4.code == 0);
  const auto j4 = nlohmann::json::parse(fig4.out);
  CHECK(j4["c3"].get<double>() > 0.0);
  CHECK(j4["n_atoms"].size() == 4);
  const Run xc = run("xcheck --finesse-grid 100,1000,10000");
  REQUIRE(xc.code == 0);
  CHECK(xc.err.find("convergence_slope") != std::string::npos);
}

TEST_CASE("config files set defaults that flags override") {
  const std::string cfg = "catcav_cli_test.cfg";
  {
    std::ofstream f(cfg);
    f << "# cavity\neta_esc = 0.95\ncoop = 10\n";
  }
  const Run from_file = run("headline --config " + cfg);
  REQUIRE(from_file.code == 0);
  CHECK(nlohmann::json::parse(from_file.out)["coop"].get<double>() == 10.0);
  const Run overridden = run("headline --config " + cfg + " --coop 21");
  REQUIRE(overridden.code == 0);
  const auto j = nlohmann::json::parse(overridden.out);
  CHECK(j["coop"].get<double>() == 21.0);
  CHECK(j["eta_esc"].get<double>() == 0.95);
  {
    std::ofstream f(cfg);
    f << "no_equals_sign\n";
  }
  CHECK(run("headline --config " + cfg).code == 1);
  std::remove(cfg.c_str());
}

TEST_CASE("output to a file") {
  const std::string path = "catcav_cli_test.csv";
  REQUIRE(run("figure2 --lambda-grid 1,10,5 --out " + path).code == 0);
  CHECK(first_line(slurp(path)).rfind("lambda_dn", 0) == 0);
  std::remove(path.c_str());
}
