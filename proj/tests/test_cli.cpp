#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gff/commands.hpp"
#include "gff/run_config.hpp"

using namespace gff;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gfflab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("config text with sections and overrides") {
  RunConfig c;
  apply_config_text(c,
                    "# comment\n"
                    "dim = 3\n"
                    "seed = 42  # trailing\n"
                    "suites = basis, constancy\n"
                    "[truncation]\n"
                    "max_degree = 5\n"
                    "max_radial = 7\n"
                    "[tolerances]\n"
                    "basis.psi_gram = 1e-9\n",
                    "inline");
  CHECK(c.dim == 3);
  CHECK(c.seed == 42);
  CHECK(c.selected_suites() == std::vector<std::string>{"basis", "constancy"});
  CHECK(c.truncation() == BasisSpec{3, 5, 7});
  CHECK(c.tolerances.at("basis.psi_gram") == 1e-9);
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(apply_config_text(c, "dim = two\n", "inline"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "colour = red\n", "inline"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "just words\n", "inline"), ConfigError);
}

TEST_CASE("validation rejects bad values") {
  RunConfig c;
  c.tolerances["basis.psi_gram"] = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.tolerances.clear();
  c.suites = {"no_such_suite"};
  try {
    c.validate();
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("no_such_suite") != std::string::npos);
  }
  c.suites.clear();
  c.dim = 4;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.dim = 2;
  c.replicas = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("flags override the file and the hash ignores the output directory") {
  const fs::path dir = scratch_dir("config");
  fs::create_directories(dir);
  const fs::path file = dir / "run.cfg";
  std::ofstream(file) << "seed = 7\nreplicas = 500\n";
  ConfigOverrides o;
  o.seed = 9;
  const RunConfig c = load_config(file, o);
  CHECK(c.seed == 9);
  CHECK(c.replicas == 500);
  RunConfig moved = c;
  moved.out_dir = "elsewhere";
  CHECK(moved.hash() == c.hash());
  RunConfig reseeded = c;
  reseeded.seed = 10;
  CHECK(reseeded.hash() != c.hash());
  CHECK(c.provenance().find(c.hash()) != std::string::npos);
  CHECK_THROWS_AS(load_config(dir / "missing.cfg", {}), ConfigError);
}

TEST_CASE("basis command writes the manifest") {
  RunConfig c;
  c.out_dir = scratch_dir("basis");
  c.max_degree = 4;
  c.max_radial = 6;
  std::ostringstream log;
  CHECK(cmd_basis(c, log) == kExitPass);
  const auto lines = read_lines(c.out_dir / "basis_manifest.csv");
  REQUIRE(lines.size() == 2 + (1 + 2 * 4) * 6);
  CHECK(lines[0].find("config_hash=" + c.hash()) != std::string::npos);
  CHECK(fs::exists(c.out_dir / "basis_checks.json"));

  c.max_degree = 0;
  CHECK(cmd_basis(c, log) == kExitPass);
  const auto zero = read_lines(c.out_dir / "basis_manifest.csv");
  CHECK(zero.size() == 2 + 6);
  for (std::size_t k = 2; k < zero.size(); ++k) CHECK(split(zero[k])[0] == "0");
}

TEST_CASE("verify writes reports for a subset and is deterministic") {
  RunConfig c;
  c.suites = {"zero_boundary", "basis"};
  c.replicas = 2000;
  c.out_dir = scratch_dir("verify_a");
  std::ostringstream log;
  const int code = cmd_verify(c, log);
  CHECK((code == kExitPass || code == kExitFailure));
  const auto lines = read_lines(c.out_dir / "report.csv");
  REQUIRE(lines.size() > 3);
  CHECK(lines[0].find("seed=20240917") != std::string::npos);
  CHECK(split(lines[2])[0] == "basis");
  CHECK(split(lines.back())[0] == "zero_boundary");

  RunConfig again = c;
  again.out_dir = scratch_dir("verify_b");
  CHECK(cmd_verify(again, log) == code);
  std::ifstream a(c.out_dir / "report.json");
  std::ifstream b(again.out_dir / "report.json");
  std::stringstream sa;
  std::stringstream sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("plot data") {
  RunConfig c;
  c.replicas = 2000;
  c.max_degree = 4;
  c.max_radial = 20;
  c.out_dir = scratch_dir("plot");
  std::ostringstream log;
  REQUIRE(cmd_plotdata(c, log) == kExitPass);

  const auto curve = read_lines(c.out_dir / "variance_curve.csv");
  CHECK(curve[1] == "r,analytic,mc_estimate,stderr");
  bool found = false;
  for (const auto& line : curve) {
    const auto f = split(line);
    if (f[0] == "0.5") {
      found = true;
      CHECK(std::stod(f[1]) == doctest::Approx(0.6931472).epsilon(1e-7));
    }
  }
  CHECK(found);

  const auto section = read_lines(c.out_dir / "kernel_cross_section.csv");
  const auto last = split(section.back());
  CHECK(std::stod(last[0]) == 1.0);
  CHECK(std::abs(std::stod(last[1])) < 1e-12);

  const auto bounds = read_lines(c.out_dir / "bound_ratios.csv");
  CHECK(bounds[1] == "delta,separation,k2_ratio,k4_ratio,circle_ratio");
  CHECK(bounds.size() == 2 + 3 * 13);
}

TEST_CASE("I/O failures exit 1") {
  const fs::path dir = scratch_dir("io");
  fs::create_directories(dir);
  const fs::path blocker = dir / "file";
  std::ofstream(blocker) << "x";
  RunConfig c;
  c.out_dir = blocker / "sub";
  c.replicas = 100;
  std::ostringstream log;
  CHECK(cmd_plotdata(c, log) == kExitUsage);
  CHECK(cmd_basis(c, log) == kExitUsage);
}
