#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gff/commands.hpp"
#include "gff/run_config.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<int> dim;
  std::optional<std::string> suites;
  std::optional<std::string> out;
  std::optional<std::size_t> replicas;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key = value configuration file");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--dim", f.dim, "dimension")->check(CLI::IsMember({2, 3}));
  cmd->add_option("--suites", f.suites, "comma-separated suite names");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--replicas", f.replicas, "Monte Carlo replicas per test");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral zero-boundary Gaussian field lab: basis manifest, verification suites, plot data"};
  app.require_subcommand(1);
  Flags flags;
  CLI::App* basis = app.add_subcommand("basis", "build the eigenbasis, check it and write its manifest");
  CLI::App* verify = app.add_subcommand("verify", "run verification suites and write JSON/CSV reports");
  CLI::App* plotdata = app.add_subcommand("plotdata", "write variance curves, kernel sections and bound ratios");
  for (CLI::App* cmd : {basis, verify, plotdata}) add_flags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gff::kExitUsage;
  }

  try {
    gff::ConfigOverrides overrides;
    overrides.dim = flags.dim;
    overrides.seed = flags.seed;
    overrides.replicas = flags.replicas;
    if (flags.suites) overrides.suites = gff::split_list(*flags.suites);
    if (flags.out) overrides.out_dir = *flags.out;
    std::optional<std::filesystem::path> file;
    if (flags.config) file = *flags.config;
    const gff::RunConfig config = gff::load_config(file, overrides);

    if (basis->parsed()) return gff::cmd_basis(config, std::cout);
    if (verify->parsed()) return gff::cmd_verify(config, std::cout);
    return gff::cmd_plotdata(config, std::cout);
  } catch (const gff::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gff::kExitUsage;
  }
}
