// gamma-ladder: landscape analysis, ladders and convergence tables from a JSON config.
//
//   gamma-ladder <analyze|ladder|verify|rates|simulate> --config <path> [--out <dir>] [--threads N]
//
// Exit status: 0 all verdicts pass, 2 some verdict fails, 1 error.
// GAMMA_LADDER_THREADS and GAMMA_LADDER_OUT override the config; flags override both.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "gladder/cli/run.hpp"

namespace {

std::optional<int> env_int(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  long x = std::strtol(v, &end, 10);
  if (*end || x < 1) throw gladder::ConfigError(0, name, "must be a positive integer");
  return static_cast<int>(x);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metastable landscape analysis and Gamma-expansion verification"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  int threads = 0;
  for (auto [name, help] : {std::pair{"analyze", "critical points, validation report, wells and saddle graph"},
                            std::pair{"ladder", "hierarchy of reduced chains with depths, rates and limit measures"},
                            std::pair{"verify", "convergence tables for the selected claims"},
                            std::pair{"rates", "(H1) rate table for one level"},
                            std::pair{"simulate", "trajectory and empirical measure of the lattice chain"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }
  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  gladder::RunConfig cfg;
  try {
    cfg = gladder::read_config(config_path);
    if (auto t = env_int("GAMMA_LADDER_THREADS")) cfg.threads = *t;
    if (const char* o = std::getenv("GAMMA_LADDER_OUT"); o && *o) cfg.output = o;
  } catch (const gladder::Error& e) {
    std::cerr << "gamma-ladder: " << e.what() << "\n";
    return gladder::ExitError;
  }
  if (threads > 0) cfg.threads = threads;
  if (!out_dir.empty()) cfg.output = out_dir;
  return gladder::run(sub, cfg, cfg.output, std::cout, std::cerr);
}
