#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "blockrel/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"LOS reliability of macro-diversity cellular networks under line blockages"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config and write CSV");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "Output CSV path; '-' writes to stdout")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--workers", workers, "Override the worker thread count")->check(CLI::PositiveNumber);

  bool quick = false;
  auto* verify = app.add_subcommand("verify", "Run the built-in oracle suite");
  verify->add_flag("--quick", quick, "Fast subset (the only suite available)")->required();

  CLI11_PARSE(app, argc, argv);

  if (*verify) {
    return blockrel::experiment::run_quick_verify(std::cout) == 0 ? 0 : 1;
  }

  try {
    auto cfg = blockrel::experiment::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    // Render fully before touching the output file so a failed run leaves no
    // partial CSV behind.
    std::ostringstream csv;
    const auto summary = blockrel::experiment::run_experiment(cfg, csv, std::cerr);
    if (out_path == "-") {
      std::cout << csv.str();
    } else {
      std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return 1;
      }
      out << csv.str();
    }
    if (summary.nonconverged) std::cerr << "warning: some rows did not converge (flagged in the method column)\n";
    if (summary.verify_failed) std::cerr << "verification failed\n";
    return summary.exit_code();
  } catch (const blockrel::experiment::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
