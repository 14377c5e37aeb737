// distkit: distributional distinguishability of stochastic systems from
// output trajectories.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "distkit/commands.hpp"
#include "distkit/config.hpp"
#include "distkit/error.hpp"
#include "distkit/io.hpp"
#include "distkit/parallel.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool config_required) {
  auto* c = cmd->add_option("--config", o.config_path, "experiment configuration (JSON)")
                ->check(CLI::ExistingFile);
  if (config_required) c->required();
  cmd->add_option("--seed", o.seed, "master seed, overrides the config");
  cmd->add_option("--out", o.out_dir, "output directory, overrides the config");
  cmd->add_option("--threads", o.threads, "worker threads (0 = auto; env DISTKIT_THREADS)");
}

distkit::config::ExperimentConfig resolve(const CommonOptions& o) {
  auto cfg = o.config_path.empty() ? distkit::config::parse_text("{}")
                                   : distkit::config::load(o.config_path);
  if (o.seed) cfg.override_seed(*o.seed);
  if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;

  unsigned threads = 0;
  if (o.threads) {
    threads = *o.threads;
  } else if (const char* env = std::getenv("DISTKIT_THREADS")) {
    try {
      threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw distkit::ConfigError(std::string("DISTKIT_THREADS is not a number: ") + env);
    }
  }
  distkit::set_thread_count(threads);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributional distinguishability of stochastic dynamical systems"};
  app.require_subcommand(1);

  CommonOptions sim_opt, test_opt, sweep_opt, gram_opt, sigma_opt;

  auto* simulate = app.add_subcommand("simulate", "simulate one trajectory set per initial state");
  add_common(simulate, sim_opt, true);

  auto* test = app.add_subcommand("test", "two-sample test between two trajectory files");
  std::string file_a, file_b;
  test->add_option("set_a", file_a, "first trajectory CSV")->required()->check(CLI::ExistingFile);
  test->add_option("set_b", file_b, "second trajectory CSV")->required()->check(CLI::ExistingFile);
  add_common(test, test_opt, false);

  auto* sweep = app.add_subcommand("sweep", "grid sweep of the test over initial states");
  add_common(sweep, sweep_opt, true);

  auto* gram = app.add_subcommand("gramian", "empirical observability Gramian of the nominal model");
  add_common(gram, gram_opt, true);

  auto* sigma = app.add_subcommand("sigma", "kernel width from the median meta-heuristic");
  std::vector<std::string> sigma_files;
  sigma->add_option("files", sigma_files, "trajectory CSVs taken in pairs: A0 B0 [A1 B1 ...]")
      ->check(CLI::ExistingFile);
  add_common(sigma, sigma_opt, false);

  CLI11_PARSE(app, argc, argv);

  namespace cmd = distkit::commands;
  try {
    if (simulate->parsed()) {
      const auto cfg = resolve(sim_opt);
      for (const auto& p : cmd::cmd_simulate(cfg, cfg.output_dir)) std::cout << p.string() << "\n";
    } else if (test->parsed()) {
      const auto cfg = resolve(test_opt);
      const auto outcome = cmd::cmd_test(file_a, file_b, cfg);
      std::cerr << cmd::summarize(outcome);
      const std::string json = distkit::io::to_json(outcome.result, outcome.sigma).dump(2) + "\n";
      if (!test_opt.out_dir.empty())
        distkit::io::write_file(std::filesystem::path(cfg.output_dir) / "test_result.json", json);
      std::cout << json;
    } else if (sweep->parsed()) {
      const auto cfg = resolve(sweep_opt);
      const auto result = cmd::cmd_sweep(cfg, cfg.output_dir);
      std::size_t triggered = 0, failed = 0;
      for (const auto& r : result.records) {
        if (r.status != distkit::sweep::CellStatus::ok)
          ++failed;
        else if (r.trigger)
          ++triggered;
      }
      std::cout << "cells " << result.records.size() << ", triggered " << triggered
                << ", not triggered " << result.records.size() - triggered - failed
                << ", errors " << failed << ", sigma " << distkit::io::format_double(result.sigma)
                << "\nwrote " << cfg.output_dir << "/{sweep_header.json,sweep.csv,class.csv}\n";
    } else if (gram->parsed()) {
      const auto cfg = resolve(gram_opt);
      const std::string json = cmd::cmd_gramian(cfg).dump(2) + "\n";
      distkit::io::write_file(std::filesystem::path(cfg.output_dir) / "gramian.json", json);
      std::cout << json;
    } else if (sigma->parsed()) {
      const auto cfg = resolve(sigma_opt);
      double value = 0.0;
      if (!sigma_files.empty()) {
        if (sigma_files.size() % 2 != 0)
          throw distkit::InvalidArgument("sigma expects trajectory files in pairs");
        std::vector<std::pair<std::filesystem::path, std::filesystem::path>> pairs;
        for (std::size_t i = 0; i < sigma_files.size(); i += 2)
          pairs.emplace_back(sigma_files[i], sigma_files[i + 1]);
        value = cmd::cmd_sigma(pairs);
      } else if (!sigma_opt.config_path.empty()) {
        value = cmd::cmd_sigma(cfg);
      } else {
        throw distkit::InvalidArgument("sigma needs trajectory file pairs or --config");
      }
      std::cout << distkit::io::format_double(value) << "\n";
    }
  } catch (const distkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
