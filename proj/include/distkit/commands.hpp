#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "distkit/config.hpp"
#include "distkit/gramian.hpp"
#include "distkit/mmd_test.hpp"
#include "distkit/sweep.hpp"

namespace distkit::commands {

/// Simulates one sample set of size cfg.m per initial state and writes
/// set_<i>.csv into out_dir. Set i uses the seed derive_seed(sim.seed, i).
/// Returns the written paths.
std::vector<std::filesystem::path> cmd_simulate(const config::ExperimentConfig& cfg,
                                                const std::filesystem::path& out_dir);

struct TestOutcome {
  mmd::TestResult result;
  double sigma = 0.0;
};

/// Loads two trajectory files and runs the two-sample test. Without a fixed
/// sigma in cfg, sigma is the median pairwise distance of the pair.
TestOutcome cmd_test(const std::filesystem::path& set_a, const std::filesystem::path& set_b,
                     const config::ExperimentConfig& cfg);

/// Runs the configured sweep and writes sweep_header.json, sweep.csv,
/// class.csv and nominal_states.csv (the noise-free state path from the
/// reference) into out_dir.
sweep::SweepResult cmd_sweep(const config::ExperimentConfig& cfg,
                             const std::filesystem::path& out_dir);

/// Empirical Gramian at cfg.gramian.x0 as a JSON document.
nlohmann::json cmd_gramian(const config::ExperimentConfig& cfg);

/// Sigma meta-heuristic over file pairs (a_0, b_0), (a_1, b_1), ...
double cmd_sigma(const std::vector<std::pair<std::filesystem::path, std::filesystem::path>>& pairs);

/// Sigma meta-heuristic over simulated pairs (set_0, set_i), i >= 1, of the
/// configured initial states, seeded as in cmd_simulate.
double cmd_sigma(const config::ExperimentConfig& cfg);

/// Human-readable summary of a test outcome.
std::string summarize(const TestOutcome& outcome);

}  // namespace distkit::commands
