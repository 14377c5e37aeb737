#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "distkit/dynamics.hpp"
#include "distkit/example_systems.hpp"
#include "distkit/mmd_test.hpp"
#include "distkit/sweep.hpp"

namespace distkit::config {

struct DiscreteLinearParams {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd C = (Eigen::MatrixXd(1, 2) << 1.0, 0.0).finished();
  Eigen::MatrixXd Q = 0.1 * Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd R = (Eigen::MatrixXd(1, 1) << 0.1).finished();
};

using ModelParams = std::variant<examples::LinearDriftParams, examples::DuffingParams,
                                 DiscreteLinearParams>;

/// A point initial state or independent Gaussian coordinates.
struct InitialState {
  dynamics::State mean;
  std::optional<Eigen::VectorXd> stddev;

  dynamics::InitialSpec spec() const;
};

struct SweepSettings {
  dynamics::State reference;
  sweep::GridSpec grid;
};

struct GramianSettings {
  dynamics::State x0;
  double epsilon = 0.1;
};

/// One experiment: model, initial states, simulation, sample sizes, kernel,
/// test, and optional sweep and Gramian sections.
struct ExperimentConfig {
  ModelParams model = examples::LinearDriftParams{};
  std::vector<InitialState> initial_states;
  dynamics::SimConfig sim;
  std::size_t m = 30;
  std::size_t n = 30;
  std::optional<double> sigma;  ///< empty means "auto"
  std::size_t sigma_cell_cap = 200;
  double alpha = 0.05;
  mmd::ThresholdMethod method = mmd::ThresholdMethod::bootstrap;
  std::size_t n_permutations = 1000;
  std::optional<std::uint64_t> test_seed;  ///< defaults to sim.seed
  std::optional<SweepSettings> sweep;
  std::optional<GramianSettings> gramian;
  std::string output_dir = "out";

  std::string model_name() const;
  dynamics::SystemModel build_model() const;
  mmd::TestConfig test_config() const;
  /// Replaces both the simulation and the test seed.
  void override_seed(std::uint64_t seed);
};

/// Parses and validates a JSON configuration document. Unknown keys, unknown
/// model names, alpha outside (0, 1), and a horizon that is not a multiple of
/// dt are ConfigErrors.
ExperimentConfig parse(const nlohmann::json& doc);
ExperimentConfig parse_text(const std::string& text);
ExperimentConfig load(const std::string& path);

/// Canonical document with every default spelled out; parse(serialize(c))
/// reproduces c.
nlohmann::json serialize(const ExperimentConfig& cfg);

}  // namespace distkit::config
