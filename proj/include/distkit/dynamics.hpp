#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include "distkit/rng.hpp"
#include "distkit/trajectory.hpp"

namespace distkit::dynamics {

using State = Eigen::VectorXd;

/// Continuous models are integrated with Euler(-Maruyama); in discrete
/// models `drift` is the one-step transition map and one step is dt.
enum class TimeDomain { continuous, discrete };

/// Stochastic system dX = f(X, t) dt + G(X, t) dW, Y = h(X) + eps.
///
/// `diffusion` and `measurement_noise` may be left empty for a noise-free
/// model. `noisy_measurement`, when set, replaces h(x) + eps with a general
/// map H(x, eps) that draws its own noise from the stream. All callables must
/// be safe to call concurrently.
struct SystemModel {
  std::string name;
  std::size_t state_dim = 0;
  std::size_t output_dim = 0;
  std::size_t noise_dim = 0;  ///< columns of the diffusion matrix
  TimeDomain time_domain = TimeDomain::continuous;

  std::function<State(const State&, double)> drift;
  std::function<Eigen::MatrixXd(const State&, double)> diffusion;
  std::function<Eigen::VectorXd(const State&)> measurement;
  std::function<Eigen::VectorXd(Rng&)> measurement_noise;
  std::function<Eigen::VectorXd(const State&, Rng&)> noisy_measurement;
};

/// Dirac at a point, or a sampler drawing initial states from a stream.
class InitialSpec {
 public:
  using Sampler = std::function<State(Rng&)>;

  static InitialSpec point(State x0) { return InitialSpec(std::move(x0)); }
  static InitialSpec sampler(Sampler s) { return InitialSpec(std::move(s)); }
  /// Independent Gaussian coordinates with the given means and standard deviations.
  static InitialSpec gaussian(State mean, Eigen::VectorXd stddev);

  bool is_point() const noexcept { return std::holds_alternative<State>(spec_); }
  const State& point_value() const { return std::get<State>(spec_); }
  State draw(Rng& rng) const;

 private:
  explicit InitialSpec(State x0) : spec_(std::move(x0)) {}
  explicit InitialSpec(Sampler s) : spec_(std::move(s)) {}
  std::variant<State, Sampler> spec_;
};

struct SimConfig {
  double horizon = 1.0;
  double dt = 0.01;
  std::uint64_t seed = 0;

  /// round(horizon / dt); throws InvalidArgument unless that is a positive
  /// integer within 1e-9 relative tolerance.
  std::size_t steps() const;
};

/// States x_0..x_T, one per row.
using StatePath = Eigen::MatrixXd;

struct DeterministicRun {
  StatePath states;
  Trajectory outputs;
};

/// Explicit Euler on the drift (or iteration of the transition map for
/// discrete models) with outputs h(x_t) at every step.
/// Throws SimulationBlowUp with the failing step on a non-finite state.
DeterministicRun simulate_deterministic(const SystemModel& model, const State& x0,
                                        const SimConfig& sim);

/// Euler-Maruyama: x_{t+1} = x_t + f(x_t, t dt) dt + G(x_t, t dt) sqrt(dt) w_t,
/// y_t = h(x_t) + eps_t for t = 0..T (t = 0 included). For discrete models
/// x_{t+1} = F(x_t, t) + G w_t. The initial state is drawn first, then for
/// each step the measurement noise followed by the process noise.
Trajectory simulate_stochastic(const SystemModel& model, const InitialSpec& init,
                               const SimConfig& sim, Rng& stream);

/// Member `index` of a batch keyed by sim.seed: simulate_stochastic with the
/// stream substream(sim.seed, index).
Trajectory simulate_member(const SystemModel& model, const InitialSpec& init,
                           const SimConfig& sim, std::size_t index);

/// m independent trajectories; member i equals simulate_member(..., i)
/// regardless of thread count.
SampleSet sample_output_set(const SystemModel& model, const InitialSpec& init, std::size_t m,
                            const SimConfig& sim, std::string label = {});

/// Throws InvalidArgument when the model's callables or dimensions are inconsistent.
void validate(const SystemModel& model);

}  // namespace distkit::dynamics
