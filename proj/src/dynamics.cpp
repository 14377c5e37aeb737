#include "distkit/dynamics.hpp"

#include <cmath>
#include <optional>
#include <vector>

#include "distkit/error.hpp"
#include "distkit/parallel.hpp"

namespace distkit::dynamics {
namespace {

void require_finite(const State& x, std::size_t step) {
  if (!x.allFinite()) throw SimulationBlowUp(step, "non-finite state");
}

Eigen::VectorXd checked_output(const SystemModel& model, const Eigen::VectorXd& y) {
  if (static_cast<std::size_t>(y.size()) != model.output_dim)
    throw ShapeMismatch("measurement of model '" + model.name + "' returned " +
                        std::to_string(y.size()) + " outputs, expected " +
                        std::to_string(model.output_dim));
  return y;
}

State advance_nominal(const SystemModel& model, const State& x, double t, double dt) {
  if (model.time_domain == TimeDomain::discrete) return model.drift(x, t);
  return x + dt * model.drift(x, t);
}

}  // namespace

InitialSpec InitialSpec::gaussian(State mean, Eigen::VectorXd stddev) {
  if (mean.size() != stddev.size())
    throw ShapeMismatch("initial mean and standard deviation differ in length");
  return sampler([mean = std::move(mean), stddev = std::move(stddev)](Rng& rng) {
    std::normal_distribution<double> normal;
    State x(mean.size());
    for (Eigen::Index i = 0; i < mean.size(); ++i) x[i] = mean[i] + stddev[i] * normal(rng);
    return x;
  });
}

State InitialSpec::draw(Rng& rng) const {
  if (is_point()) return std::get<State>(spec_);
  return std::get<Sampler>(spec_)(rng);
}

std::size_t SimConfig::steps() const {
  if (!(dt > 0.0) || !(horizon > 0.0) || !std::isfinite(horizon) || !std::isfinite(dt))
    throw InvalidArgument("horizon and dt must be positive and finite");
  const double ratio = horizon / dt;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded))
    throw InvalidArgument("horizon must be a positive integer multiple of dt");
  return static_cast<std::size_t>(rounded);
}

void validate(const SystemModel& model) {
  if (model.state_dim == 0 || model.output_dim == 0)
    throw InvalidArgument("model dimensions must be positive");
  if (!model.drift || !model.measurement)
    throw InvalidArgument("model '" + model.name + "' needs a drift and a measurement map");
  if (model.diffusion && model.noise_dim == 0)
    throw InvalidArgument("model '" + model.name + "' has a diffusion but noise_dim == 0");
}

DeterministicRun simulate_deterministic(const SystemModel& model, const State& x0,
                                        const SimConfig& sim) {
  validate(model);
  if (static_cast<std::size_t>(x0.size()) != model.state_dim)
    throw ShapeMismatch("initial state has dimension " + std::to_string(x0.size()) +
                        ", model expects " + std::to_string(model.state_dim));
  const std::size_t steps = sim.steps();
  StatePath states(steps + 1, model.state_dim);
  Eigen::MatrixXd outputs(steps + 1, model.output_dim);

  State x = x0;
  require_finite(x, 0);
  for (std::size_t t = 0;; ++t) {
    states.row(t) = x.transpose();
    outputs.row(t) = checked_output(model, model.measurement(x)).transpose();
    if (t == steps) break;
    x = advance_nominal(model, x, static_cast<double>(t) * sim.dt, sim.dt);
    require_finite(x, t + 1);
  }
  if (!outputs.allFinite()) throw SimulationBlowUp(steps, "non-finite output");
  return {std::move(states), Trajectory(std::move(outputs), sim.dt)};
}

Trajectory simulate_stochastic(const SystemModel& model, const InitialSpec& init,
                               const SimConfig& sim, Rng& stream) {
  validate(model);
  const std::size_t steps = sim.steps();
  const bool discrete = model.time_domain == TimeDomain::discrete;
  const double noise_scale = discrete ? 1.0 : std::sqrt(sim.dt);
  std::normal_distribution<double> normal;

  State x = init.draw(stream);
  if (static_cast<std::size_t>(x.size()) != model.state_dim)
    throw ShapeMismatch("initial state has dimension " + std::to_string(x.size()) +
                        ", model expects " + std::to_string(model.state_dim));
  require_finite(x, 0);

  Eigen::MatrixXd outputs(steps + 1, model.output_dim);
  Eigen::VectorXd w(model.noise_dim);
  for (std::size_t t = 0;; ++t) {
    Eigen::VectorXd y;
    if (model.noisy_measurement) {
      y = model.noisy_measurement(x, stream);
    } else {
      y = model.measurement(x);
      if (model.measurement_noise) y += model.measurement_noise(stream);
    }
    outputs.row(t) = checked_output(model, y).transpose();
    if (t == steps) break;

    const double time = static_cast<double>(t) * sim.dt;
    State next = advance_nominal(model, x, time, sim.dt);
    if (model.diffusion) {
      for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = normal(stream);
      next += model.diffusion(x, time) * (noise_scale * w);
    }
    x = std::move(next);
    require_finite(x, t + 1);
  }
  if (!outputs.allFinite()) throw SimulationBlowUp(steps, "non-finite output");
  return Trajectory(std::move(outputs), sim.dt);
}

Trajectory simulate_member(const SystemModel& model, const InitialSpec& init,
                           const SimConfig& sim, std::size_t index) {
  Rng rng = substream(sim.seed, index);
  return simulate_stochastic(model, init, sim, rng);
}

SampleSet sample_output_set(const SystemModel& model, const InitialSpec& init, std::size_t m,
                            const SimConfig& sim, std::string label) {
  if (m < 1) throw InvalidArgument("sample set size must be at least 1");
  std::vector<std::optional<Trajectory>> slots(m);
  parallel_for(m, [&](std::size_t i) { slots[i].emplace(simulate_member(model, init, sim, i)); });
  std::vector<Trajectory> out;
  out.reserve(m);
  for (auto& s : slots) out.push_back(std::move(*s));
  return SampleSet(std::move(out), std::move(label));
}

}  // namespace distkit::dynamics
