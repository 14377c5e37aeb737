#include "distkit/commands.hpp"

#include <sstream>

#include "distkit/dynamics.hpp"
#include "distkit/error.hpp"
#include "distkit/io.hpp"
#include "distkit/kernels.hpp"
#include "distkit/rng.hpp"

namespace distkit::commands {
namespace {

std::vector<SampleSet> simulate_sets(const config::ExperimentConfig& cfg) {
  if (cfg.initial_states.empty()) throw ConfigError("config.initial_states is empty");
  const auto model = cfg.build_model();
  std::vector<SampleSet> sets;
  for (std::size_t i = 0; i < cfg.initial_states.size(); ++i) {
    dynamics::SimConfig sim = cfg.sim;
    sim.seed = derive_seed(cfg.sim.seed, i);
    sets.push_back(dynamics::sample_output_set(model, cfg.initial_states[i].spec(), cfg.m, sim,
                                               "set_" + std::to_string(i)));
  }
  return sets;
}

}  // namespace

std::vector<std::filesystem::path> cmd_simulate(const config::ExperimentConfig& cfg,
                                                const std::filesystem::path& out_dir) {
  const auto sets = simulate_sets(cfg);
  std::vector<std::filesystem::path> paths;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto path = out_dir / ("set_" + std::to_string(i) + ".csv");
    io::write_trajectories_csv(path, sets[i]);
    paths.push_back(std::move(path));
  }
  return paths;
}

TestOutcome cmd_test(const std::filesystem::path& set_a, const std::filesystem::path& set_b,
                     const config::ExperimentConfig& cfg) {
  const SampleSet a = io::load_trajectories_csv(set_a);
  const SampleSet b = io::load_trajectories_csv(set_b);
  require_comparable(a, b);
  if (a.size() != b.size())
    throw InvalidArgument("sample sizes differ: " + set_a.string() + " has m=" +
                          std::to_string(a.size()) + ", " + set_b.string() + " has n=" +
                          std::to_string(b.size()));
  kernels::KernelConfig kcfg;
  kcfg.sigma = cfg.sigma ? *cfg.sigma : kernels::median_pairwise_distance(a, b);
  return {mmd::two_sample_test(a, b, kcfg, cfg.test_config()), kcfg.sigma};
}

sweep::SweepResult cmd_sweep(const config::ExperimentConfig& cfg,
                             const std::filesystem::path& out_dir) {
  if (!cfg.sweep) throw ConfigError("config has no sweep section");
  const auto model = cfg.build_model();
  sweep::SweepOptions opt;
  opt.m = cfg.m;
  if (cfg.m != cfg.n) throw ConfigError("sweeps require samples.m == samples.n");
  if (cfg.sigma) opt.kernel = kernels::KernelConfig{*cfg.sigma, 1.0};
  opt.sigma_cell_cap = cfg.sigma_cell_cap;
  opt.test = cfg.test_config();

  auto result = sweep::grid_sweep(model, cfg.sweep->reference, cfg.sweep->grid, cfg.sim, opt);

  io::write_file(out_dir / "sweep_header.json", io::sweep_header(result).dump(2) + "\n");
  std::ostringstream table;
  io::write_sweep_table(table, result);
  io::write_file(out_dir / "sweep.csv", table.str());
  std::ostringstream cls;
  io::write_class_table(cls, result);
  io::write_file(out_dir / "class.csv", cls.str());

  try {
    const auto nominal = dynamics::simulate_deterministic(model, cfg.sweep->reference, cfg.sim);
    std::ostringstream path;
    io::write_state_path_csv(path, nominal.states, cfg.sim.dt);
    io::write_file(out_dir / "nominal_states.csv", path.str());
  } catch (const SimulationBlowUp&) {
  }
  return result;
}

nlohmann::json cmd_gramian(const config::ExperimentConfig& cfg) {
  if (!cfg.gramian) throw ConfigError("config has no gramian section");
  const auto model = cfg.build_model();
  const auto g = gramian::empirical_gramian(model, cfg.gramian->x0, cfg.gramian->epsilon, cfg.sim);
  return io::to_json(g, cfg.gramian->x0);
}

double cmd_sigma(const std::vector<std::pair<std::filesystem::path, std::filesystem::path>>& pairs) {
  std::vector<std::pair<SampleSet, SampleSet>> sets;
  for (const auto& [a, b] : pairs)
    sets.emplace_back(io::load_trajectories_csv(a), io::load_trajectories_csv(b));
  return kernels::sigma_meta_heuristic(sets);
}

double cmd_sigma(const config::ExperimentConfig& cfg) {
  auto sets = simulate_sets(cfg);
  if (sets.size() < 2) throw ConfigError("sigma from a config needs at least two initial states");
  std::vector<std::pair<SampleSet, SampleSet>> pairs;
  for (std::size_t i = 1; i < sets.size(); ++i) pairs.emplace_back(sets[0], sets[i]);
  return kernels::sigma_meta_heuristic(pairs);
}

std::string summarize(const TestOutcome& o) {
  const auto& r = o.result;
  std::ostringstream s;
  s << "MMD estimate   " << io::format_double(r.mmd_hat) << "\n"
    << "threshold      " << io::format_double(r.kappa) << " (" << mmd::to_string(r.method)
    << ", alpha=" << r.alpha << ")\n"
    << "ratio          " << io::format_double(r.ratio) << "\n"
    << "sample sizes   m=" << r.m << " n=" << r.n << "\n"
    << "kernel sigma   " << io::format_double(o.sigma) << "\n"
    << "verdict        "
    << (r.trigger ? "distinguishable (null rejected)" : "not distinguishable at this level")
    << "\n";
  if (r.degenerate_pool) s << "warning        all pooled trajectories are identical\n";
  return s.str();
}

}  // namespace distkit::commands
