#include "distkit/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "distkit/error.hpp"
#include "distkit/parallel.hpp"
#include "distkit/rng.hpp"

namespace distkit::sweep {
namespace {

constexpr std::uint64_t kSigmaSubsampleStream = std::numeric_limits<std::uint64_t>::max();

dynamics::SimConfig reseeded(const dynamics::SimConfig& sim, std::uint64_t index) {
  dynamics::SimConfig out = sim;
  out.seed = derive_seed(sim.seed, index);
  return out;
}

}  // namespace

void GridSpec::validate(std::size_t state_dim) const {
  if (dims.empty()) throw InvalidArgument("grid needs at least one swept dimension");
  if (lower.size() != dims.size() || upper.size() != dims.size() || points.size() != dims.size())
    throw InvalidArgument("grid bounds and point counts must match the swept dimensions");
  if (static_cast<std::size_t>(base_state.size()) != state_dim)
    throw InvalidArgument("grid base state must have the model's state dimension");
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (dims[d] >= state_dim) throw InvalidArgument("swept dimension out of range");
    if (points[d] < 2) throw InvalidArgument("grid needs at least 2 points per dimension");
    if (!(upper[d] > lower[d])) throw InvalidArgument("grid upper bound must exceed lower bound");
  }
}

std::size_t GridSpec::cell_count() const {
  return std::accumulate(points.begin(), points.end(), std::size_t{1}, std::multiplies<>());
}

double GridSpec::coordinate(std::size_t d, std::size_t k) const {
  const double step = (upper[d] - lower[d]) / static_cast<double>(points[d] - 1);
  return k + 1 == points[d] ? upper[d] : lower[d] + static_cast<double>(k) * step;
}

dynamics::State GridSpec::cell_state(std::size_t cell) const {
  dynamics::State x = base_state;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    x[static_cast<Eigen::Index>(dims[d])] = coordinate(d, cell % points[d]);
    cell /= points[d];
  }
  return x;
}

GridSpec grid_2d(double x1_lo, double x1_hi, double x2_lo, double x2_hi, std::size_t n1,
                 std::size_t n2) {
  GridSpec g;
  g.dims = {0, 1};
  g.lower = {x1_lo, x2_lo};
  g.upper = {x1_hi, x2_hi};
  g.points = {n1, n2};
  g.base_state = dynamics::State::Zero(2);
  return g;
}

SweepResult grid_sweep(const dynamics::SystemModel& model, const dynamics::State& x_a,
                       const GridSpec& grid, const dynamics::SimConfig& sim,
                       const SweepOptions& options) {
  grid.validate(model.state_dim);
  mmd::validate(options.test);
  if (options.m < 2) throw InvalidArgument("sweep needs m >= 2 trajectories per set");
  if (static_cast<std::size_t>(x_a.size()) != model.state_dim)
    throw ShapeMismatch("reference state has the wrong dimension");

  const std::size_t cells = grid.cell_count();
  const SampleSet reference = dynamics::sample_output_set(
      model, dynamics::InitialSpec::point(x_a), options.m, reseeded(sim, 0), "reference");

  auto simulate_cell = [&](std::size_t c) {
    return dynamics::sample_output_set(model, dynamics::InitialSpec::point(grid.cell_state(c)),
                                       options.m, reseeded(sim, c + 1));
  };

  kernels::KernelConfig kcfg;
  if (options.kernel) {
    kcfg = *options.kernel;
  } else {
    std::vector<std::size_t> chosen(cells);
    std::iota(chosen.begin(), chosen.end(), 0);
    if (options.sigma_cell_cap != 0 && cells > options.sigma_cell_cap) {
      Rng rng = substream(sim.seed, kSigmaSubsampleStream);
      std::shuffle(chosen.begin(), chosen.end(), rng);
      chosen.resize(options.sigma_cell_cap);
      std::sort(chosen.begin(), chosen.end());
    }
    std::vector<double> medians(chosen.size(), std::numeric_limits<double>::quiet_NaN());
    parallel_for(chosen.size(), [&](std::size_t i) {
      try {
        medians[i] = kernels::median_pairwise_distance(reference, simulate_cell(chosen[i]));
      } catch (const SimulationBlowUp&) {
      } catch (const DegenerateData&) {
        medians[i] = 0.0;
      }
    });
    std::erase_if(medians, [](double v) { return std::isnan(v); });
    kcfg.sigma = kernels::sigma_from_medians(std::move(medians));
  }
  kernels::validate(kcfg);

  SweepResult result;
  result.model_name = model.name;
  result.grid = grid;
  result.x_a = x_a;
  result.sim = sim;
  result.sigma = kcfg.sigma;
  result.kernel_bound = kcfg.bound;
  result.m = options.m;
  result.n = options.m;
  result.test = options.test;
  result.records.resize(cells);

  parallel_for(cells, [&](std::size_t c) {
    CellRecord& rec = result.records[c];
    rec.x_b = grid.cell_state(c);
    try {
      mmd::TestConfig tcfg = options.test;
      tcfg.seed = derive_seed(options.test.seed, c);
      const auto r = mmd::two_sample_test(reference, simulate_cell(c), kcfg, tcfg);
      rec.mmd_hat = r.mmd_hat;
      rec.kappa = r.kappa;
      rec.ratio = r.ratio;
      rec.trigger = r.trigger;
    } catch (const SimulationBlowUp& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rec.mmd_hat = rec.kappa = rec.ratio = nan;
      rec.status = CellStatus::error;
      rec.message = e.what();
    }
  });
  return result;
}

std::vector<dynamics::State> indistinguishability_class(const SweepResult& result) {
  std::vector<dynamics::State> out;
  for (const auto& r : result.records)
    if (r.status == CellStatus::ok && !r.trigger) out.push_back(r.x_b);
  return out;
}

AlignmentSummary class_alignment_metric(const std::vector<dynamics::State>& points,
                                        const std::function<double(const dynamics::State&)>& predicate) {
  AlignmentSummary s;
  if (points.empty()) return s;
  s.empty = false;
  s.count = points.size();
  double total = 0.0;
  for (const auto& p : points) {
    const double v = std::abs(predicate(p));
    s.max_abs = std::max(s.max_abs, v);
    total += v;
  }
  s.mean_abs = total / static_cast<double>(points.size());
  return s;
}

}  // namespace distkit::sweep
