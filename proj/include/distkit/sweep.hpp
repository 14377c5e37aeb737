#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "distkit/dynamics.hpp"
#include "distkit/kernels.hpp"
#include "distkit/mmd_test.hpp"

namespace distkit::sweep {

/// Regular grid over some coordinates of the state; the others stay at
/// base_state. Cell index c enumerates the grid with the first swept
/// dimension varying fastest.
struct GridSpec {
  std::vector<std::size_t> dims;  ///< swept state coordinates
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::size_t> points;
  dynamics::State base_state;  ///< values of non-swept coordinates

  /// Throws InvalidArgument on inconsistent sizes or fewer than 2 points.
  void validate(std::size_t state_dim) const;
  std::size_t cell_count() const;
  /// Grid coordinate k (0-based) along swept dimension d.
  double coordinate(std::size_t d, std::size_t k) const;
  dynamics::State cell_state(std::size_t cell) const;
};

/// Default 2-D grid over state coordinates 0 and 1.
GridSpec grid_2d(double x1_lo, double x1_hi, double x2_lo, double x2_hi, std::size_t n1,
                 std::size_t n2);

struct SweepOptions {
  std::size_t m = 30;
  /// Fixed kernel; empty selects the meta-heuristic over the sweep's own pairs.
  std::optional<kernels::KernelConfig> kernel;
  /// Cells used for the auto bandwidth; 0 uses every cell.
  std::size_t sigma_cell_cap = 200;
  mmd::TestConfig test;
};

enum class CellStatus { ok, error };

struct CellRecord {
  dynamics::State x_b;
  double mmd_hat = 0.0;
  double kappa = 0.0;
  double ratio = 0.0;
  bool trigger = false;
  CellStatus status = CellStatus::ok;
  std::string message;  ///< error description when status == error
};

struct SweepResult {
  std::string model_name;
  GridSpec grid;
  dynamics::State x_a;
  dynamics::SimConfig sim;
  double sigma = 0.0;
  double kernel_bound = 1.0;
  std::size_t m = 0;
  std::size_t n = 0;
  mmd::TestConfig test;
  std::vector<CellRecord> records;
};

/// Tests the output law from x_a against the one from every grid state.
///
/// Seeding: the reference set uses sim seed derive_seed(sim.seed, 0) and cell
/// c uses derive_seed(sim.seed, c + 1); the permutation stream of cell c is
/// derive_seed(test.seed, c). The reference set is generated once. With auto
/// bandwidth, the sigma meta-heuristic runs over (reference, cell) pairs
/// before any test, on at most sigma_cell_cap cells drawn with the stream
/// derive_seed(sim.seed, 2^64 - 1). Cells that blow up are kept with status
/// error. Results do not depend on the thread count.
SweepResult grid_sweep(const dynamics::SystemModel& model, const dynamics::State& x_a,
                       const GridSpec& grid, const dynamics::SimConfig& sim,
                       const SweepOptions& options);

/// States of all ok cells whose test did not trigger.
std::vector<dynamics::State> indistinguishability_class(const SweepResult& result);

struct AlignmentSummary {
  bool empty = true;
  std::size_t count = 0;
  double max_abs = 0.0;
  double mean_abs = 0.0;
};

/// Max and mean of |predicate| over the points; predicate vanishes on the
/// analytic class.
AlignmentSummary class_alignment_metric(const std::vector<dynamics::State>& points,
                                        const std::function<double(const dynamics::State&)>& predicate);

}  // namespace distkit::sweep
