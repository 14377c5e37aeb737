#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "distkit/dynamics.hpp"
#include "distkit/gramian.hpp"
#include "distkit/mmd_test.hpp"
#include "distkit/sweep.hpp"
#include "distkit/trajectory.hpp"

namespace distkit::io {

/// Shortest round-trippable text for a double: %.17g, with "nan", "inf" and
/// "-inf" for non-finite values.
std::string format_double(double v);

/// Trajectory table. Header `traj_id,t,y1,...,y{n_y}`; one row per time step,
/// rows ordered by (traj_id, t); traj_id is the member index and t = step * dt.
void write_trajectories_csv(std::ostream& out, const SampleSet& set);
void write_trajectories_csv(const std::filesystem::path& path, const SampleSet& set);

/// Parses a trajectory table. Rows of one traj_id must be contiguous and
/// their t column must advance by a constant dt. Throws ParseError with the
/// line and column of the offending cell, or naming the trajectory id for
/// ragged input. A file with single-row trajectories gets dt = 1.
SampleSet read_trajectories_csv(std::istream& in, const std::string& source = "<stream>");
SampleSet load_trajectories_csv(const std::filesystem::path& path);

/// State path table with header `t,x1,...,x{n_x}`.
void write_state_path_csv(std::ostream& out, const dynamics::StatePath& states, double dt);

nlohmann::json to_json(const mmd::TestResult& r, double sigma);
nlohmann::json to_json(const gramian::GramianResult& g, const dynamics::State& x0);

/// Sweep header: grid, sigma, alpha, m, n, seeds, reference state.
nlohmann::json sweep_header(const sweep::SweepResult& r);

/// Sweep table with columns x1..x{n_x},mmd_hat,kappa,ratio,trigger,status.
/// trigger is 1 or 0; status is "ok" or "error". Error cells carry nan values.
void write_sweep_table(std::ostream& out, const sweep::SweepResult& r);

/// Indistinguishability class as a table with columns x1..x{n_x}.
void write_class_table(std::ostream& out, const sweep::SweepResult& r);

/// Writes `text` to `path`, creating parent directories. Throws Error when
/// the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace distkit::io
