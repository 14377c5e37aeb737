#include "distkit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "distkit/error.hpp"

namespace distkit::io {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell.push_back(ch);
    }
  }
  cells.push_back(cell);
  for (auto& c : cells) {
    const auto first = c.find_first_not_of(" \t");
    const auto last = c.find_last_not_of(" \t");
    c = first == std::string::npos ? std::string{} : c.substr(first, last - first + 1);
  }
  return cells;
}

double parse_number(const std::string& cell, const std::string& source, std::size_t line,
                    std::size_t column) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (!cell.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (cell.empty() || ec != std::errc() || ptr != end)
    throw ParseError(source, line, column, "non-numeric value '" + cell + "'");
  if (!std::isfinite(v)) throw ParseError(source, line, column, "non-finite value '" + cell + "'");
  return v;
}

std::string join_row(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s;
}

struct PendingTrajectory {
  std::string id;
  std::size_t first_line = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
};

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectories_csv(std::ostream& out, const SampleSet& set) {
  const std::size_t ny = set.front().output_dim();
  out << "traj_id,t";
  for (std::size_t k = 1; k <= ny; ++k) out << ",y" << k;
  out << '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& tr = set[i];
    for (Eigen::Index t = 0; t < tr.values().rows(); ++t) {
      out << i << ',' << format_double(static_cast<double>(t) * tr.dt());
      for (Eigen::Index k = 0; k < tr.values().cols(); ++k)
        out << ',' << format_double(tr.values()(t, k));
      out << '\n';
    }
  }
}

void write_trajectories_csv(const std::filesystem::path& path, const SampleSet& set) {
  std::ostringstream s;
  write_trajectories_csv(s, set);
  write_file(path, s.str());
}

SampleSet read_trajectories_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(source + ": empty file, expected a header row");
  ++line_no;
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "traj_id" || header[1] != "t")
    throw ParseError(source, 1, 1, "header must be traj_id,t,y1,...,y{n_y}");
  const std::size_t ny = header.size() - 2;
  for (std::size_t k = 0; k < ny; ++k) {
    if (header[k + 2] != "y" + std::to_string(k + 1))
      throw ParseError(source, 1, k + 3,
                       "expected column 'y" + std::to_string(k + 1) + "', found '" + header[k + 2] + "'");
  }

  std::vector<PendingTrajectory> pending;
  std::unordered_set<std::string> closed;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError(source, line_no, std::min(cells.size(), header.size()) + 1,
                       "expected " + std::to_string(header.size()) + " columns, found " +
                           std::to_string(cells.size()));
    const std::string& id = cells[0];
    if (id.empty()) throw ParseError(source, line_no, 1, "missing traj_id");
    if (pending.empty() || pending.back().id != id) {
      if (!pending.empty()) closed.insert(pending.back().id);
      if (closed.count(id))
        throw ParseError(source, line_no, 1, "rows of trajectory '" + id + "' are not contiguous");
      pending.push_back({id, line_no, {}, {}});
    }
    auto& cur = pending.back();
    cur.times.push_back(parse_number(cells[1], source, line_no, 2));
    std::vector<double> row(ny);
    for (std::size_t k = 0; k < ny; ++k) row[k] = parse_number(cells[k + 2], source, line_no, k + 3);
    cur.rows.push_back(std::move(row));
  }
  if (pending.empty()) throw ParseError(source + ": no trajectory rows");

  const std::size_t length = pending.front().rows.size();
  for (const auto& p : pending) {
    if (p.rows.size() != length)
      throw ParseError(source, p.first_line, 1,
                       "trajectory '" + p.id + "' has " + std::to_string(p.rows.size()) +
                           " rows, expected " + std::to_string(length) + " (ragged trajectories)");
  }

  const auto& first = pending.front();
  const double t0 = first.times.front();
  const double dt = length > 1 ? first.times[1] - first.times[0] : 1.0;
  if (!(dt > 0.0))
    throw ParseError(source, first.first_line + 1, 2, "time column must be increasing");

  std::vector<Trajectory> trajectories;
  trajectories.reserve(pending.size());
  for (const auto& p : pending) {
    Eigen::MatrixXd values(length, ny);
    for (std::size_t t = 0; t < length; ++t) {
      const double expected = t0 + static_cast<double>(t) * dt;
      if (std::abs(p.times[t] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
        throw ParseError(source, p.first_line + t, 2,
                         "trajectory '" + p.id + "' has time " + format_double(p.times[t]) +
                             ", expected " + format_double(expected) + " for a constant step");
      for (std::size_t k = 0; k < ny; ++k) values(t, k) = p.rows[t][k];
    }
    trajectories.emplace_back(std::move(values), dt);
  }
  return SampleSet(std::move(trajectories), source);
}

SampleSet load_trajectories_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trajectory file " + path.string());
  return read_trajectories_csv(in, path.string());
}

void write_state_path_csv(std::ostream& out, const dynamics::StatePath& states, double dt) {
  out << "t";
  for (Eigen::Index k = 1; k <= states.cols(); ++k) out << ",x" << k;
  out << '\n';
  for (Eigen::Index t = 0; t < states.rows(); ++t) {
    out << format_double(static_cast<double>(t) * dt);
    for (Eigen::Index k = 0; k < states.cols(); ++k) out << ',' << format_double(states(t, k));
    out << '\n';
  }
}

namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

nlohmann::json to_json(const mmd::TestResult& r, double sigma) {
  return {
      {"mmd_hat", r.mmd_hat},
      {"mmd_sq_hat", r.mmd_sq_hat},
      {"kappa", r.kappa},
      {"ratio", number_or_null(r.ratio)},
      {"trigger", r.trigger},
      {"m", r.m},
      {"n", r.n},
      {"alpha", r.alpha},
      {"method", mmd::to_string(r.method)},
      {"sigma", sigma},
      {"degenerate_pool", r.degenerate_pool},
  };
}

nlohmann::json to_json(const gramian::GramianResult& g, const dynamics::State& x0) {
  nlohmann::json w = nlohmann::json::array();
  for (Eigen::Index i = 0; i < g.W.rows(); ++i) {
    const Eigen::VectorXd row = g.W.row(i).transpose();
    w.push_back(vector_json(row));
  }
  return {
      {"x0", vector_json(x0)},
      {"epsilon", g.epsilon},
      {"W", w},
      {"eigenvalues", vector_json(g.eigenvalues)},
      {"null_direction", g.null_direction ? vector_json(*g.null_direction) : nlohmann::json(nullptr)},
      {"degenerate", g.degenerate},
  };
}

nlohmann::json sweep_header(const sweep::SweepResult& r) {
  nlohmann::json columns = nlohmann::json::array();
  for (Eigen::Index k = 1; k <= r.x_a.size(); ++k) columns.push_back("x" + std::to_string(k));
  for (const char* c : {"mmd_hat", "kappa", "ratio", "trigger", "status"}) columns.push_back(c);
  return {
      {"model", r.model_name},
      {"grid",
       {{"dims", r.grid.dims},
        {"lower", r.grid.lower},
        {"upper", r.grid.upper},
        {"points", r.grid.points},
        {"base_state", vector_json(r.grid.base_state)}}},
      {"reference_state", vector_json(r.x_a)},
      {"sigma", r.sigma},
      {"kernel_bound", r.kernel_bound},
      {"alpha", r.test.alpha},
      {"method", mmd::to_string(r.test.method)},
      {"n_permutations", r.test.n_permutations},
      {"m", r.m},
      {"n", r.n},
      {"seed", r.sim.seed},
      {"test_seed", r.test.seed},
      {"horizon", r.sim.horizon},
      {"dt", r.sim.dt},
      {"cells", r.records.size()},
      {"columns", columns},
  };
}

void write_sweep_table(std::ostream& out, const sweep::SweepResult& r) {
  std::vector<std::string> head;
  for (Eigen::Index k = 1; k <= r.x_a.size(); ++k) head.push_back("x" + std::to_string(k));
  for (const char* c : {"mmd_hat", "kappa", "ratio", "trigger", "status"}) head.emplace_back(c);
  out << join_row(head) << '\n';
  for (const auto& rec : r.records) {
    std::vector<std::string> row;
    for (Eigen::Index k = 0; k < rec.x_b.size(); ++k) row.push_back(format_double(rec.x_b[k]));
    row.push_back(format_double(rec.mmd_hat));
    row.push_back(format_double(rec.kappa));
    row.push_back(format_double(rec.ratio));
    row.push_back(rec.trigger ? "1" : "0");
    row.push_back(rec.status == sweep::CellStatus::ok ? "ok" : "error");
    out << join_row(row) << '\n';
  }
}

void write_class_table(std::ostream& out, const sweep::SweepResult& r) {
  std::vector<std::string> head;
  for (Eigen::Index k = 1; k <= r.x_a.size(); ++k) head.push_back("x" + std::to_string(k));
  out << join_row(head) << '\n';
  for (const auto& x : sweep::indistinguishability_class(r)) {
    std::vector<std::string> row;
    for (Eigen::Index k = 0; k < x.size(); ++k) row.push_back(format_double(x[k]));
    out << join_row(row) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace distkit::io
