#include "distkit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "distkit/error.hpp"

namespace distkit::config {
namespace {

using nlohmann::json;

// Object view that rejects keys it was not asked about.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const json& at(const std::string& key) {
    if (!has(key)) throw ConfigError("missing required key " + where(key));
    return j_.at(key);
  }

  std::string where(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [key, _] : j_.items())
      if (!seen_.count(key)) throw ConfigError("unknown key " + where(key));
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_double(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

std::uint64_t as_uint(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ConfigError(where + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

Eigen::VectorXd as_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = as_double(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

Eigen::MatrixXd as_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where + " must be a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXd m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto row = as_vector(j[r], where + "[" + std::to_string(r) + "]");
    if (static_cast<std::size_t>(row.size()) != cols) throw ConfigError(where + " has ragged rows");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

template <int R, int C>
Eigen::Matrix<double, R, C> fixed_matrix(const json& j, const std::string& where) {
  const Eigen::MatrixXd m = as_matrix(j, where);
  if (m.rows() != R || m.cols() != C)
    throw ConfigError(where + " must be " + std::to_string(R) + "x" + std::to_string(C));
  return m;
}

template <int N>
Eigen::Matrix<double, N, 1> fixed_vector(const json& j, const std::string& where) {
  const Eigen::VectorXd v = as_vector(j, where);
  if (v.size() != N) throw ConfigError(where + " must have " + std::to_string(N) + " entries");
  return v;
}

json vector_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vector_json(m.row(r).transpose()));
  return rows;
}

std::vector<std::size_t> as_index_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(static_cast<std::size_t>(as_uint(j[i], where + "[" + std::to_string(i) + "]")));
  return out;
}

std::vector<double> as_double_list(const json& j, const std::string& where) {
  const auto v = as_vector(j, where);
  return {v.data(), v.data() + v.size()};
}

ModelParams parse_model(const json& j) {
  Section s(j, "model");
  const json& name_j = s.at("name");
  if (!name_j.is_string()) throw ConfigError("model.name must be a string");
  const std::string name = name_j.get<std::string>();
  ModelParams out;
  if (name == "linear_drift") {
    examples::LinearDriftParams p;
    if (s.has("A")) p.A = fixed_matrix<2, 2>(s.at("A"), s.where("A"));
    if (s.has("A0")) p.A0 = fixed_vector<2>(s.at("A0"), s.where("A0"));
    if (s.has("omega")) p.omega = as_double(s.at("omega"), s.where("omega"));
    if (s.has("Sigma")) p.Sigma = fixed_matrix<2, 2>(s.at("Sigma"), s.where("Sigma"));
    if (s.has("C")) p.C = fixed_vector<2>(s.at("C"), s.where("C")).transpose();
    if (s.has("meas_var")) p.meas_var = as_double(s.at("meas_var"), s.where("meas_var"));
    if (p.meas_var < 0.0) throw ConfigError("model.meas_var must be nonnegative");
    out = p;
  } else if (name == "duffing") {
    examples::DuffingParams p;
    if (s.has("b1")) p.b1 = as_double(s.at("b1"), s.where("b1"));
    if (s.has("b2")) p.b2 = as_double(s.at("b2"), s.where("b2"));
    if (s.has("meas_var")) p.meas_var = as_double(s.at("meas_var"), s.where("meas_var"));
    if (p.b1 < 0.0 || p.b2 < 0.0 || p.meas_var < 0.0)
      throw ConfigError("Duffing gains and variance must be nonnegative");
    out = p;
  } else if (name == "discrete_linear") {
    DiscreteLinearParams p;
    if (s.has("A")) p.A = as_matrix(s.at("A"), s.where("A"));
    if (s.has("C")) p.C = as_matrix(s.at("C"), s.where("C"));
    if (s.has("Q")) p.Q = as_matrix(s.at("Q"), s.where("Q"));
    if (s.has("R")) p.R = as_matrix(s.at("R"), s.where("R"));
    try {
      (void)examples::discrete_linear_system(p.A, p.C, p.Q, p.R);
    } catch (const Error& e) {
      throw ConfigError(std::string("model: ") + e.what());
    }
    out = p;
  } else {
    throw ConfigError("unknown model '" + name +
                      "' (expected linear_drift, duffing or discrete_linear)");
  }
  s.finish();
  return out;
}

json serialize_model(const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, examples::LinearDriftParams>) {
          return {{"name", "linear_drift"},
                  {"A", matrix_json(p.A)},
                  {"A0", vector_json(p.A0)},
                  {"omega", p.omega},
                  {"Sigma", matrix_json(p.Sigma)},
                  {"C", vector_json(p.C.transpose())},
                  {"meas_var", p.meas_var}};
        } else if constexpr (std::is_same_v<T, examples::DuffingParams>) {
          return {{"name", "duffing"}, {"b1", p.b1}, {"b2", p.b2}, {"meas_var", p.meas_var}};
        } else {
          return {{"name", "discrete_linear"},
                  {"A", matrix_json(p.A)},
                  {"C", matrix_json(p.C)},
                  {"Q", matrix_json(p.Q)},
                  {"R", matrix_json(p.R)}};
        }
      },
      params);
}

InitialState parse_initial(const json& j, const std::string& where) {
  if (j.is_array()) return {as_vector(j, where), std::nullopt};
  Section s(j, where);
  InitialState st{as_vector(s.at("mean"), s.where("mean")),
                  as_vector(s.at("std"), s.where("std"))};
  s.finish();
  if (st.stddev->size() != st.mean.size())
    throw ConfigError(where + ": mean and std differ in length");
  if ((st.stddev->array() < 0.0).any()) throw ConfigError(where + ".std must be nonnegative");
  return st;
}

}  // namespace

dynamics::InitialSpec InitialState::spec() const {
  if (stddev) return dynamics::InitialSpec::gaussian(mean, *stddev);
  return dynamics::InitialSpec::point(mean);
}

std::string ExperimentConfig::model_name() const {
  return serialize_model(model).at("name").get<std::string>();
}

dynamics::SystemModel ExperimentConfig::build_model() const {
  return std::visit(
      [](const auto& p) -> dynamics::SystemModel {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, examples::LinearDriftParams>)
          return examples::linear_drift_system(p);
        else if constexpr (std::is_same_v<T, examples::DuffingParams>)
          return examples::duffing_system(p);
        else
          return examples::discrete_linear_system(p.A, p.C, p.Q, p.R);
      },
      model);
}

mmd::TestConfig ExperimentConfig::test_config() const {
  mmd::TestConfig t;
  t.alpha = alpha;
  t.method = method;
  t.n_permutations = n_permutations;
  t.seed = test_seed.value_or(sim.seed);
  return t;
}

void ExperimentConfig::override_seed(std::uint64_t seed) {
  sim.seed = seed;
  test_seed = seed;
}

ExperimentConfig parse(const json& doc) {
  ExperimentConfig cfg;
  Section root(doc, "config");

  if (root.has("model")) cfg.model = parse_model(root.at("model"));
  const std::size_t state_dim = cfg.build_model().state_dim;

  if (root.has("initial_states")) {
    const json& list = root.at("initial_states");
    if (!list.is_array()) throw ConfigError("config.initial_states must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto st = parse_initial(list[i], "config.initial_states[" + std::to_string(i) + "]");
      if (static_cast<std::size_t>(st.mean.size()) != state_dim)
        throw ConfigError("config.initial_states[" + std::to_string(i) +
                          "] has the wrong state dimension");
      cfg.initial_states.push_back(std::move(st));
    }
  }

  if (root.has("sim")) {
    Section s(root.at("sim"), "config.sim");
    if (s.has("horizon")) cfg.sim.horizon = as_double(s.at("horizon"), s.where("horizon"));
    if (s.has("dt")) cfg.sim.dt = as_double(s.at("dt"), s.where("dt"));
    if (s.has("seed")) cfg.sim.seed = as_uint(s.at("seed"), s.where("seed"));
    s.finish();
  }
  try {
    (void)cfg.sim.steps();
  } catch (const Error& e) {
    throw ConfigError(std::string("config.sim: ") + e.what());
  }

  if (root.has("samples")) {
    Section s(root.at("samples"), "config.samples");
    if (s.has("m")) cfg.m = as_uint(s.at("m"), s.where("m"));
    if (s.has("n")) cfg.n = as_uint(s.at("n"), s.where("n"));
    s.finish();
  }
  if (cfg.m < 1 || cfg.n < 1) throw ConfigError("sample sizes must be positive");

  if (root.has("kernel")) {
    Section s(root.at("kernel"), "config.kernel");
    if (s.has("sigma")) {
      const json& v = s.at("sigma");
      if (v.is_string() && v.get<std::string>() == "auto") {
        cfg.sigma.reset();
      } else {
        cfg.sigma = as_double(v, s.where("sigma"));
        if (!(*cfg.sigma > 0.0)) throw ConfigError("config.kernel.sigma must be positive or \"auto\"");
      }
    }
    if (s.has("sigma_cell_cap"))
      cfg.sigma_cell_cap = as_uint(s.at("sigma_cell_cap"), s.where("sigma_cell_cap"));
    s.finish();
  }

  if (root.has("test")) {
    Section s(root.at("test"), "config.test");
    if (s.has("alpha")) cfg.alpha = as_double(s.at("alpha"), s.where("alpha"));
    if (s.has("method")) {
      const json& v = s.at("method");
      if (!v.is_string()) throw ConfigError("config.test.method must be a string");
      try {
        cfg.method = mmd::threshold_method_from_string(v.get<std::string>());
      } catch (const Error& e) {
        throw ConfigError(std::string("config.test.method: ") + e.what());
      }
    }
    if (s.has("n_permutations"))
      cfg.n_permutations = as_uint(s.at("n_permutations"), s.where("n_permutations"));
    if (s.has("seed")) cfg.test_seed = as_uint(s.at("seed"), s.where("seed"));
    s.finish();
  }
  try {
    mmd::validate(cfg.test_config());
  } catch (const Error& e) {
    throw ConfigError(std::string("config.test: ") + e.what());
  }

  if (root.has("sweep")) {
    Section s(root.at("sweep"), "config.sweep");
    SweepSettings sw;
    sw.reference = as_vector(s.at("reference"), s.where("reference"));
    sw.grid.dims = s.has("dims") ? as_index_list(s.at("dims"), s.where("dims"))
                                 : std::vector<std::size_t>{0, 1};
    sw.grid.lower = as_double_list(s.at("lower"), s.where("lower"));
    sw.grid.upper = as_double_list(s.at("upper"), s.where("upper"));
    sw.grid.points = as_index_list(s.at("points"), s.where("points"));
    sw.grid.base_state =
        s.has("base_state") ? as_vector(s.at("base_state"), s.where("base_state")) : sw.reference;
    s.finish();
    if (static_cast<std::size_t>(sw.reference.size()) != state_dim)
      throw ConfigError("config.sweep.reference has the wrong state dimension");
    try {
      sw.grid.validate(state_dim);
    } catch (const Error& e) {
      throw ConfigError(std::string("config.sweep: ") + e.what());
    }
    cfg.sweep = std::move(sw);
  }

  if (root.has("gramian")) {
    Section s(root.at("gramian"), "config.gramian");
    GramianSettings g;
    g.x0 = as_vector(s.at("x0"), s.where("x0"));
    if (s.has("epsilon")) g.epsilon = as_double(s.at("epsilon"), s.where("epsilon"));
    s.finish();
    if (static_cast<std::size_t>(g.x0.size()) != state_dim)
      throw ConfigError("config.gramian.x0 has the wrong state dimension");
    if (!(g.epsilon > 0.0)) throw ConfigError("config.gramian.epsilon must be positive");
    cfg.gramian = std::move(g);
  }

  if (root.has("output")) {
    Section s(root.at("output"), "config.output");
    if (s.has("dir")) {
      if (!s.at("dir").is_string()) throw ConfigError("config.output.dir must be a string");
      cfg.output_dir = s.at("dir").get<std::string>();
    }
    s.finish();
  }

  root.finish();
  return cfg;
}

ExperimentConfig parse_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse(doc);
}

ExperimentConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

json serialize(const ExperimentConfig& cfg) {
  json doc;
  doc["model"] = serialize_model(cfg.model);
  json initial = json::array();
  for (const auto& st : cfg.initial_states) {
    if (st.stddev)
      initial.push_back({{"mean", vector_json(st.mean)}, {"std", vector_json(*st.stddev)}});
    else
      initial.push_back(vector_json(st.mean));
  }
  doc["initial_states"] = initial;
  doc["sim"] = {{"horizon", cfg.sim.horizon}, {"dt", cfg.sim.dt}, {"seed", cfg.sim.seed}};
  doc["samples"] = {{"m", cfg.m}, {"n", cfg.n}};
  doc["kernel"] = {{"sigma", cfg.sigma ? json(*cfg.sigma) : json("auto")},
                   {"sigma_cell_cap", cfg.sigma_cell_cap}};
  doc["test"] = {{"alpha", cfg.alpha},
                 {"method", mmd::to_string(cfg.method)},
                 {"n_permutations", cfg.n_permutations}};
  if (cfg.test_seed) doc["test"]["seed"] = *cfg.test_seed;
  if (cfg.sweep) {
    const auto& g = cfg.sweep->grid;
    doc["sweep"] = {{"reference", vector_json(cfg.sweep->reference)},
                    {"dims", g.dims},
                    {"lower", g.lower},
                    {"upper", g.upper},
                    {"points", g.points},
                    {"base_state", vector_json(g.base_state)}};
  }
  if (cfg.gramian)
    doc["gramian"] = {{"x0", vector_json(cfg.gramian->x0)}, {"epsilon", cfg.gramian->epsilon}};
  doc["output"] = {{"dir", cfg.output_dir}};
  return doc;
}

}  // namespace distkit::config
