#include "hhgq/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "hhgq/errors.hpp"

namespace hhgq {

namespace {

std::string strip_prefix(const ConfigError& e) {
  const std::string what = e.what();
  const std::string prefix = e.field() + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

// Typed, consumption-tracking view of one TOML table.
class Section {
 public:
  Section(const toml::table& table, std::string name, const std::string& source)
      : table_(table), name_(std::move(name)), source_(source) {}

  bool has(const std::string& key) const { return table_.contains(key); }

  std::string location(const std::string& key) const {
    const toml::node* node = table_.get(key);
    const auto& src = node != nullptr ? node->source() : table_.source();
    std::ostringstream os;
    os << source_ << ":" << src.begin.line;
    return os.str();
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ConfigError(name_ + "." + key, location(key) + ": " + message);
  }

  double number(const std::string& key) {
    if (!has(key)) fail(key, "required key is missing");
    return *opt_number(key);
  }
  std::optional<double> opt_number(const std::string& key) {
    const toml::node* node = take(key);
    if (node == nullptr) return std::nullopt;
    if (const auto v = node->value_exact<double>()) return *v;
    if (const auto v = node->value_exact<int64_t>()) return static_cast<double>(*v);
    fail(key, "expected a number");
  }
  double number_or(const std::string& key, double fallback) { return opt_number(key).value_or(fallback); }

  int integer(const std::string& key) {
    if (!has(key)) fail(key, "required key is missing");
    return *opt_integer(key);
  }
  std::optional<int> opt_integer(const std::string& key) {
    const toml::node* node = take(key);
    if (node == nullptr) return std::nullopt;
    const auto v = node->value_exact<int64_t>();
    if (!v) fail(key, "expected an integer");
    if (*v < std::numeric_limits<int>::min() || *v > std::numeric_limits<int>::max()) fail(key, "out of range");
    return static_cast<int>(*v);
  }
  int integer_or(const std::string& key, int fallback) { return opt_integer(key).value_or(fallback); }

  std::string string(const std::string& key) {
    if (!has(key)) fail(key, "required key is missing");
    return *opt_string(key);
  }
  std::optional<std::string> opt_string(const std::string& key) {
    const toml::node* node = take(key);
    if (node == nullptr) return std::nullopt;
    const auto v = node->value_exact<std::string>();
    if (!v) fail(key, "expected a string");
    return *v;
  }

  std::optional<std::vector<int>> opt_int_array(const std::string& key) {
    const toml::node* node = take(key);
    if (node == nullptr) return std::nullopt;
    const toml::array* arr = node->as_array();
    if (arr == nullptr) fail(key, "expected an array of integers");
    std::vector<int> out;
    for (const toml::node& el : *arr) {
      const auto v = el.value_exact<int64_t>();
      if (!v) fail(key, "expected an array of integers");
      out.push_back(static_cast<int>(*v));
    }
    return out;
  }
  std::optional<std::vector<double>> opt_number_array(const std::string& key) {
    const toml::node* node = take(key);
    if (node == nullptr) return std::nullopt;
    const toml::array* arr = node->as_array();
    if (arr == nullptr) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const toml::node& el : *arr) {
      if (const auto d = el.value_exact<double>()) {
        out.push_back(*d);
      } else if (const auto i = el.value_exact<int64_t>()) {
        out.push_back(static_cast<double>(*i));
      } else {
        fail(key, "expected an array of numbers");
      }
    }
    return out;
  }

  const toml::array* opt_table_array(const std::string& key) {
    const toml::node* node = take(key);
    if (node == nullptr) return nullptr;
    const toml::array* arr = node->as_array();
    if (arr == nullptr || !arr->is_array_of_tables()) fail(key, "expected an array of tables");
    return arr;
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& [key, node] : table_) {
      const std::string k(key.str());
      if (!used_.contains(k)) fail(k, "unknown key");
    }
  }

  /// Re-raises a validation error against the line of the offending key.
  [[noreturn]] void rethrow(const ConfigError& e) const {
    std::string key = e.field();
    if (key.rfind(name_ + ".", 0) == 0) key = key.substr(name_.size() + 1);
    fail(key, strip_prefix(e));
  }

 private:
  const toml::node* take(const std::string& key) {
    used_.insert(key);
    return table_.get(key);
  }

  const toml::table& table_;
  std::string name_;
  const std::string& source_;
  std::set<std::string> used_;
};

const toml::table* sub_table(const toml::table& root, const std::string& name, const std::string& source) {
  const toml::node* node = root.get(name);
  if (node == nullptr) return nullptr;
  if (!node->is_table()) {
    throw ConfigError(name, source + ":" + std::to_string(node->source().begin.line) + ": expected a table");
  }
  return node->as_table();
}

FieldConfig parse_field(Section s) {
  FieldConfig f;
  f.kappa = s.number("kappa");
  f.omega = s.number("omega");
  const bool has_alpha = s.has("alpha_abs"), has_peak = s.has("peak_field");
  if (has_alpha == has_peak) s.fail("alpha_abs", "give exactly one of alpha_abs or peak_field");
  if (has_alpha) {
    f.alpha_abs = s.number("alpha_abs");
  } else {
    const double peak = s.number("peak_field");
    if (!(f.kappa > 0.0)) s.fail("kappa", "must be finite and > 0");
    f.alpha_abs = peak / (2.0 * f.kappa);
  }
  f.phase = s.number("phase");
  f.n_cycles = s.integer("n_cycles");
  const std::string env = s.string("envelope");
  if (env == "flat") {
    f.envelope = Envelope::flat();
  } else if (env == "sin2") {
    f.envelope = Envelope::sin_squared(s.integer("envelope_cycles"));
  } else if (env == "gaussian") {
    f.envelope = Envelope::gaussian(s.number("fwhm_cycles"));
  } else {
    s.fail("envelope", "expected \"flat\", \"sin2\" or \"gaussian\", got \"" + env + "\"");
  }
  s.finish();
  try {
    f.validate();
  } catch (const ConfigError& e) {
    s.rethrow(e);
  }
  return f;
}

DipoleEngine parse_engine(Section s, const std::string& source) {
  const std::string kind = s.string("kind");
  DipoleEngine engine;
  if (kind == "sfa") {
    AtomParams atom;
    atom.ip = s.number("ip");
    atom.epsilon = s.number_or("epsilon", atom.epsilon);
    atom.history_cycles = s.number_or("history_cycles", atom.history_cycles);
    atom.taper_fraction = s.number_or("taper_fraction", atom.taper_fraction);
    s.finish();
    try {
      atom.validate();
    } catch (const ConfigError& e) {
      s.rethrow(e);
    }
    engine = DipoleEngine::sfa(atom);
  } else if (kind == "toy") {
    ToyDipoleParams params;
    params.e_ref = s.number("e_ref");
    const toml::array* terms = s.opt_table_array("terms");
    if (terms == nullptr || terms->empty()) s.fail("terms", "the toy engine needs at least one [[engine.terms]]");
    for (const toml::node& node : *terms) {
      Section t(*node.as_table(), "engine.terms", source);
      ToyTerm term;
      term.q = t.integer("q");
      term.c = t.number("c");
      term.p = t.integer("p");
      t.finish();
      if (term.q < 1 || term.q % 2 == 0) t.fail("q", "toy harmonic orders must be odd and >= 1");
      if (term.p < 1) t.fail("p", "power must be >= 1");
      params.terms.push_back(term);
    }
    s.finish();
    try {
      params.validate();
    } catch (const ConfigError& e) {
      s.rethrow(e);
    }
    engine = DipoleEngine::toy(params);
  } else {
    s.fail("kind", "expected \"sfa\" or \"toy\", got \"" + kind + "\"");
  }
  return engine;
}

DriveLimit parse_limit(Section& s) {
  const std::string limit = s.opt_string("limit").value_or("quantum");
  if (limit == "quantum") return DriveLimit::Quantum;
  if (limit == "classical") return DriveLimit::Classical;
  s.fail("limit", "expected \"quantum\" or \"classical\"");
}

}  // namespace

const FieldConfig& ProjectConfig::require_field() const {
  if (!field) throw ConfigError("field", source + ": section [field] is required");
  return *field;
}

TimeGrid ProjectConfig::require_grid() const {
  if (!samples_per_cycle) throw ConfigError("grid", source + ": section [grid] is required");
  return TimeGrid::for_field(require_field(), *samples_per_cycle);
}

const DipoleEngine& ProjectConfig::require_engine() const {
  if (!engine) throw ConfigError("engine", source + ": section [engine] is required");
  return *engine;
}

QRange ProjectConfig::require_q_range() const {
  if (!q_range) throw ConfigError("harmonics", source + ": section [harmonics] is required");
  return *q_range;
}

const StateSpec& ProjectConfig::require_state() const {
  if (!state) throw ConfigError("state", source + ": section [state] is required");
  return *state;
}

const ScenarioConfig& ProjectConfig::require_scenario() const {
  if (!scenario) throw ConfigError("scenario", source + ": section [scenario] is required");
  return *scenario;
}

DrivingState ProjectConfig::drive_or_field() const {
  if (drive) return *drive;
  const FieldConfig& f = require_field();
  return Coherent{std::polar(f.alpha_abs, f.phase)};
}

ProjectConfig parse_config(std::string_view text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
    throw ConfigError("syntax", os.str());
  }

  static const std::set<std::string> known{"field", "grid", "engine", "harmonics", "drive",
                                           "state", "husimi", "scenario"};
  for (const auto& [key, node] : root) {
    if (!known.contains(std::string(key.str()))) {
      throw ConfigError(std::string(key.str()),
                        source + ":" + std::to_string(node.source().begin.line) + ": unknown section");
    }
  }

  ProjectConfig cfg;
  cfg.source = source;

  if (const toml::table* t = sub_table(root, "field", source)) cfg.field = parse_field(Section(*t, "field", source));

  if (const toml::table* t = sub_table(root, "grid", source)) {
    Section s(*t, "grid", source);
    cfg.samples_per_cycle = s.integer("samples_per_cycle");
    s.finish();
    if (*cfg.samples_per_cycle < 2) s.fail("samples_per_cycle", "must be >= 2");
  }

  if (const toml::table* t = sub_table(root, "engine", source)) {
    cfg.engine = parse_engine(Section(*t, "engine", source), source);
  }

  if (const toml::table* t = sub_table(root, "harmonics", source)) {
    Section s(*t, "harmonics", source);
    QRange range{s.integer("q_min"), s.integer("q_max")};
    const std::string window = s.opt_string("window").value_or("none");
    if (window == "none") {
      cfg.window = Window::None;
    } else if (window == "hann") {
      cfg.window = Window::Hann;
    } else {
      s.fail("window", "expected \"none\" or \"hann\"");
    }
    s.finish();
    try {
      range.validate();
    } catch (const ConfigError& e) {
      s.rethrow(e);
    }
    cfg.q_range = range;
  }

  if (const toml::table* t = sub_table(root, "drive", source)) {
    Section s(*t, "drive", source);
    const std::string kind = s.string("kind");
    cfg.quadrature.limit = parse_limit(s);
    cfg.quadrature.radial_nodes = s.integer_or("radial_nodes", cfg.quadrature.radial_nodes);
    cfg.quadrature.angular_nodes = s.integer_or("angular_nodes", cfg.quadrature.angular_nodes);
    if (cfg.quadrature.radial_nodes < 1) s.fail("radial_nodes", "must be >= 1");
    if (cfg.quadrature.angular_nodes < 1) s.fail("angular_nodes", "must be >= 1");
    if (kind == "coherent") {
      const FieldConfig& f = cfg.require_field();
      cfg.drive = Coherent{std::polar(f.alpha_abs, f.phase)};
    } else if (kind == "phase_averaged") {
      cfg.drive = PhaseAveraged{cfg.require_field().alpha_abs, s.integer_or("n_phi", 256)};
    } else if (kind == "fock") {
      cfg.drive = Fock{s.integer("n")};
    } else {
      s.fail("kind", "expected \"coherent\", \"phase_averaged\" or \"fock\", got \"" + kind + "\"");
    }
    s.finish();
    try {
      validate(*cfg.drive);
    } catch (const ConfigError& e) {
      s.rethrow(e);
    }
  }

  if (const toml::table* t = sub_table(root, "state", source)) {
    Section s(*t, "state", source);
    StateSpec st;
    const std::string kind = s.string("kind");
    st.q = s.integer_or("q", 1);
    st.n_max = s.opt_integer("n_max");
    st.max_tail = s.number_or("max_tail", kPoissonTailTolerance);
    st.n_phi = s.integer_or("n_phi", 0);
    if (kind == "coherent") {
      st.kind = StateSpec::Kind::Coherent;
      if (s.has("chi_re") || s.has("chi_im")) st.chi = std::complex<double>(s.number("chi_re"), s.number("chi_im"));
    } else if (kind == "phase_averaged") {
      st.kind = StateSpec::Kind::PhaseAveraged;
      st.magnitude = s.opt_number("chi_abs");
    } else if (kind == "poisson") {
      st.kind = StateSpec::Kind::Poisson;
      st.magnitude = s.number("mean");
    } else if (kind == "driving_mixture") {
      st.kind = StateSpec::Kind::DrivingMixture;
      st.magnitude = cfg.require_field().alpha_abs;
    } else {
      s.fail("kind", "expected \"coherent\", \"phase_averaged\", \"poisson\" or \"driving_mixture\"");
    }
    s.finish();
    if (st.q < 1) s.fail("q", "must be >= 1");
    if (st.n_max && *st.n_max < 0) s.fail("n_max", "must be >= 0");
    if (!(st.max_tail > 0.0)) s.fail("max_tail", "must be > 0");
    if (st.n_phi < 0) s.fail("n_phi", "must be >= 0");
    if (st.magnitude && !(*st.magnitude >= 0.0)) s.fail(kind == "poisson" ? "mean" : "chi_abs", "must be >= 0");
    cfg.state = st;
  }

  if (const toml::table* t = sub_table(root, "husimi", source)) {
    Section s(*t, "husimi", source);
    HusimiGrid h;
    h.center = {s.number_or("center_re", 0.0), s.number_or("center_im", 0.0)};
    h.half_width = s.number("half_width");
    h.points = s.integer("points");
    s.finish();
    if (!(h.half_width > 0.0)) s.fail("half_width", "must be > 0");
    if (h.points < 2) s.fail("points", "must be >= 2");
    cfg.husimi = h;
  }

  if (const toml::table* t = sub_table(root, "scenario", source)) {
    Section s(*t, "scenario", source);
    ScenarioConfig sc;
    try {
      sc.id = scenario_from_string(s.string("id"));
    } catch (const ConfigError&) {
      s.fail("id", "expected A_coherent, B_phase_averaged, C_fock_limit or D_indistinguishability");
    }
    if (auto v = s.opt_int_array("state_orders")) sc.state_orders = *v;
    sc.n_phi = s.integer_or("n_phi", sc.n_phi);
    sc.max_fock_dim = s.integer_or("max_fock_dim", sc.max_fock_dim);
    sc.spectrum_rtol = s.number_or("spectrum_rtol", sc.spectrum_rtol);
    sc.max_tail = s.number_or("max_tail", sc.max_tail);
    if (auto v = s.opt_int_array("fock_n")) sc.fock_n = *v;
    if (auto v = s.opt_int_array("fock_q")) sc.fock_q = *v;
    if (auto v = s.opt_number_array("kappas")) sc.kappas = *v;
    s.finish();
    sc.field = cfg.require_field();
    if (!cfg.samples_per_cycle) throw ConfigError("grid", source + ": section [grid] is required by [scenario]");
    sc.samples_per_cycle = *cfg.samples_per_cycle;
    sc.engine = cfg.require_engine();
    sc.q_range = cfg.require_q_range();
    sc.quadrature = cfg.quadrature;
    try {
      sc.validate();
    } catch (const ConfigError& e) {
      s.rethrow(e);
    }
    cfg.scenario = sc;
  }
  return cfg;
}

ProjectConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace hhgq
