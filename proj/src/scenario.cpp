// SPDX-License-Identifier: Apache-2.0

#include "irsuav/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "irsuav/error.hpp"

namespace irsuav {
namespace {

constexpr std::uint64_t kPresetSeed = 20210617;

// Wraps a YAML node with its dotted field path for diagnostics.
class Field {
 public:
  Field(YAML::Node node, std::string path, const std::string& source) : node_(node), path_(std::move(path)), source_(source) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << source_;
    if (node_.IsDefined() && node_.Mark().line >= 0) os << ':' << node_.Mark().line + 1;
    os << ": field '" << path_ << "': " << what;
    raise(ErrorKind::ConfigError, os.str());
  }

  bool present() const { return node_.IsDefined() && !node_.IsNull(); }

  Field child(const std::string& key) const {
    return Field(node_[key], path_.empty() ? key : path_ + "." + key, source_);
  }

  // Rejects keys outside `allowed` so typos surface instead of silently
  // falling back to defaults.
  void only(std::initializer_list<std::string_view> allowed) const {
    if (!present()) return;
    if (!node_.IsMap()) fail("expected a mapping");
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) Field(kv.first, path_.empty() ? key : path_ + "." + key, source_).fail("unknown field");
    }
  }

  template <typename T>
  T as(const char* type) const {
    if (!node_.IsScalar()) fail(std::string("expected ") + type);
    try {
      return node_.as<T>();
    } catch (const YAML::Exception&) {
      fail(std::string("expected ") + type);
    }
  }

  double number() const {
    const double v = as<double>("a number");
    if (!std::isfinite(v)) fail("must be finite");
    return v;
  }

  template <typename T>
  void read(const std::string& key, T& out) const {
    const Field f = child(key);
    if (!f.present()) return;
    if constexpr (std::is_same_v<T, double>) {
      out = f.number();
    } else if constexpr (std::is_same_v<T, int>) {
      out = f.as<int>("an integer");
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      out = f.as<std::uint64_t>("an unsigned 64-bit integer");
    } else {
      out = f.as<std::string>("a string");
    }
  }

  std::vector<double> numbers() const {
    if (!node_.IsSequence()) fail("expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node_.size(); ++i)
      out.push_back(Field(node_[i], path_ + "[" + std::to_string(i) + "]", source_).number());
    return out;
  }

  void read_point(const std::string& key, Vec2& out) const {
    const Field f = child(key);
    if (!f.present()) return;
    const auto v = f.numbers();
    if (v.size() != 2) f.fail("expected [x, y]");
    out = Vec2(v[0], v[1]);
  }

  const YAML::Node& node() const { return node_; }

 private:
  YAML::Node node_;
  std::string path_;
  const std::string& source_;
};

double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void emit_point(YAML::Emitter& out, const char* key, const Vec2& p) {
  out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << num(p.x()) << num(p.y()) << YAML::EndSeq;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::UavIrs: return "uav_irs";
    case Mode::UavNoIrs: return "uav_no_irs";
    case Mode::BsIrs: return "bs_irs";
    case Mode::BsNoIrs: return "bs_no_irs";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : kAllModes)
    if (to_string(m) == name) return m;
  raise(ErrorKind::ConfigError, "unknown mode '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::None: return "none";
    case SweepAxis::PmaxDbm: return "pmax_dbm";
    case SweepAxis::MElements: return "m_elements";
    case SweepAxis::BobY: return "bob_y";
  }
  return "unknown";
}

SweepAxis parse_axis(std::string_view name) {
  for (SweepAxis a : {SweepAxis::None, SweepAxis::PmaxDbm, SweepAxis::MElements, SweepAxis::BobY})
    if (to_string(a) == name) return a;
  raise(ErrorKind::ConfigError, "unknown sweep axis '" + std::string(name) + "'");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void Scenario::validate() const {
  auto fail = [](const std::string& field, const std::string& what) {
    raise(ErrorKind::ConfigError, "field '" + field + "': " + what);
  };
  if (scenario_id.empty()) fail("scenario_id", "must not be empty");
  for (char c : scenario_id)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') fail("scenario_id", "must not contain CSV metacharacters");
  if (modes.empty()) fail("modes", "at least one mode required");
  if (std::set<Mode>(modes.begin(), modes.end()).size() != modes.size()) fail("modes", "duplicate mode");
  if (trials < 1) fail("trials", "must be at least 1");
  if (!(p_max > 0.0)) fail("p_max_dbm", "must be finite");
  if (!(r_min >= 0.0) || !std::isfinite(r_min)) fail("r_min", "must be non-negative");
  if (max_iters < 1) fail("solver.max_iters", "must be at least 1");
  if (!(tol > 0.0)) fail("solver.tol", "must be positive");
  if (!(box.lo.x() < box.hi.x() && box.lo.y() < box.hi.y())) fail("search_box", "lo must be below hi");
  if (!(bs_position.z() > layout.irs_height)) fail("geometry.bs_position", "must be above the IRS");
  try {
    layout.validate();
  } catch (const Error& e) {
    fail("geometry", e.what());
  }
  try {
    radio.validate();
  } catch (const Error& e) {
    fail("radio", e.what());
  }
  if (sweep.axis != SweepAxis::None && sweep.values.empty()) fail("sweep.values", "must not be empty");
  for (double v : sweep.values) {
    if (!std::isfinite(v)) fail("sweep.values", "must be finite");
    if (sweep.axis == SweepAxis::MElements && (v < 1.0 || v != std::floor(v)))
      fail("sweep.values", "element counts must be positive integers");
  }
}

Scenario Scenario::at_sweep(std::size_t index) const {
  Scenario s = *this;
  const double v = sweep_value(index);
  switch (sweep.axis) {
    case SweepAxis::None: break;
    case SweepAxis::PmaxDbm: s.p_max = dbm_to_watts(v); break;
    case SweepAxis::MElements: s.radio.n_elements = static_cast<int>(v); break;
    case SweepAxis::BobY: s.layout.bob_xy.y() = v; break;
  }
  return s;
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    raise(ErrorKind::ConfigError, source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  const Field top(root, "", source);
  if (!top.present() || !root.IsMap()) top.fail("top level must be a mapping");
  top.only({"scenario_id", "modes", "trials", "base_seed", "p_max_dbm", "r_min", "geometry", "radio", "search_box",
            "solver", "sweep"});

  Scenario s;
  top.read("scenario_id", s.scenario_id);
  top.read("trials", s.trials);
  top.read("base_seed", s.base_seed);
  top.read("r_min", s.r_min);
  if (const Field f = top.child("p_max_dbm"); f.present()) s.p_max = dbm_to_watts(f.number());

  if (const Field f = top.child("modes"); f.present()) {
    if (!f.node().IsSequence()) f.fail("expected a list of modes");
    s.modes.clear();
    for (std::size_t i = 0; i < f.node().size(); ++i) {
      const Field m(f.node()[i], "modes[" + std::to_string(i) + "]", source);
      try {
        s.modes.push_back(parse_mode(m.as<std::string>("a mode name")));
      } catch (const Error&) {
        m.fail("unknown mode (expected uav_irs, uav_no_irs, bs_irs or bs_no_irs)");
      }
    }
  }

  const Field geo = top.child("geometry");
  geo.only({"uav_height", "irs_height", "uav_xy", "bob_xy", "eve_xy", "irs_xy", "bs_position"});
  if (geo.present()) {
    geo.read("uav_height", s.layout.uav_height);
    geo.read("irs_height", s.layout.irs_height);
    geo.read_point("uav_xy", s.layout.uav_xy);
    geo.read_point("bob_xy", s.layout.bob_xy);
    geo.read_point("eve_xy", s.layout.eve_xy);
    geo.read_point("irs_xy", s.layout.irs_xy);
    if (const Field f = geo.child("bs_position"); f.present()) {
      const auto v = f.numbers();
      if (v.size() != 3) f.fail("expected [x, y, z]");
      s.bs_position = Eigen::Vector3d(v[0], v[1], v[2]);
    }
  }

  const Field radio = top.child("radio");
  radio.only({"beta0_db", "pathloss_exponents", "k_min_db", "k_max_db", "noise_bob_dbm", "noise_eve_dbm",
              "n_antennas", "n_elements"});
  if (radio.present()) {
    if (const Field f = radio.child("beta0_db"); f.present()) s.radio.beta0 = db_to_linear(f.number());
    const Field pl = radio.child("pathloss_exponents");
    pl.only({"ab", "ae", "ar", "rb", "re"});
    if (pl.present()) {
      pl.read("ab", s.radio.exponents.ab);
      pl.read("ae", s.radio.exponents.ae);
      pl.read("ar", s.radio.exponents.ar);
      pl.read("rb", s.radio.exponents.rb);
      pl.read("re", s.radio.exponents.re);
    }
    const Field kmin = radio.child("k_min_db");
    const Field kmax = radio.child("k_max_db");
    if (kmin.present() || kmax.present()) {
      const double lo = kmin.present() ? kmin.number() : linear_to_db(s.radio.rician_a1);
      const double hi = kmax.present()
                            ? kmax.number()
                            : linear_to_db(s.radio.rician_a1 * std::exp(s.radio.rician_a2 * std::numbers::pi / 2));
      try {
        std::tie(s.radio.rician_a1, s.radio.rician_a2) = rician_coefficients(db_to_linear(lo), db_to_linear(hi));
      } catch (const Error& e) {
        (kmax.present() ? kmax : kmin).fail(e.what());
      }
    }
    if (const Field f = radio.child("noise_bob_dbm"); f.present()) s.radio.noise_bob = dbm_to_watts(f.number());
    if (const Field f = radio.child("noise_eve_dbm"); f.present()) s.radio.noise_eve = dbm_to_watts(f.number());
    radio.read("n_antennas", s.radio.n_antennas);
    radio.read("n_elements", s.radio.n_elements);
  }

  const Field box = top.child("search_box");
  box.only({"lo", "hi"});
  if (box.present()) {
    box.read_point("lo", s.box.lo);
    box.read_point("hi", s.box.hi);
  }

  const Field solver = top.child("solver");
  solver.only({"max_iters", "tol"});
  if (solver.present()) {
    solver.read("max_iters", s.max_iters);
    solver.read("tol", s.tol);
  }

  const Field sweep = top.child("sweep");
  sweep.only({"axis", "values"});
  if (sweep.present()) {
    const Field axis = sweep.child("axis");
    if (!axis.present()) sweep.fail("missing 'axis'");
    try {
      s.sweep.axis = parse_axis(axis.as<std::string>("an axis name"));
    } catch (const Error&) {
      axis.fail("unknown axis (expected pmax_dbm, m_elements or bob_y)");
    }
    if (const Field v = sweep.child("values"); v.present()) s.sweep.values = v.numbers();
  }

  try {
    s.validate();
  } catch (const Error& e) {
    raise(ErrorKind::ConfigError, source + ": " + std::string(e.what()).substr(std::string("ConfigError: ").size()));
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::ConfigError, path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string emit_scenario(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "scenario_id" << YAML::Value << s.scenario_id;
  out << YAML::Key << "modes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (Mode m : s.modes) out << std::string(to_string(m));
  out << YAML::EndSeq;
  out << YAML::Key << "trials" << YAML::Value << s.trials;
  out << YAML::Key << "base_seed" << YAML::Value << s.base_seed;
  out << YAML::Key << "p_max_dbm" << YAML::Value << num(watts_to_dbm(s.p_max));
  out << YAML::Key << "r_min" << YAML::Value << num(s.r_min);

  out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "uav_height" << YAML::Value << num(s.layout.uav_height);
  out << YAML::Key << "irs_height" << YAML::Value << num(s.layout.irs_height);
  emit_point(out, "uav_xy", s.layout.uav_xy);
  emit_point(out, "bob_xy", s.layout.bob_xy);
  emit_point(out, "eve_xy", s.layout.eve_xy);
  emit_point(out, "irs_xy", s.layout.irs_xy);
  out << YAML::Key << "bs_position" << YAML::Value << YAML::Flow << YAML::BeginSeq << num(s.bs_position.x())
      << num(s.bs_position.y()) << num(s.bs_position.z()) << YAML::EndSeq;
  out << YAML::EndMap;

  const double k_max = s.radio.rician_a1 * std::exp(s.radio.rician_a2 * std::numbers::pi / 2);
  out << YAML::Key << "radio" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "beta0_db" << YAML::Value << num(linear_to_db(s.radio.beta0));
  out << YAML::Key << "pathloss_exponents" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "ab" << YAML::Value << num(s.radio.exponents.ab);
  out << YAML::Key << "ae" << YAML::Value << num(s.radio.exponents.ae);
  out << YAML::Key << "ar" << YAML::Value << num(s.radio.exponents.ar);
  out << YAML::Key << "rb" << YAML::Value << num(s.radio.exponents.rb);
  out << YAML::Key << "re" << YAML::Value << num(s.radio.exponents.re);
  out << YAML::EndMap;
  out << YAML::Key << "k_min_db" << YAML::Value << num(linear_to_db(s.radio.rician_a1));
  out << YAML::Key << "k_max_db" << YAML::Value << num(linear_to_db(k_max));
  out << YAML::Key << "noise_bob_dbm" << YAML::Value << num(watts_to_dbm(s.radio.noise_bob));
  out << YAML::Key << "noise_eve_dbm" << YAML::Value << num(watts_to_dbm(s.radio.noise_eve));
  out << YAML::Key << "n_antennas" << YAML::Value << s.radio.n_antennas;
  out << YAML::Key << "n_elements" << YAML::Value << s.radio.n_elements;
  out << YAML::EndMap;

  out << YAML::Key << "search_box" << YAML::Value << YAML::BeginMap;
  emit_point(out, "lo", s.box.lo);
  emit_point(out, "hi", s.box.hi);
  out << YAML::EndMap;

  out << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "max_iters" << YAML::Value << s.max_iters;
  out << YAML::Key << "tol" << YAML::Value << num(s.tol);
  out << YAML::EndMap;

  if (s.sweep.axis != SweepAxis::None) {
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "axis" << YAML::Value << std::string(to_string(s.sweep.axis));
    out << YAML::Key << "values" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double v : s.sweep.values) out << num(v);
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4"}; }

Scenario preset(std::string_view name) {
  Scenario s;
  s.base_seed = kPresetSeed;
  s.scenario_id = std::string(name);
  if (name == "fig2") {
    s.sweep = {SweepAxis::PmaxDbm, {30, 35, 40, 45, 50}};
  } else if (name == "fig3") {
    s.sweep = {SweepAxis::MElements, {10, 20, 30, 40, 50, 60}};
  } else if (name == "fig4") {
    s.sweep = {SweepAxis::BobY, {0, 5, 10, 15, 20, 25, 30, 35, 40}};
  } else {
    raise(ErrorKind::ConfigError, "unknown preset '" + std::string(name) + "' (expected fig2, fig3 or fig4)");
  }
  return s;
}

ModeSetup mode_setup(const Scenario& s, Mode mode) {
  ModeSetup out;
  Problem& p = out.problem;
  p.layout = s.layout;
  p.radio = s.radio;
  p.p_max = s.p_max;
  p.r_min = s.r_min;
  p.box = s.box;
  out.config.max_iters = s.max_iters;
  out.config.tol = s.tol;

  const bool bs = mode == Mode::BsIrs || mode == Mode::BsNoIrs;
  const bool irs = mode == Mode::UavIrs || mode == Mode::BsIrs;
  if (bs) {
    p.layout.uav_xy = s.bs_position.head<2>();
    p.layout.uav_height = s.bs_position.z();
    out.config.enable_deployment = false;
    out.movable = false;
  }
  if (!irs) {
    p.cascade_enabled = false;
    out.config.enable_reflection = false;
  }
  return out;
}

}  // namespace irsuav
