#include "cli/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "degenlab/error.hpp"

namespace degenlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': expected a number, got '" + raw + "'");
  }
  return v;
}

void check_known(const std::string& key, const std::string& where) {
  const auto& keys = schema_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
void require(bool ok, const std::string& key, const T& what) {
  if (!ok) {
    std::ostringstream msg;
    msg << "key '" << key << "': " << what;
    throw ConfigError(msg.str());
  }
}

}  // namespace

const std::vector<std::string>& schema_keys() {
  static const std::vector<std::string> keys = {
      "profile.kind",       "profile.p",           "profile.gamma",
      "profile.M",          "profile.tail_policy", "profile.I_tail",
      "profile.zeta",       "profile.zeta_c0",     "profile.zeta_c1",
      "profile.D",          "profile.Lambda",      "geometry.kind",
      "geometry.N",         "geometry.L",          "geometry.m",
      "solver.epsilon",     "solver.eps_list",     "solver.scheme",
      "solver.dt",          "solver.T",            "solver.snapshot_stride",
      "data.g",             "data.bump_center",    "data.bump_half_width",
      "data.bump_height",   "data.sine_amplitude", "data.phi",
      "data.phi_max",       "data.t_ramp",         "degiorgi.b",
      "degiorgi.R",         "degiorgi.Rprime",     "degiorgi.tol",
      "degiorgi.x0",        "degiorgi.n_max",      "degiorgi.S",
      "degiorgi.excess",    "degiorgi.Tprime",     "estimates.samples",
      "estimates.seed",     "estimates.energy_bound", "estimates.t_start",
      "output.directory",
  };
  return keys;
}

Config Config::parse(std::istream& in, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream msg;
    msg << source << ":" << e.line() << ": " << e.message();
    throw ConfigError(msg.str());
  }
  Config out;
  out.source_ = source;
  for (const auto& [section, child] : tree) {
    if (child.empty()) {
      throw ConfigError(source + ": key '" + section + "' must appear inside a [section]");
    }
    for (const auto& [key, value] : child) {
      const std::string full = section + "." + key;
      check_known(full, source);
      out.values_[full] = trim(value.data());
    }
  }
  return out;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
  check_known(key, "override");
  values_[key] = value;
}

std::string Config::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(source_ + ": missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  return parse_number(key, get_string(key));
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double v = get_double(key);
  require(v == std::floor(v) && std::abs(v) < 1e9, key, "expected an integer");
  return static_cast<int>(v);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = lower(get_string(key));
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<double> Config::get_list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(get_string(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(key, item));
  require(!out.empty(), key, "empty list");
  return out;
}

std::string Config::canonical() const {
  std::ostringstream out;
  for (const auto& [key, value] : values_) {
    if (key.rfind("output.", 0) == 0) continue;  // where results go is not part of the experiment
    out << key << " = " << value << "\n";
  }
  return out.str();
}

std::string Config::hash() const {
  const std::string text = canonical();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

ExperimentConfig resolve(const Config& c) {
  ExperimentConfig e;
  e.hash = c.hash();
  e.echo = c.values();

  e.profile_kind = lower(c.get_string("profile.kind"));
  const std::vector<std::string> kinds = {"power", "exp-inverse", "zeta-bounded", "zeta-unbounded",
                                          "calibration"};
  require(std::find(kinds.begin(), kinds.end(), e.profile_kind) != kinds.end(), "profile.kind",
          "expected power, exp-inverse, zeta-bounded, zeta-unbounded or calibration");
  e.p = c.get_double("profile.p", e.p);
  e.gamma = c.get_double("profile.gamma", e.gamma);
  e.M = c.get_double("profile.M", e.M);
  e.tail_policy = lower(c.get_string("profile.tail_policy", e.profile_kind == "power"
                                                                ? "closed-form"
                                                                : "additive-constant"));
  require(e.tail_policy == "closed-form" || e.tail_policy == "additive-constant",
          "profile.tail_policy", "expected closed-form or additive-constant");
  require(e.tail_policy == "additive-constant" || e.profile_kind == "power" ||
              e.profile_kind == "calibration",
          "profile.tail_policy", "closed-form tails exist only for the power profile");
  e.I_tail = c.get_double("profile.I_tail", e.I_tail);
  e.zeta_family = lower(c.get_string("profile.zeta", e.profile_kind == "zeta-unbounded" ? "log" : "constant"));
  e.zeta_c0 = c.get_double("profile.zeta_c0", e.zeta_c0);
  e.zeta_c1 = c.get_double("profile.zeta_c1", e.zeta_c1);
  e.D = c.get_double("profile.D", e.D);
  e.Lambda = c.get_double("profile.Lambda", e.Lambda);
  require(e.M > 0.0, "profile.M", "must be positive");
  require(e.I_tail >= 0.0, "profile.I_tail", "must be non-negative");
  require(e.Lambda > 0.0, "profile.Lambda", "must be positive");
  require(e.D > 0.0, "profile.D", "must be positive");

  e.geometry_kind = lower(c.get_string("geometry.kind", e.geometry_kind));
  require(e.geometry_kind == "radial" || e.geometry_kind == "interval", "geometry.kind",
          "expected radial or interval");
  e.N = c.get_int("geometry.N", e.N);
  e.L = c.get_double("geometry.L", e.L);
  e.m = c.get_int("geometry.m", e.m);
  require(e.m >= 16, "geometry.m", "need at least 16 cells");
  require(e.L > 0.0, "geometry.L", "must be positive");
  require(e.N >= 1, "geometry.N", "must be at least 1");

  if (c.has("solver.eps_list")) {
    e.eps_list = c.get_list("solver.eps_list");
  } else {
    e.eps_list = {c.get_double("solver.epsilon", 1e-3)};
  }
  for (std::size_t k = 0; k < e.eps_list.size(); ++k) {
    require(e.eps_list[k] > 0.0, "solver.eps_list", "values must be positive");
    require(k == 0 || e.eps_list[k] < e.eps_list[k - 1], "solver.eps_list",
            "values must be strictly decreasing");
  }
  const std::string scheme = lower(c.get_string("solver.scheme", "implicit"));
  require(scheme == "implicit" || scheme == "explicit", "solver.scheme",
          "expected implicit or explicit");
  e.scheme = scheme == "implicit" ? solver::Scheme::Implicit : solver::Scheme::Explicit;
  const std::string dt = lower(c.get_string("solver.dt", "auto"));
  e.dt = dt == "auto" ? 0.0 : parse_number("solver.dt", dt);
  require(e.dt >= 0.0, "solver.dt", "must be positive or auto");
  e.T = c.get_double("solver.T", e.T);
  require(e.T > 0.0, "solver.T", "must be positive");
  e.snapshot_stride = c.get_int("solver.snapshot_stride", e.snapshot_stride);
  require(e.snapshot_stride >= 1, "solver.snapshot_stride", "must be at least 1");

  e.g_kind = lower(c.get_string("data.g", e.g_kind));
  require(e.g_kind == "zero" || e.g_kind == "bump" || e.g_kind == "sine", "data.g",
          "expected zero, bump or sine");
  e.bump_center = c.get_double("data.bump_center", e.bump_center);
  e.bump_half_width = c.get_double("data.bump_half_width", e.bump_half_width);
  e.bump_height = c.get_double("data.bump_height", e.bump_height);
  e.sine_amplitude = c.get_double("data.sine_amplitude", e.sine_amplitude);
  e.phi_kind = lower(c.get_string("data.phi", e.phi_kind));
  require(e.phi_kind == "zero" || e.phi_kind == "ramp", "data.phi", "expected zero or ramp");
  e.phi_max = c.get_double("data.phi_max", e.phi_max);
  e.t_ramp = c.get_double("data.t_ramp", e.t_ramp);
  require(e.bump_half_width > 0.0, "data.bump_half_width", "must be positive");
  require(e.bump_height >= 0.0, "data.bump_height", "must be non-negative");
  require(e.phi_max >= 0.0, "data.phi_max", "must be non-negative");
  require(e.t_ramp > 0.0, "data.t_ramp", "must be positive");

  const std::string b = lower(c.get_string("degiorgi.b", "auto"));
  e.b = b == "auto" ? 0.0 : parse_number("degiorgi.b", b);
  e.R = c.get_double("degiorgi.R", e.R);
  e.Rprime = c.get_double("degiorgi.Rprime", e.Rprime);
  e.tol = c.get_double("degiorgi.tol", e.tol);
  e.x0 = c.get_double("degiorgi.x0", e.x0);
  e.n_max = c.get_int("degiorgi.n_max", e.n_max);
  const std::string S = lower(c.get_string("degiorgi.S", "auto"));
  e.S = S == "auto" ? 0.0 : parse_number("degiorgi.S", S);
  e.excess = c.get_bool("degiorgi.excess", e.excess);
  const std::string Tp = lower(c.get_string("degiorgi.Tprime", "final"));
  e.Tprime = Tp == "final" ? 0.0 : parse_number("degiorgi.Tprime", Tp);
  require(e.b == 0.0 || e.b > 2.0, "degiorgi.b", "must exceed 2 (or be auto)");
  require(e.R > 0.0 && e.Rprime > 0.0 && e.Rprime < e.R, "degiorgi.Rprime",
          "need 0 < Rprime < R");
  require(e.tol > 0.0, "degiorgi.tol", "must be positive");
  require(e.n_max >= 1, "degiorgi.n_max", "must be at least 1");
  require(e.S >= 0.0, "degiorgi.S", "must be positive (or auto)");
  require(e.Tprime >= 0.0 && e.Tprime <= e.T, "degiorgi.Tprime", "must lie in (0, T] (or final)");

  const double samples = c.get_double("estimates.samples", static_cast<double>(e.samples));
  require(samples >= 1.0 && samples == std::floor(samples), "estimates.samples",
          "expected a positive integer");
  e.samples = static_cast<std::size_t>(samples);
  const double seed = c.get_double("estimates.seed", static_cast<double>(e.seed));
  require(seed >= 0.0 && seed == std::floor(seed), "estimates.seed",
          "expected a non-negative integer");
  e.seed = static_cast<std::uint64_t>(seed);
  e.energy_bound = c.get_double("estimates.energy_bound", e.energy_bound);
  e.t_start = c.get_double("estimates.t_start", e.t_start);

  e.directory = c.get_string("output.directory", e.directory);

  // Cross-field consistency.
  if (e.geometry_kind == "radial") {
    require(e.x0 == 0.0, "degiorgi.x0", "radial geometries are centred at x0 = 0");
  } else {
    require(e.x0 >= 0.0 && e.x0 <= e.L, "degiorgi.x0", "must lie in [0, L]");
  }
  if (e.g_kind == "bump") {
    const double free_radius = std::abs(e.bump_center - e.x0) - e.bump_half_width;
    require(e.R <= free_radius, "degiorgi.R", "must not exceed the bump-free radius around x0");
  }
  const auto g = make_solver_config(e, e.epsilon()).g;
  require(g(e.x0) == 0.0, "degiorgi.x0", "must lie in the zero set of the initial excess g");
  return e;
}

constitutive::DegeneracyProfile make_profile(const ExperimentConfig& cfg) {
  using constitutive::DegeneracyProfile;
  const std::string& k = cfg.profile_kind;
  if (k == "calibration") return DegeneracyProfile::calibration(cfg.D);
  if (k == "power") {
    return cfg.tail_policy == "closed-form" ? DegeneracyProfile::power(cfg.p, cfg.M)
                                            : DegeneracyProfile::power_truncated(cfg.p, cfg.M, cfg.I_tail);
  }
  if (k == "exp-inverse") return DegeneracyProfile::exp_inverse(cfg.gamma, cfg.M, cfg.I_tail);

  const double M = cfg.M;
  const double c0 = cfg.zeta_c0;
  const double c1 = cfg.zeta_c1;
  if (k == "zeta-bounded") {
    if (cfg.zeta_family == "constant") {
      if (!(c0 > 0.0)) throw ConfigError("key 'profile.zeta_c0': must be positive");
      return DegeneracyProfile::zeta_bounded([c0](double) { return c0; }, M, cfg.I_tail,
                                             "zeta-constant");
    }
    if (cfg.zeta_family == "oscillating") {
      if (!(c0 > std::abs(c1))) throw ConfigError("key 'profile.zeta_c1': need |c1| < c0");
      return DegeneracyProfile::zeta_bounded(
          [c0, c1, M](double s) { return c0 + c1 * std::sin(std::log(M / s)); }, M, cfg.I_tail,
          "zeta-oscillating");
    }
    throw ConfigError("key 'profile.zeta': bounded families are constant or oscillating");
  }
  if (cfg.zeta_family != "log") {
    throw ConfigError("key 'profile.zeta': the unbounded family is log");
  }
  if (!(c0 > 0.0) || !(c1 > 0.0)) {
    throw ConfigError("key 'profile.zeta_c1': the log family needs c0 > 0 and c1 > 0");
  }
  auto zeta = [c0, c1, M](double s) { return c0 + c1 * std::log(M / s); };
  return DegeneracyProfile::zeta_unbounded(zeta, zeta, M, cfg.I_tail, "zeta-log");
}

solver::Geometry make_geometry(const ExperimentConfig& cfg) {
  return cfg.geometry_kind == "radial" ? solver::Geometry::radial(cfg.N, cfg.L, cfg.m)
                                       : solver::Geometry::interval(cfg.L, cfg.m);
}

solver::SolverConfig make_solver_config(const ExperimentConfig& cfg, double epsilon) {
  solver::SolverConfig s;
  s.epsilon = epsilon;
  s.scheme = cfg.scheme;
  s.dt = cfg.dt;
  s.T = cfg.T;
  s.snapshot_stride = cfg.snapshot_stride;
  if (cfg.g_kind == "bump") {
    s.g = solver::cosine_bump(cfg.bump_center, cfg.bump_half_width, cfg.bump_height);
  } else if (cfg.g_kind == "sine") {
    s.g = solver::sine_mode(cfg.L, cfg.sine_amplitude);
  }
  if (cfg.phi_kind == "ramp") s.phi = solver::boundary_ramp(cfg.phi_max, cfg.t_ramp);
  return s;
}

}  // namespace degenlab::cli
