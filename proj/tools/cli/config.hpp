#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "degenlab/bundle.hpp"
#include "degenlab/geometry.hpp"
#include "degenlab/solver.hpp"

namespace degenlab::cli {

/// Parse or validation failure in a config file; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat INI-style config: "section.key" -> raw string value.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config load(const std::string& path);

  /// "section.key=value"; the key must belong to the schema.
  void apply_override(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  const std::string& source() const noexcept { return source_; }

  /// Sorted "key = value" lines; the input of the config hash.
  std::string canonical() const;
  /// SHA-256 of canonical(), lowercase hex.
  std::string hash() const;

 private:
  std::map<std::string, std::string> values_;
  std::string source_;
};

/// Keys accepted in config files, as "section.key".
const std::vector<std::string>& schema_keys();

/// Typed, cross-checked view of a Config.
struct ExperimentConfig {
  // [profile]
  std::string profile_kind;
  double p = 1.0;
  double gamma = 1.0;
  double M = 1.0;
  std::string tail_policy = "closed-form";
  double I_tail = 0.0;
  std::string zeta_family = "constant";
  double zeta_c0 = 1.0;
  double zeta_c1 = 0.0;
  double D = 1.0;
  double Lambda = 1.0;
  // [geometry]
  std::string geometry_kind = "radial";
  int N = 3;
  double L = 1.0;
  int m = 200;
  // [solver]
  std::vector<double> eps_list{1e-3};
  solver::Scheme scheme = solver::Scheme::Implicit;
  double dt = 0.0;
  double T = 1.0;
  int snapshot_stride = 1;
  // [data]
  std::string g_kind = "zero";
  double bump_center = 0.7;
  double bump_half_width = 0.1;
  double bump_height = 0.5;
  double sine_amplitude = 1.0;
  std::string phi_kind = "zero";
  double phi_max = 0.0;
  double t_ramp = 0.1;
  // [degiorgi]
  double b = 0.0;  ///< 0: derived from R and Rprime
  double R = 0.5;
  double Rprime = 0.25;
  double tol = 1e-6;
  double x0 = 0.0;
  int n_max = 8;
  double S = 0.0;  ///< 0: sharp Sobolev constant
  bool excess = true;
  double Tprime = 0.0;  ///< 0: final time
  // [estimates]
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  double energy_bound = 0.05;
  double t_start = 0.0;
  // [output]
  std::string directory = "out";

  std::string hash;
  std::map<std::string, std::string> echo;

  bool calibration() const { return profile_kind == "calibration"; }
  double epsilon() const { return eps_list.back(); }
};

ExperimentConfig resolve(const Config& config);

constitutive::DegeneracyProfile make_profile(const ExperimentConfig& cfg);
solver::Geometry make_geometry(const ExperimentConfig& cfg);
solver::SolverConfig make_solver_config(const ExperimentConfig& cfg, double epsilon);

}  // namespace degenlab::cli
