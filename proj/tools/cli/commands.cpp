#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>

#include "cli/output.hpp"
#include "degenlab/admissibility.hpp"
#include "degenlab/bundle.hpp"
#include "degenlab/degiorgi.hpp"
#include "degenlab/estimates.hpp"
#include "degenlab/solver.hpp"

namespace degenlab::cli {

namespace fs = std::filesystem;
using constitutive::ConstitutiveBundle;

namespace {

constexpr double kComparisonTol = 1e-10;
constexpr double kRecursionRelTol = 1e-6;

struct Setup {
  std::shared_ptr<const ConstitutiveBundle> bundle;  // null in calibration mode
  solver::DiffusionModel model;
  solver::Geometry geometry;
};

Setup setup(const ExperimentConfig& cfg) {
  auto geometry = make_geometry(cfg);
  if (cfg.calibration()) {
    return {nullptr, solver::DiffusionModel::calibration(cfg.D), std::move(geometry)};
  }
  auto bundle = std::make_shared<const ConstitutiveBundle>(
      constitutive::build_bundle(make_profile(cfg), cfg.Lambda));
  auto model = solver::DiffusionModel::degenerate(bundle);
  return {std::move(bundle), std::move(model), std::move(geometry)};
}

json config_block(const ExperimentConfig& cfg) {
  json j = json::object();
  for (const auto& [key, value] : cfg.echo) j[key] = value;
  return j;
}

std::vector<solver::Trajectory> run_all(const Setup& s, const ExperimentConfig& cfg,
                                        solver::SweepResult* sweep_out = nullptr) {
  auto base = make_solver_config(cfg, cfg.eps_list.front());
  auto sweep = solver::epsilon_sweep(s.model, s.geometry, base, cfg.eps_list);
  auto runs = sweep.runs;
  if (sweep_out) *sweep_out = std::move(sweep);
  return runs;
}

std::string trajectory_name(std::size_t k, std::size_t count) {
  return count == 1 ? "trajectory" : "trajectory_eps" + std::to_string(k);
}

void write_runs(const std::vector<solver::Trajectory>& runs, const ExperimentConfig& cfg,
                const fs::path& out) {
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const std::string name = trajectory_name(k, runs.size());
    write_trajectory_csv(out / (name + ".csv"), runs[k], cfg.hash);
    json meta = trajectory_metadata(runs[k]);
    meta["config"] = config_block(cfg);
    write_json(out / (name + ".json"), meta, cfg.hash);
  }
}

json notes_for(const ExperimentConfig& cfg) {
  json notes = json::array();
  if (cfg.phi_kind == "ramp") {
    notes.push_back("boundary excess is a linear ramp phi_max * min(t / t_ramp, 1), a modelling choice");
  }
  return notes;
}

degiorgi::DeGiorgiParams degiorgi_params(const ExperimentConfig& cfg, const Setup& s) {
  const int N = s.geometry.dimension();
  if (cfg.b > 0.0) return degiorgi::exponents(N, s.bundle->lambda(), cfg.b, cfg.R, s.bundle->C1(), cfg.S);
  return degiorgi::params_for_radii(N, s.bundle->lambda(), cfg.R, cfg.Rprime, s.bundle->C1(), cfg.S);
}

json params_json(const degiorgi::DeGiorgiParams& p) {
  return {{"N", p.N},         {"b", p.b},         {"R", p.R},
          {"Rprime", p.Rprime}, {"lambda", p.lambda}, {"j", p.j},
          {"k", p.k},         {"gamma", p.gamma}, {"S", p.S},
          {"C1", p.C1},       {"C2", p.C2},       {"D", p.D},
          {"threshold", p.threshold}};
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InadmissibleLambda:
    case ErrorCode::AUnbounded:
    case ErrorCode::NotDegenerate:
    case ErrorCode::RatioUnbounded:
    case ErrorCode::DegenerateRatio:
      return kFailed;
    case ErrorCode::QuadratureDivergent:
    case ErrorCode::StepBlowup:
    case ErrorCode::CflViolation:
    case ErrorCode::NonMonotoneF:
    case ErrorCode::OutOfDomain:
      return kNumerical;
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::BadB:
    case ErrorCode::DimensionUnsupported:
    case ErrorCode::InsufficientSnapshots:
    case ErrorCode::BadParams:
    case ErrorCode::CenterNotClean:
    case ErrorCode::RampActive:
      return kUsage;
  }
  return kNumerical;
}

int cmd_verify(const ExperimentConfig& cfg, const fs::path& out, std::ostream& log) {
  json doc;
  doc["Lambda"] = cfg.Lambda;
  doc["config"] = config_block(cfg);
  if (cfg.calibration()) {
    doc["profile"] = {{"kind", "calibration"}, {"D", cfg.D}};
    doc["passed"] = false;
    doc["errors"] = {std::string(to_string(ErrorCode::NotDegenerate))};
    write_json(out / "report.json", doc, cfg.hash);
    log << "verify: calibration profile is not degenerate\n";
    return kFailed;
  }
  const auto profile = make_profile(cfg);
  const auto r = constitutive::analyze_profile(profile, cfg.Lambda);
  json params = json::object();
  for (const auto& [k, v] : profile.parameters()) params[k] = v;
  doc["profile"] = {{"kind", std::string(constitutive::to_string(profile.kind()))},
                    {"label", profile.label()},
                    {"tail_policy", std::string(constitutive::to_string(profile.tail_policy()))},
                    {"M", profile.upper()},
                    {"I_tail", profile.tail()},
                    {"parameters", params}};
  doc["lambda"] = r.lambda;
  doc["A"] = r.A;
  doc["a"] = r.a;
  doc["a_band"] = r.a_band;
  doc["B"] = r.B;
  doc["mu"] = r.mu;
  doc["C1"] = r.C1;
  doc["C1_kind"] = "empirical";
  doc["lambda_range"] = {{"lower", 0.0}, {"upper", r.lambda_upper}};
  doc["A2_deviation"] = r.A2_deviation;
  doc["probe_grid"] = {{"lo", r.probe_lo}, {"hi", r.probe_hi}, {"count", r.probe_count}};
  const auto& c = r.checks;
  doc["checks"] = {{"A_finite", c.A_finite},   {"lambda_ok", c.lambda_ok},
                   {"a_ok", c.a_ok},           {"B_finite", c.B_finite},
                   {"F_monotone", c.F_monotone}, {"A2_ok", c.A2_ok},
                   {"G_bound", c.G_bound},     {"C1_finite", c.C1_finite}};
  json errors = json::array();
  for (auto e : r.errors) errors.push_back(std::string(to_string(e)));
  doc["errors"] = errors;
  doc["notes"] = r.notes;
  doc["passed"] = r.passed;
  write_json(out / "report.json", doc, cfg.hash);
  log << "verify: " << (r.passed ? "admissible" : "not admissible") << " (A = " << r.A
      << ", C1 = " << r.C1 << ", A2 deviation = " << r.A2_deviation << ")\n";
  return r.passed ? kPass : kFailed;
}

int cmd_solve(const ExperimentConfig& cfg, const fs::path& out, std::ostream& log) {
  const Setup s = setup(cfg);
  const auto traj = solver::solve(s.model, s.geometry, make_solver_config(cfg, cfg.epsilon()));
  write_trajectory_csv(out / "trajectory.csv", traj, cfg.hash);
  json meta = trajectory_metadata(traj);
  meta["config"] = config_block(cfg);
  meta["notes"] = notes_for(cfg);
  write_json(out / "trajectory.json", meta, cfg.hash);
  log << "solve: " << traj.steps << " steps, dt = " << traj.dt
      << ", max principle violation = " << traj.max_principle_violation << "\n";
  return traj.max_principle_holds() ? kPass : kFailed;
}

int cmd_sweep(const ExperimentConfig& cfg, const fs::path& out, std::ostream& log) {
  const Setup s = setup(cfg);
  solver::SweepResult sweep;
  const auto runs = run_all(s, cfg, &sweep);
  write_runs(runs, cfg, out);

  bool principle = true;
  json run_docs = json::array();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    principle = principle && runs[k].max_principle_holds();
    json meta = trajectory_metadata(runs[k]);
    meta["file"] = trajectory_name(k, runs.size()) + ".csv";
    run_docs.push_back(meta);
  }
  const bool comparison =
      std::all_of(sweep.comparison_margins.begin(), sweep.comparison_margins.end(),
                  [](double m) { return m >= -kComparisonTol; });
  json doc;
  doc["eps_list"] = cfg.eps_list;
  doc["sup_differences"] = sweep.sup_differences;
  doc["comparison_margins"] = sweep.comparison_margins;
  doc["comparison_holds"] = comparison;
  doc["max_principle_holds"] = principle;
  doc["runs"] = run_docs;
  doc["config"] = config_block(cfg);
  doc["notes"] = notes_for(cfg);
  doc["passed"] = comparison && principle;
  write_json(out / "sweep.json", doc, cfg.hash);
  log << "sweep: " << runs.size() << " runs, comparison " << (comparison ? "holds" : "fails")
      << ", max principle " << (principle ? "holds" : "fails") << "\n";
  return comparison && principle ? kPass : kFailed;
}

int cmd_localize(const ExperimentConfig& cfg, const fs::path& out, std::ostream& log) {
  const Setup s = setup(cfg);
  std::optional<degiorgi::DeGiorgiParams> params;
  if (!cfg.calibration()) params = degiorgi_params(cfg, s);  // rejects N <= 2 before solving

  const auto runs = run_all(s, cfg);
  write_runs(runs, cfg, out);

  json localization = json::array();
  double min_Tprime = std::numeric_limits<double>::infinity();
  std::optional<degiorgi::FrontTrace> finest;
  for (const auto& run : runs) {
    auto trace = degiorgi::front_trace(run, cfg.x0, cfg.tol);
    const double Tp = trace.localization_time(cfg.Rprime);
    min_Tprime = std::min(min_Tprime, Tp);
    localization.push_back({{"epsilon", run.epsilon()}, {"dt", run.dt}, {"Tprime", Tp}});
    finest = std::move(trace);
  }
  {
    CsvWriter csv(out / "fronts.csv", cfg.hash, {"t", "front_radius"});
    for (std::size_t k = 0; k < finest->times.size(); ++k) {
      csv.row({finest->times[k], finest->front_radius[k]});
    }
  }

  json doc;
  doc["tol"] = cfg.tol;
  doc["x0"] = cfg.x0;
  doc["localization"] = localization;
  doc["Tprime_measured"] = min_Tprime;
  doc["excess_convention"] = cfg.excess ? "u - eps" : "raw u";
  json notes = notes_for(cfg);

  bool passed = min_Tprime > 0.0;
  std::optional<double> T_star;
  if (params) {
    const auto& run = runs.back();
    const degiorgi::ExcessFields fields(run, *s.bundle, cfg.excess);
    const double Tprime = cfg.Tprime > 0.0 ? cfg.Tprime : run.final_time();
    std::vector<double> Y;
    for (int n = 0; n <= cfg.n_max; ++n) Y.push_back(degiorgi::evaluate_Y(fields, *params, Tprime, n));
    const auto rhs = degiorgi::recursion_rhs(Y, *params);
    const auto margins = degiorgi::check_recursion(Y, *params);
    const double Ymax = *std::max_element(Y.begin(), Y.end());
    const bool recursion = std::all_of(margins.begin(), margins.end(), [&](double m) {
      return m >= -kRecursionRelTol * Ymax;
    });
    {
      CsvWriter csv(out / "ygrid.csv", cfg.hash, {"n", "R_n", "Y_n", "recursion_rhs", "margin"});
      const double nan = std::numeric_limits<double>::quiet_NaN();
      for (int n = 0; n <= cfg.n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        csv.row({static_cast<double>(n), params->radius(n), Y[i], n ? rhs[i - 1] : nan,
                 n ? margins[i - 1] : nan});
      }
    }
    T_star = degiorgi::find_T_star(fields, *params);
    json p = params_json(*params);
    for (auto& [k, v] : p.items()) doc[k] = v;
    doc["S_kind"] = cfg.S > 0.0 ? "configured" : "sharp";
    doc["T_star"] = T_star ? json(*T_star) : json(nullptr);
    doc["Tprime"] = Tprime;
    doc["Y"] = Y;
    doc["recursion_margins"] = margins;
    doc["recursion_holds"] = recursion;
    passed = passed && T_star && *T_star > 0.0;
  } else {
    doc["T_star"] = nullptr;
    notes.push_back("calibration mode has no constitutive bundle; Y_n is not defined");
    passed = false;
  }
  doc["notes"] = notes;
  doc["config"] = config_block(cfg);
  doc["passed"] = passed;
  write_json(out / "degiorgi.json", doc, cfg.hash);
  log << "localize: T'(R') = " << min_Tprime << ", T* = ";
  if (T_star) log << *T_star; else log << "none";
  log << (passed ? " (localized)\n" : " (not localized)\n");
  return passed ? kPass : kFailed;
}

int cmd_estimate(const ExperimentConfig& cfg, const fs::path& out, std::ostream& log) {
  const Setup s = setup(cfg);
  const auto traj = solver::solve(s.model, s.geometry, make_solver_config(cfg, cfg.epsilon()));
  const auto energy = estimates::energy_audit(traj, cfg.t_start);

  json doc;
  json notes = notes_for(cfg);
  doc["energy_residual"] = energy.residual;
  doc["energy"] = {{"dissipation", energy.dissipation},
                   {"initial", energy.initial_energy},
                   {"final", energy.final_energy},
                   {"bound", cfg.energy_bound}};
  notes.push_back("energy balance keeps the 1/2 factor on the gradient energy");
  notes.push_back("gradient bounds are reported as raw integrals; no split constant is fixed");
  bool passed = energy.residual <= cfg.energy_bound;

  doc["lemma1_min_gap"] = nullptr;
  doc["lemma2"] = nullptr;
  doc["grad_G"] = nullptr;
  if (s.bundle) {
    const auto sweep = estimates::lemma1_sweep(*s.bundle, cfg.samples, s.geometry.dimension(), cfg.seed);
    doc["lemma1_min_gap"] = sweep.min_gap;
    doc["lemma1_samples"] = sweep.samples;
    passed = passed && sweep.min_gap >= 0.0;
    if (s.geometry.kind() == solver::GeometryKind::Radial && s.geometry.dimension() >= 3) {
      const auto params = degiorgi_params(cfg, s);
      const degiorgi::ExcessFields fields(traj, *s.bundle, cfg.excess);
      const double Tprime = cfg.Tprime > 0.0 ? cfg.Tprime : traj.final_time();
      const auto l2 = estimates::lemma2_check(fields, params, params.radius(1), Tprime);
      doc["lemma2"] = {{"lhs", l2.lhs}, {"rhs", l2.rhs}, {"c1", l2.c1}, {"n", l2.n},
                       {"K_radius", params.radius(1)}, {"t", Tprime}};
      const auto gg = estimates::grad_G_check(
          fields, [&params](double d) { return params.cutoff(d, 0); });
      doc["grad_G"] = {{"lhs", gg.lhs},
                       {"rhs", gg.rhs()},
                       {"rhs_initial", gg.rhs_initial},
                       {"rhs_cutoff", gg.rhs_cutoff},
                       {"c_min", gg.c_min}};
      passed = passed && l2.lhs <= l2.rhs && std::isfinite(gg.c_min);
    } else {
      notes.push_back("lemma2 and grad_G need a radial geometry with N >= 3");
    }
  } else {
    notes.push_back("calibration mode: only the energy balance is audited");
  }
  doc["notes"] = notes;
  doc["run"] = trajectory_metadata(traj);
  doc["config"] = config_block(cfg);
  doc["passed"] = passed;
  write_json(out / "estimates.json", doc, cfg.hash);
  log << "estimate: energy residual = " << energy.residual;
  if (s.bundle) log << ", lemma1 min gap = " << doc["lemma1_min_gap"].get<double>();
  log << (passed ? " (pass)\n" : " (fail)\n");
  return passed ? kPass : kFailed;
}

}  // namespace degenlab::cli
