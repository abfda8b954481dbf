#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"

namespace {

using namespace degenlab;
using Command = std::function<int(const cli::ExperimentConfig&, const std::filesystem::path&,
                                  std::ostream&)>;

int provenance(const cli::ExperimentConfig& cfg, const std::filesystem::path& out,
               std::ostream& log) {
  const auto bad = cli::check_provenance(out, cfg.hash);
  for (const auto& f : bad) log << "provenance: " << f << " does not carry hash " << cfg.hash << "\n";
  if (bad.empty()) log << "provenance: all outputs in " << out.string() << " match\n";
  return bad.empty() ? cli::kPass : cli::kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degenerate diffusion experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;

  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"verify", {"admissibility report for the configured profile", cli::cmd_verify}},
      {"solve", {"one regularized run at the smallest epsilon", cli::cmd_solve}},
      {"sweep", {"runs over the epsilon list with comparison checks", cli::cmd_sweep}},
      {"localize", {"support fronts and the De Giorgi diagnostics", cli::cmd_localize}},
      {"estimate", {"energy and inequality audits", cli::cmd_estimate}},
      {"provenance", {"check that outputs in --out carry the config hash", provenance}},
  };
  std::string chosen;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "experiment config (INI)")->required();
    sub->add_option("--out", out_dir, "output directory (default: output.directory)");
    sub->add_option("--override", overrides, "section.key=value, repeatable");
    sub->callback([&chosen, n = name] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kPass : cli::kUsage;
  }

  try {
    auto config = cli::Config::load(config_path);
    for (const auto& o : overrides) config.apply_override(o);
    const auto cfg = cli::resolve(config);
    const std::filesystem::path out = out_dir.empty() ? cfg.directory : out_dir;
    std::filesystem::create_directories(out);
    return commands.at(chosen).second(cfg, out, std::cout);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kNumerical;
  }
}
