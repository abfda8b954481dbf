#pragma once

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "degenlab/solver.hpp"

namespace degenlab::cli {

using json = nlohmann::json;

/// Writes `doc` with a top-level "config_hash" field.
void write_json(const std::filesystem::path& path, json doc, const std::string& hash);

/// Minimal CSV writer: the first line is "# config_hash: <hash>", numbers are
/// written in shortest round-trip form so reruns are byte-identical.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& hash,
            const std::vector<std::string>& header);

  void row(const std::vector<double>& values);

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

std::string format_number(double v);

/// t, u_0 ... u_m per snapshot.
void write_trajectory_csv(const std::filesystem::path& path, const solver::Trajectory& traj,
                          const std::string& hash);
/// Geometry, epsilon, dt and run diagnostics.
json trajectory_metadata(const solver::Trajectory& traj);

/// Files in `dir` whose embedded config hash differs from `hash` (or is missing).
std::vector<std::string> check_provenance(const std::filesystem::path& dir, const std::string& hash);

}  // namespace degenlab::cli
