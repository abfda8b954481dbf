#include "cli/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace degenlab::cli {

namespace fs = std::filesystem;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_json(const fs::path& path, json doc, const std::string& hash) {
  doc["config_hash"] = hash;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

CsvWriter::CsvWriter(const fs::path& path, const std::string& hash,
                     const std::vector<std::string>& header)
    : out_(path), path_(path) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  out_ << "# config_hash: " << hash << "\n";
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << "\n";
  if (!out_) throw std::runtime_error("write failed on " + path_.string());
}

void write_trajectory_csv(const fs::path& path, const solver::Trajectory& traj,
                          const std::string& hash) {
  std::vector<std::string> header{"t"};
  for (std::size_t i = 0; i < traj.geometry.size(); ++i) header.push_back("u_" + std::to_string(i));
  CsvWriter csv(path, hash, header);
  std::vector<double> row;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    row.assign(1, traj.times[k]);
    row.insert(row.end(), traj.snapshots[k].begin(), traj.snapshots[k].end());
    csv.row(row);
  }
}

json trajectory_metadata(const solver::Trajectory& traj) {
  const auto& geo = traj.geometry;
  json j;
  j["geometry"] = {
      {"kind", geo.kind() == solver::GeometryKind::Radial ? "radial" : "interval"},
      {"dimension", geo.dimension()},
      {"L", geo.length()},
      {"cells", geo.cells()},
      {"spacing", geo.spacing()},
  };
  j["model"] = traj.model.label();
  j["epsilon"] = traj.epsilon();
  j["scheme"] = std::string(solver::to_string(traj.config.scheme));
  j["dt"] = traj.dt;
  j["T"] = traj.final_time();
  j["steps"] = traj.steps;
  j["snapshots"] = traj.times.size();
  j["initial_excess"] = traj.config.g.description;
  j["boundary_excess"] = traj.config.phi.description;
  j["bound"] = traj.bound;
  j["max_principle_violation"] = traj.max_principle_violation;
  j["max_principle_holds"] = traj.max_principle_holds();
  return j;
}

std::vector<std::string> check_provenance(const fs::path& dir, const std::string& hash) {
  std::vector<std::string> bad;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    std::ifstream in(entry.path());
    if (ext == ".csv") {
      std::string first;
      std::getline(in, first);
      if (first != "# config_hash: " + hash) bad.push_back(entry.path().filename().string());
    } else if (ext == ".json") {
      const json doc = json::parse(in, nullptr, false);
      if (doc.is_discarded() || !doc.is_object() || doc.value("config_hash", "") != hash) {
        bad.push_back(entry.path().filename().string());
      }
    }
  }
  std::sort(bad.begin(), bad.end());
  return bad;
}

}  // namespace degenlab::cli
