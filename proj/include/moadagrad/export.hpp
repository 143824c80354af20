#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moadagrad/harness.hpp"
#include "moadagrad/run_record.hpp"

namespace moadagrad {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Flat, serializable view of a RunRecord (trajectory stored separately).
struct RunSummary {
  std::string problem;
  std::string solver;
  std::uint64_t seed = 0;
  double noise = 0.0;
  int n = 0;
  std::string status;
  std::string message;
  std::vector<std::pair<std::string, double>> config;
  std::vector<double> x0;
  std::vector<double> final_x;
  double final_omega = 0.0;
  double cost = 0.0;
  std::size_t gradient_evals = 0;
  std::size_t objective_evals = 0;
  std::size_t iterations = 0;
  double wall_time_seconds = 0.0;
  /// Trajectory CSV relative to the summary file; empty when not written.
  std::string trajectory_file;

  bool operator==(const RunSummary&) const = default;
};

RunSummary summarize(const RunRecord& record, const std::string& trajectory_file = "");

/// "<problem>__<solver>__seed<S>__rho<rho>", filesystem-safe.
std::string run_file_stem(const RunRecord& record);

std::string summary_to_json(const RunSummary& summary);
RunSummary summary_from_json(const std::string& text);
std::string summaries_to_json(const std::vector<RunSummary>& summaries);
std::vector<RunSummary> summaries_from_json(const std::string& text);

/// Header k,omega,weight_or_step,gradient_evals,objective_evals.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory);
/// Reads k and omega columns back (used by rate-check).
std::vector<TrajectoryPoint> parse_trajectory_csv(const std::string& text);

/// Header tau,<solver>...; one row per tau.
std::string profile_csv(const ProfileTable& table);
/// Header instance,<solver>...; ratio per cell, empty for failures.
std::string ratio_csv(const ProfileTable& table);
/// Header problem,solver,noise,seeds,mean_distance,distances (distances ';'-joined).
std::string noise_table_csv(const std::vector<NoiseDistanceRow>& rows);
/// Header problem,solver,noise,runs,solved,mean_cost,mean_gradient_evals,mean_objective_evals.
std::string aggregate_csv(const std::vector<SeedAggregate>& rows);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace moadagrad
