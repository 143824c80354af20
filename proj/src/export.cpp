#include "moadagrad/export.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace moadagrad {

using nlohmann::ordered_json;

namespace {

std::string num(double v) { return format_double(v); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

ordered_json to_json_value(const RunSummary& s) {
  ordered_json config = ordered_json::object();
  for (const auto& [key, value] : s.config) config[key] = value;
  return ordered_json{{"problem", s.problem},
                      {"solver", s.solver},
                      {"seed", s.seed},
                      {"noise", s.noise},
                      {"n", s.n},
                      {"status", s.status},
                      {"message", s.message},
                      {"config", config},
                      {"x0", s.x0},
                      {"final_x", s.final_x},
                      {"final_omega", s.final_omega},
                      {"cost", s.cost},
                      {"gradient_evals", s.gradient_evals},
                      {"objective_evals", s.objective_evals},
                      {"iterations", s.iterations},
                      {"wall_time_seconds", s.wall_time_seconds},
                      {"trajectory_file", s.trajectory_file}};
}

RunSummary from_json_value(const ordered_json& j) {
  RunSummary s;
  try {
    s.problem = j.at("problem").get<std::string>();
    s.solver = j.at("solver").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.noise = j.at("noise").get<double>();
    s.n = j.at("n").get<int>();
    s.status = j.at("status").get<std::string>();
    parse_run_status(s.status);
    s.message = j.at("message").get<std::string>();
    for (const auto& [key, value] : j.at("config").items()) {
      s.config.emplace_back(key, value.get<double>());
    }
    s.x0 = j.at("x0").get<std::vector<double>>();
    s.final_x = j.at("final_x").get<std::vector<double>>();
    s.final_omega = j.at("final_omega").get<double>();
    s.cost = j.at("cost").get<double>();
    s.gradient_evals = j.at("gradient_evals").get<std::size_t>();
    s.objective_evals = j.at("objective_evals").get<std::size_t>();
    s.iterations = j.at("iterations").get<std::size_t>();
    s.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    s.trajectory_file = j.value("trajectory_file", "");
  } catch (const ordered_json::exception& e) {
    throw InputError(std::string("malformed run summary: ") + e.what());
  }
  return s;
}

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

RunSummary summarize(const RunRecord& record, const std::string& trajectory_file) {
  RunSummary s;
  s.problem = record.problem;
  s.solver = record.solver;
  s.seed = record.seed;
  s.noise = record.noise;
  s.n = record.n;
  s.status = to_string(record.status);
  s.message = record.message;
  s.config = record.config;
  s.x0 = to_std(record.x0);
  s.final_x = to_std(record.final_x);
  s.final_omega = record.final_omega;
  s.cost = record.n > 0 ? budget_cost(record) : 0.0;
  s.gradient_evals = record.counters.gradient_evals;
  s.objective_evals = record.counters.objective_evals;
  s.iterations = record.trajectory.size();
  s.wall_time_seconds = record.wall_time_seconds;
  s.trajectory_file = trajectory_file;
  return s;
}

std::string run_file_stem(const RunRecord& record) {
  std::string stem = record.problem + "__" + record.solver + "__seed" +
                     std::to_string(record.seed) + "__rho";
  stem += format_double(record.noise);
  for (char& c : stem) {
    if (c == '/' || c == '\\' || c == ' ' || c == ':') c = '_';
  }
  return stem;
}

std::string summary_to_json(const RunSummary& summary) {
  return to_json_value(summary).dump(2) + "\n";
}

RunSummary summary_from_json(const std::string& text) { return from_json_value(parse(text)); }

std::string summaries_to_json(const std::vector<RunSummary>& summaries) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : summaries) arr.push_back(to_json_value(s));
  return arr.dump(2) + "\n";
}

std::vector<RunSummary> summaries_from_json(const std::string& text) {
  ordered_json arr = parse(text);
  if (!arr.is_array()) throw InputError("expected a JSON array of run summaries");
  std::vector<RunSummary> out;
  for (const auto& item : arr) out.push_back(from_json_value(item));
  return out;
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory) {
  std::string out = "k,omega,weight_or_step,gradient_evals,objective_evals\n";
  for (const auto& p : trajectory) {
    out += std::to_string(p.k) + "," + num(p.omega) + "," + num(p.step_param) + "," +
           std::to_string(p.gradient_evals) + "," + std::to_string(p.objective_evals) + "\n";
  }
  return out;
}

std::vector<TrajectoryPoint> parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("k,omega", 0) != 0) {
    throw InputError("trajectory CSV: missing header");
  }
  std::vector<TrajectoryPoint> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    TrajectoryPoint p;
    unsigned long long k, ge, oe;
    if (std::sscanf(line.c_str(), "%llu,%lf,%lf,%llu,%llu", &k, &p.omega, &p.step_param, &ge,
                    &oe) != 5) {
      throw InputError("trajectory CSV: malformed line " + std::to_string(lineno));
    }
    p.k = k;
    p.gradient_evals = ge;
    p.objective_evals = oe;
    out.push_back(std::move(p));
  }
  return out;
}

std::string profile_csv(const ProfileTable& table) {
  std::string out = "tau";
  for (const auto& s : table.solvers) out += "," + s;
  out += "\n";
  for (std::size_t k = 0; k < table.tau.size(); ++k) {
    out += num(table.tau[k]);
    for (std::size_t s = 0; s < table.solvers.size(); ++s) out += "," + num(table.curve[s][k]);
    out += "\n";
  }
  return out;
}

std::string ratio_csv(const ProfileTable& table) {
  std::string out = "instance";
  for (const auto& s : table.solvers) out += "," + s;
  out += "\n";
  for (std::size_t p = 0; p < table.instances.size(); ++p) {
    out += table.instances[p];
    for (std::size_t s = 0; s < table.solvers.size(); ++s) {
      out += ",";
      if (table.ratio[p][s]) out += num(*table.ratio[p][s]);
    }
    out += "\n";
  }
  return out;
}

std::string noise_table_csv(const std::vector<NoiseDistanceRow>& rows) {
  std::string out = "problem,solver,noise,seeds,mean_distance,distances\n";
  for (const auto& r : rows) {
    out += r.problem + "," + r.solver + "," + num(r.noise) + "," + std::to_string(r.seeds.size()) +
           "," + num(r.mean_distance) + ",";
    for (std::size_t i = 0; i < r.distances.size(); ++i) {
      if (i) out += ";";
      out += num(r.distances[i]);
    }
    out += "\n";
  }
  return out;
}

std::string aggregate_csv(const std::vector<SeedAggregate>& rows) {
  std::string out =
      "problem,solver,noise,runs,solved,mean_cost,mean_gradient_evals,mean_objective_evals\n";
  for (const auto& r : rows) {
    out += r.problem + "," + r.solver + "," + num(r.noise) + "," + std::to_string(r.runs) + "," +
           std::to_string(r.solved) + "," + (r.mean_cost ? num(*r.mean_cost) : std::string()) +
           "," + num(r.mean_gradient_evals) + "," + num(r.mean_objective_evals) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::path p(path);
  if (p.has_parent_path()) {
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace moadagrad
