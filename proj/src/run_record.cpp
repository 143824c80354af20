#include "moadagrad/run_record.hpp"

namespace moadagrad {

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Critical:
      return "critical";
    case RunStatus::BudgetExhausted:
      return "budget_exhausted";
    case RunStatus::Failed:
      return "failed";
  }
  return "failed";
}

RunStatus parse_run_status(const std::string& text) {
  if (text == "critical") return RunStatus::Critical;
  if (text == "budget_exhausted") return RunStatus::BudgetExhausted;
  if (text == "failed") return RunStatus::Failed;
  throw LookupError("unknown run status '" + text + "'");
}

double RunRecord::config_value(const std::string& key) const {
  for (const auto& [name, value] : config) {
    if (name == key) return value;
  }
  throw LookupError("run record has no config entry '" + key + "'");
}

}  // namespace moadagrad
