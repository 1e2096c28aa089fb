#pragma once

#include <optional>
#include <string>
#include <vector>

#include "funcmodel/problem.hpp"
#include "funcmodel/report.hpp"

namespace funcmodel {

const std::vector<std::string>& command_names();

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the problem seed
  double tol_scale = 1.0;
};

/// Runs the named verification suite. Throws InputError for unknown
/// commands or when the problem does not fit the suite (e.g. singular-check
/// without kappa = iJ).
Report run_command(const std::string& name, const Problem& problem, const RunOptions& options);

/// Default tolerance for a record name, after problem overrides.
double tolerance_for(const Problem& problem, const std::string& key);

}  // namespace funcmodel
