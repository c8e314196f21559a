#ifndef TAILBOUND_CLI_HPP
#define TAILBOUND_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tailbound/bounds.hpp"
#include "tailbound/dist.hpp"

namespace tailbound::cli {

enum ExitCode : int {
  kSuccess = 0,
  kViolated = 1,
  kInputError = 2,
};

/// Reads either a `value,prob` CSV (header required) or a headerless single
/// column of samples. `#` lines and blank lines are skipped.
FiniteDistribution parse_distribution_text(std::string_view text);
FiniteDistribution parse_distribution_file(const std::string& path);

/// Stable-ordered JSON: theorem, ladder, coefficients, tails, lhs, rhs,
/// slack, satisfied, params.
std::string report_json(const BoundReport& report);

/// Entry point behind the `tailbound` binary; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tailbound::cli

#endif  // TAILBOUND_CLI_HPP
