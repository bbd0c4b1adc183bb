#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kframes::cli {

/// Stable exit statuses of the kframes tool.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kNumericalError = 3,
  kCertificateFailure = 4,
  kVerificationFailure = 5,
};

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kframes::cli
