#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ordervc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitBudgetTruncated = 3,
};

// Runs one ordervc invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// --threads value, else ORDERVC_THREADS, else hardware concurrency.
unsigned resolve_threads(unsigned requested);

}  // namespace ordervc::cli
