#pragma once

// The stages behind the command line tool, rendered as text, JSON and CSV.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ergo/duality.hpp"
#include "ergo/potential.hpp"

namespace ergo {

struct Report {
  std::string text;  // printed on stdout
  std::vector<std::pair<std::string, std::string>> artifacts;  // file name, contents
  int exit_code = 0;
};

// max-plus, duality, twist and transport in order. Stops at the first unmet
// precondition with its exit code; the artifacts of earlier stages are kept.
Report analyze_report(const Potential& A, const Point& base_point);

struct VerifyOptions {
  bool corrupt_w = false;  // perturb one kernel entry before the relation checks
};

// Every exact identity, one status line each. Exit code 4 on any failure.
Report verify_report(const Potential& A, const Point& base_point,
                     const VerifyOptions& opts = {});

Report scan_report(const Potential& A, const std::vector<double>& betas);

Report generic_report(std::uint64_t seed, std::size_t samples, int depth);

std::string kernel_csv(const KernelTable& W);

}  // namespace ergo
