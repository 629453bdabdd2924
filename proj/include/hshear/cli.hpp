#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hshear/report_io.hpp"

namespace hshear::cli {

inline const std::vector<std::string> kCases{"f0",        "rotatedH",         "Llambda",
                                             "halfplane", "koebe-directions", "brannan"};

struct CaseOptions {
  std::uint64_t seed = 7;
  QuadratureConfig quadrature;
  int threads = 0;
};

struct CaseCheck {
  std::string what;
  bool pass = false;
  std::string detail;
};

struct CaseResult {
  std::string name;
  std::vector<CaseCheck> checks;
  Json report;
  bool pass() const;
};

/// One of kCases; throws ParseError for unknown names.
CaseResult run_case(const std::string& name, const CaseOptions& opt = {});

/// Subcommands shear, convexity, probe, vk, reproduce. Returns the exit code:
/// 0 success, 1 usage or compute error, 2 a reproduce case missed its
/// expected outcome.
int run(int argc, const char* const* argv);

}  // namespace hshear::cli
