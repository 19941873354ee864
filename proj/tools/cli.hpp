// SPDX-License-Identifier: Apache-2.0
//
// Batch jobs behind the command-line front end.
#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "qiso/io.hpp"

namespace qiso::cli {

enum Exit { kPass = 0, kFail = 1, kConfigError = 2 };

struct JobConfig {
  std::string task;  // laplacian, admissibility, derive, verify-action, check-presentation, equivariance
  std::string model;
  std::string action;
  std::string presentation;
  std::optional<int> truncation;
  double tolerance = 1e-8;
  int degree = 2;
  std::string out;
};

struct JobResult {
  int status = kPass;
  io::json report;
};

/// Runs one job; never throws. The report always has "task" and "status" keys,
/// and "error" when status is kConfigError.
JobResult run(const JobConfig& config, std::ostream& summary);

}  // namespace qiso::cli
