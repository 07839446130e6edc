#pragma once

// Fixture checks behind the `verify` command.

#include <string>
#include <vector>

#include "fucik/core_linalg.hpp"

namespace fucik {

struct VerifyRow {
  std::string check;
  std::string expected;
  std::string got;
  bool pass = false;
};

struct VerifyReport {
  std::string fixture;
  bool figure_only = false;
  std::vector<VerifyRow> rows;

  bool ok() const;
};

struct VerifyOptions {
  double value_tol = 1e-8;   // eta, slope, witness comparisons
  double curve_tol = 1e-5;   // normalized curve-equation residual of traced points
  double slope_tol = 2e-2;   // numerical slope cross-check
  int grid = 400;
  int threads = 1;
};

/// Throws ErrorKind::invalid_input for unknown fixtures.
VerifyReport verify_fixture(const std::string& name, const Tolerances& tol = {}, const VerifyOptions& opt = {});

}  // namespace fucik
