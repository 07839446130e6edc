#pragma once

// Per-eigenvalue report assembly and comparison of predicted tangent rays
// with slopes measured on a traced point set.

#include <optional>
#include <string>
#include <vector>

#include "fucik/core_linalg.hpp"
#include "fucik/degenerate_solver.hpp"
#include "fucik/spectrum_tracer.hpp"
#include "fucik/tangent_solver.hpp"

namespace fucik {

struct DefectiveAnalysis {
  Vector u0;
  DegeneracyClass verdict = DegeneracyClass::case2;
  std::optional<TangentDirection> case1;
  std::optional<OneSidedTangents> one_sided;
};

struct EigenvalueAnalysis {
  Eigenspace eigenspace;
  std::vector<TangentDirection> directions;  // Q u0 != 0
  std::vector<DefectiveAnalysis> defective;  // Q u0 = 0
};

/// Tangent directions at lambda, with defective directions split off and run
/// through classify / one_sided_tangents / case1_direction.
EigenvalueAnalysis analyze_eigenvalue(const RealMatrix& a, const Eigenspace& es, const Tolerances& tol = {});

struct PredictedRay {
  double slope = 0.0;
  Side side = Side::plus;
  double eta0 = 0.0;
  std::string source;  // "regular", "case1", "one-sided" or "diagonal"
  bool optional = false;  // may explain a traced arm but need not be matched
};

/// Distinct (side, slope) rays leaving (lambda, lambda). Regular directions
/// yield one ray per side; one-sided entries only their own side. A Case 2
/// direction also adds optional slope-1 rays on both sides: curves tangent to
/// the diagonal (eta0 = +-infinity) are outside the finite-eta analysis and
/// can neither be predicted nor excluded by it.
std::vector<PredictedRay> predicted_rays(const EigenvalueAnalysis& ea);

/// |a - b| for finite slopes; when either is infinite the inverse slopes
/// d(alpha)/d(beta) are compared instead.
double slope_distance(double a, double b);

struct CrossCheckRow {
  PredictedRay ray;
  std::optional<SlopeEstimate> estimate;
  double error = 0.0;
  bool ok = false;
};

struct CrossCheck {
  std::vector<CrossCheckRow> rows;
  std::vector<SlopeEstimate> unmatched;  // measured arms with no prediction

  bool ok() const;
};

/// Matches every required prediction to the nearest estimate on the same side.
CrossCheck cross_validate(const std::vector<PredictedRay>& predicted, const std::vector<SlopeEstimate>& estimates,
                          double tolerance);

}  // namespace fucik
