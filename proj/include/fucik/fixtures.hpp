#pragma once

// Built-in matrices with known spectral and tangent data.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fucik/core_linalg.hpp"
#include "fucik/tangent_solver.hpp"

namespace fucik {

/// c_ab * alpha * beta + c_a * alpha + c_b * beta + c_0 = 0.
struct CurveEquation {
  double c_ab = 0.0;
  double c_a = 0.0;
  double c_b = 0.0;
  double c_0 = 0.0;
  std::string text;

  double value(double alpha, double beta) const { return c_ab * alpha * beta + c_a * alpha + c_b * beta + c_0; }
  /// |value| divided by the gradient norm: a first-order distance to the curve.
  double normalized(double alpha, double beta) const;
};

struct ExpectedEigenvalue {
  double lambda = 0.0;
  int algebraic = 0;
  int geometric = 0;
};

struct ExpectedTangents {
  double lambda = 0.0;
  std::vector<double> etas;    // ascending
  std::vector<double> slopes;  // ascending
};

struct ExpectedOneSided {
  Side side = Side::plus;
  double eta = 0.0;
  double slope = 0.0;
  Quadrant quadrant = Quadrant::E;
};

struct ExpectedDegenerate {
  double lambda = 0.0;
  Vector u0;                     // unit
  std::string verdict;           // "case2" or "inconclusive"
  std::vector<ExpectedOneSided> rows;  // empty when inconclusive
};

struct ExpectedNondegeneracy {
  double lambda = 0.0;
  Vector u0;
  double eta0 = 0.0;
  bool holds = true;
  Vector witness;  // span of the expected w when !holds
};

/// Traced neighbourhood of (lambda, lambda) whose arm slopes must match the
/// predicted rays.
struct SlopeCheck {
  double lambda = 0.0;
  std::array<double, 4> window{};
  double radius = 0.0;
};

struct Fixture {
  std::string name;
  RealMatrix matrix;
  std::vector<ExpectedEigenvalue> eigenvalues;
  std::vector<ExpectedTangents> tangents;
  std::vector<ExpectedNondegeneracy> nondegeneracy;
  std::vector<ExpectedDegenerate> degenerate;
  std::vector<CurveEquation> curves;
  std::optional<std::array<double, 4>> curve_window;
  std::optional<SlopeCheck> slope_check;
  bool figure_only = false;
};

std::vector<std::string> fixture_names();

/// Throws ErrorKind::invalid_input for unknown names.
const Fixture& fixture(const std::string& name);

}  // namespace fucik
