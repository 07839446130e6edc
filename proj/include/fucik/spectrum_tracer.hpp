#pragma once

// Brute-force sampling of the Fucik spectrum {(alpha, beta) : Au = alpha u+ - beta u- has u != 0}
// inside a rectangular window. For a fixed sign pattern s the problem is linear:
// det(A - alpha D+ - beta D-) = 0 with D+ / D- the indicator diagonals of the
// positive / negative entries of s. At fixed alpha this determinant is a
// polynomial in beta of degree |{i : s_i = -1}|, and symmetrically in alpha.

#include <string>
#include <vector>

#include "fucik/core_linalg.hpp"
#include "fucik/tangent_solver.hpp"

namespace fucik {

struct TraceWindow {
  double alpha_min = -1.0;
  double alpha_max = 1.0;
  double beta_min = -1.0;
  double beta_max = 1.0;
  int grid = 200;  // samples per axis

  /// Throws ErrorKind::invalid_input unless min < max on both axes and grid >= 2.
  void validate() const;
  double alpha_step() const { return (alpha_max - alpha_min) / (grid - 1); }
  double beta_step() const { return (beta_max - beta_min) / (grid - 1); }
};

struct FucikPoint {
  double alpha = 0.0;
  double beta = 0.0;
  Vector u;  // unit
  SignPattern pattern;
  double residual = 0.0;
};

/// alpha: beta solved on a grid of alpha values; beta: the transposed sweep.
enum class Sweep { alpha, beta };

const char* to_string(Sweep s);

struct Branch {
  SignPattern pattern;
  Sweep sweep = Sweep::alpha;
  std::vector<int> indices;  // into FucikPointSet::points, in grid order
};

struct FucikPointSet {
  std::vector<FucikPoint> points;
  std::vector<Branch> branches;
};

struct TraceOptions {
  int max_dimension = 12;
  int threads = 1;
  double residual_tol = 1e-9;  // accept iff residual <= residual_tol * (1 + |A|)
};

/// Throws ErrorKind::capacity when n exceeds options.max_dimension.
FucikPointSet trace(const RealMatrix& a, const TraceWindow& window, const Tolerances& tol = {},
                    const TraceOptions& options = {});

/// |Au - alpha u+ + beta u-| / |u|. Throws ErrorKind::invalid_input for u = 0.
double residual(const RealMatrix& a, double alpha, double beta, const Vector& u);

struct SlopeEstimate {
  double slope = 0.0;  // d(beta)/d(alpha); +infinity when vertical
  Side side = Side::plus;  // plus: beta < alpha (eps > 0), minus: beta > alpha
  double dalpha = 0.0;     // unit direction of the arm leaving (lambda, lambda)
  double dbeta = 0.0;
  int branch = -1;
  int samples = 0;
  bool vertical = false;
};

/// Slopes at (lambda, lambda) of traced arms that reach into the disk of the
/// given radius. Each arm (a contiguous polyline run on one side of the
/// diagonal, sampled in the annulus [radius/4, radius]) is fitted by a cubic
/// through (lambda, lambda); arms that do not pass through the
/// center are dropped. Estimates closer than 1e-3 on the same side are merged.
std::vector<SlopeEstimate> numerical_slopes(double lambda, const FucikPointSet& set, double radius);

}  // namespace fucik
