#pragma once

#include <vector>

#include "fucik/core_linalg.hpp"

namespace fucik {

/// Deterministic covering of the unit sphere in R^k: {+1, -1} for k = 1, a
/// 360-point circle for k = 2, a Fibonacci lattice for k = 3 and normalized
/// cube-lattice points above that.
std::vector<Vector> sphere_samples(int k);

/// Deterministic start lattice over [lo, hi]^k with the given spacing.
std::vector<Vector> box_lattice(int k, double lo, double hi, double spacing);

}  // namespace fucik
