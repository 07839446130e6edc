#pragma once

// Univariate polynomial helpers for determinant-based root finding: a
// polynomial of known degree is sampled at Chebyshev nodes, interpolated to
// monomial coefficients, and solved through its companion matrix.

#include <complex>
#include <functional>
#include <vector>

namespace fucik::poly {

/// `count` Chebyshev points of the first kind on [-1, 1].
std::vector<double> chebyshev_nodes(int count);

/// Monomial coefficients (ascending powers) of the interpolant through
/// (nodes[i], values[i]).
std::vector<double> interpolate(const std::vector<double>& nodes, const std::vector<double>& values);

/// Samples f at degree+1 Chebyshev nodes on [-1, 1] and interpolates.
std::vector<double> fit(const std::function<double(double)>& f, int degree);

/// Drops leading coefficients below rel_tol * max|c|. Returns an empty vector
/// when every coefficient is below abs_tol (the polynomial vanishes).
std::vector<double> trim(std::vector<double> coeffs, double rel_tol, double abs_tol);

/// Roots through the eigenvalues of the companion matrix. Degree 0 gives none.
std::vector<std::complex<double>> roots(const std::vector<double>& coeffs);

/// Averages roots lying within `radius` of each other; a perturbed multiple
/// root splits into a small ring whose centroid is accurate.
std::vector<std::complex<double>> merge_close(std::vector<std::complex<double>> zs, double radius);

double evaluate(const std::vector<double>& coeffs, double x);

}  // namespace fucik::poly
