#include "fucik/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fucik::poly {

std::vector<double> chebyshev_nodes(int count) {
  std::vector<double> nodes(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    nodes[static_cast<std::size_t>(k)] = std::cos(std::numbers::pi * (k + 0.5) / count);
  }
  return nodes;
}

std::vector<double> interpolate(const std::vector<double>& nodes, const std::vector<double>& values) {
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd vander(m, m);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double p = 1.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      vander(i, j) = p;
      p *= nodes[static_cast<std::size_t>(i)];
    }
    rhs(i) = values[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd c = vander.colPivHouseholderQr().solve(rhs);
  return {c.data(), c.data() + c.size()};
}

std::vector<double> fit(const std::function<double(double)>& f, int degree) {
  const auto nodes = chebyshev_nodes(degree + 1);
  std::vector<double> values;
  values.reserve(nodes.size());
  for (double t : nodes) values.push_back(f(t));
  return interpolate(nodes, values);
}

std::vector<double> trim(std::vector<double> coeffs, double rel_tol, double abs_tol) {
  double big = 0.0;
  for (double c : coeffs) big = std::max(big, std::abs(c));
  if (big <= abs_tol) return {};
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= rel_tol * big) coeffs.pop_back();
  return coeffs;
}

std::vector<std::complex<double>> roots(const std::vector<double>& coeffs) {
  if (coeffs.size() < 2) return {};
  const auto deg = static_cast<Eigen::Index>(coeffs.size() - 1);
  if (deg == 1) return {{-coeffs[0] / coeffs[1], 0.0}};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) {
    companion(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  const Eigen::VectorXcd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<std::complex<double>> merge_close(std::vector<std::complex<double>> zs, double radius) {
  std::vector<std::vector<std::complex<double>>> groups;
  std::sort(zs.begin(), zs.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (const auto& z : zs) {
    bool placed = false;
    for (auto& g : groups) {
      for (const auto& w : g) {
        if (std::abs(z - w) <= radius) {
          g.push_back(z);
          placed = true;
          break;
        }
      }
      if (placed) break;
    }
    if (!placed) groups.push_back({z});
  }
  std::vector<std::complex<double>> out;
  for (const auto& g : groups) {
    std::complex<double> s{0.0, 0.0};
    for (const auto& z : g) s += z;
    out.push_back(s / static_cast<double>(g.size()));
  }
  return out;
}

double evaluate(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace fucik::poly
