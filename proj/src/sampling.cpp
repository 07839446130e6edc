#include "fucik/sampling.hpp"

#include <cmath>
#include <numbers>

namespace fucik {

namespace {

constexpr int kCircleSamples = 360;
constexpr int kFibonacciSamples = 8000;

void lattice_rec(int dim, int k, int m, Vector& cur, std::vector<Vector>& out) {
  if (dim == k) {
    if (cur.cwiseAbs().maxCoeff() == m) out.push_back(cur.normalized());
    return;
  }
  for (int i = -m; i <= m; ++i) {
    cur(dim) = i;
    lattice_rec(dim + 1, k, m, cur, out);
  }
}

}  // namespace

std::vector<Vector> sphere_samples(int k) {
  std::vector<Vector> out;
  if (k <= 0) return out;
  if (k == 1) {
    out.push_back(Vector::Constant(1, 1.0));
    out.push_back(Vector::Constant(1, -1.0));
    return out;
  }
  if (k == 2) {
    for (int i = 0; i < kCircleSamples; ++i) {
      const double t = 2.0 * std::numbers::pi * i / kCircleSamples;
      Vector v(2);
      v << std::cos(t), std::sin(t);
      out.push_back(v);
    }
    return out;
  }
  if (k == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < kFibonacciSamples; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / kFibonacciSamples;
      const double r = std::sqrt(1.0 - z * z);
      const double t = golden * i;
      Vector v(3);
      v << r * std::cos(t), r * std::sin(t), z;
      out.push_back(v);
    }
    return out;
  }
  // Outer shell of the cube lattice {-m..m}^k, kept below ~2e4 points.
  const int m = k == 4 ? 4 : (k <= 6 ? 2 : 1);
  Vector cur(k);
  lattice_rec(0, k, m, cur, out);
  return out;
}

std::vector<Vector> box_lattice(int k, double lo, double hi, double spacing) {
  std::vector<Vector> out;
  if (k <= 0) {
    out.emplace_back(0);
    return out;
  }
  const int steps = static_cast<int>(std::lround((hi - lo) / spacing));
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    Vector v(k);
    for (int d = 0; d < k; ++d) v(d) = lo + idx[static_cast<std::size_t>(d)] * spacing;
    out.push_back(v);
    int d = 0;
    while (d < k && ++idx[static_cast<std::size_t>(d)] > steps) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == k) break;
  }
  return out;
}

}  // namespace fucik
