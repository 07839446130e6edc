#include "fucik/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fucik/error.hpp"

namespace fucik {

double CurveEquation::normalized(double alpha, double beta) const {
  const double ga = c_ab * beta + c_a;
  const double gb = c_ab * alpha + c_b;
  const double g = std::hypot(ga, gb);
  return std::abs(value(alpha, beta)) / std::max(g, 1e-12);
}

namespace {

Fixture make(std::string name, RealMatrix m) {
  return Fixture{std::move(name), std::move(m), {}, {}, {}, {}, {}, std::nullopt, std::nullopt, false};
}

RealMatrix all_rows_equal(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.row(i).setConstant(i + 1);
  return RealMatrix(m);
}

Vector unit(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v.normalized();
}

ExpectedTangents from_etas(double lambda, std::vector<double> etas) {
  std::sort(etas.begin(), etas.end());
  std::vector<double> slopes;
  for (double e : etas) slopes.push_back(slope_from_eta(e));
  std::sort(slopes.begin(), slopes.end());
  return {lambda, std::move(etas), std::move(slopes)};
}

std::map<std::string, Fixture> build() {
  std::map<std::string, Fixture> out;
  const double r10 = std::sqrt(10.0);

  {
    Fixture f = make("As2", all_rows_equal(2));
    f.eigenvalues = {{0, 1, 1}, {3, 1, 1}};
    f.tangents = {from_etas(0, {-1.0 / 3, 1.0 / 3})};
    out.emplace(f.name, std::move(f));
  }
  {
    Fixture f = make("As3", all_rows_equal(3));
    f.eigenvalues = {{0, 2, 2}, {6, 1, 1}};
    f.tangents = {from_etas(0, {-2.0 / 3, -1.0 / 3, 0.0, 1.0 / 3, 2.0 / 3})};
    out.emplace(f.name, std::move(f));
  }
  {
    Fixture f = make("As4", all_rows_equal(4));
    f.eigenvalues = {{0, 3, 3}, {10, 1, 1}};
    f.tangents = {from_etas(0, {-0.8, -0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6, 0.8})};
    out.emplace(f.name, std::move(f));
  }
  {
    Fixture f = make("A1", RealMatrix::from_rows({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
    f.eigenvalues = {{0, 1, 1}, {3, 2, 2}};
    f.tangents = {from_etas(3, {-1.0 / 3, 1.0 / 3})};
    f.nondegeneracy = {{3, unit({-2, 1, 1}), 1.0 / 3, true, {}}};
    f.curves = {{0, 1, 0, 0, "alpha = 0"},
                {0, 0, 1, 0, "beta = 0"},
                {1, -2, -1, 0, "alpha*beta - 2*alpha - beta = 0"},
                {1, -1, -2, 0, "alpha*beta - 2*beta - alpha = 0"}};
    f.curve_window = std::array<double, 4>{-1, 6, -1, 6};
    f.slope_check = SlopeCheck{3, {-1, 6, -1, 6}, 0.2};
    out.emplace(f.name, std::move(f));
  }
  {
    Fixture f = make("A2", RealMatrix::from_rows({{2, 1, 1}, {-1, 0, -1}, {-1, -1, 0}}));
    f.eigenvalues = {{0, 1, 1}, {1, 2, 2}};
    f.tangents = {from_etas(1, {-3.0, 3.0})};
    f.nondegeneracy = {{1, unit({-2, 1, 1}), 3.0, true, {}}};
    f.curves = {{1, -2, 1, 0, "alpha*beta - 2*alpha + beta = 0"},
                {1, 1, -2, 0, "alpha*beta - 2*beta + alpha = 0"}};
    f.curve_window = std::array<double, 4>{-2, 4, -2, 4};
    out.emplace(f.name, std::move(f));
  }
  {
    Matrix m = Matrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) {
      m(i, i) = 2;
      m(i, (i + 1) % 6) = -1;
      m(i, (i + 5) % 6) = -1;
    }
    Fixture f = make("A3", RealMatrix(m));
    f.eigenvalues = {{0, 1, 1}, {1, 2, 2}, {3, 2, 2}, {4, 1, 1}};
    f.tangents = {from_etas(3, {-1.0 / 3, 1.0 / 3})};
    f.nondegeneracy = {{1, unit({-2, -1, 1, 2, 1, -1}), 0.0, false, unit({0, -1, -1, 0, 1, 1})}};
    out.emplace(f.name, std::move(f));
  }
  {
    Fixture f = make("A4", RealMatrix::from_rows({{2, 0, -2, 0}, {2, -1, -2, 1}, {0, 1, 0, -1}, {-2, 3, 2, 1}}));
    f.eigenvalues = {{0, 3, 1}, {2, 1, 1}};
    f.degenerate = {{0, unit({1, 0, 1, 0}), "inconclusive", {}}};
    out.emplace(f.name, std::move(f));
  }
  {
    Fixture f = make("A5", RealMatrix::from_rows({{3, -3, 3, 0}, {-1, 6, -1, -1}, {1, -3, 1, 4}, {-1, 6, -1, -1}}));
    f.eigenvalues = {{0, 2, 1}, {3, 1, 1}, {6, 1, 1}};
    const double e1 = (1.0 - r10) / 3.0;
    f.degenerate = {
        {0, unit({-6, 0, 6, 0}), "case2",
         {{Side::plus, -1.0 / 3, -2.0, Quadrant::S},
          {Side::plus, e1, -3.0 - r10, Quadrant::S},
          {Side::minus, -1.0 / 3, -2.0, Quadrant::N},
          {Side::minus, 1.0, 0.0, Quadrant::W}}},
        {0, unit({6, 0, -6, 0}), "case2",
         {{Side::plus, -1.0, std::numeric_limits<double>::infinity(), Quadrant::S},
          {Side::plus, 1.0 / 3, -0.5, Quadrant::E},
          {Side::minus, -e1, 3.0 - r10, Quadrant::W},
          {Side::minus, 1.0 / 3, -0.5, Quadrant::W}}}};
    f.slope_check = SlopeCheck{0, {-1, 1, -1, 1}, 0.1};
    out.emplace(f.name, std::move(f));
  }
  {
    Fixture f = make("A6", RealMatrix::from_rows({{-2, 2, 0, 2}, {6, -4, 2, -10}, {-2, 2, 0, 6}, {-4, 3, -1, 6}}));
    f.eigenvalues = {{0, 4, 1}};
    f.figure_only = true;
    out.emplace(f.name, std::move(f));
  }
  return out;
}

const std::map<std::string, Fixture>& registry() {
  static const std::map<std::string, Fixture> fixtures = build();
  return fixtures;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"As2", "As3", "As4", "A1", "A2", "A3", "A4", "A5", "A6"};
}

const Fixture& fixture(const std::string& name) {
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw Error(ErrorKind::invalid_input, "unknown fixture '" + name + "'");
  return it->second;
}

}  // namespace fucik
