#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fucik/degenerate_solver.hpp"
#include "fucik/error.hpp"
#include "fucik/fixtures.hpp"
#include "test_support.hpp"

using namespace fucik;
using fucik::support::vec;

namespace {

std::vector<double> etas(const std::vector<OneSidedEntry>& side) {
  std::vector<double> out;
  for (const auto& e : side) out.push_back(e.eta0);
  std::sort(out.begin(), out.end());
  return out;
}

void expect_set(const std::vector<double>& got, std::vector<double> want) {
  std::sort(want.begin(), want.end());
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-8);
}

const OneSidedEntry* find(const std::vector<OneSidedEntry>& side, double eta) {
  for (const auto& e : side) {
    if (std::abs(e.eta0 - eta) <= 1e-8) return &e;
  }
  return nullptr;
}

// Defining relation of the first-order corrector: (A - lambda I) u1 = |u0| + eta u0.
double corrector_defect(const RealMatrix& a, double lambda, const Vector& u0, const OneSidedEntry& e) {
  const Matrix shifted = a.entries() - lambda * Matrix::Identity(a.n(), a.n());
  return (shifted * e.u1 - (u0.cwiseAbs() + e.eta0 * u0)).norm();
}

const double r10 = std::sqrt(10.0);

}  // namespace

TEST(Classify, Examples) {
  EXPECT_EQ(classify(fixture("A5").matrix, 0.0, vec({-1, 0, 1, 0}) / std::sqrt(2.0)), DegeneracyClass::case2);
  EXPECT_EQ(classify(fixture("A1").matrix, 3.0, vec({-2, 1, 1}) / std::sqrt(6.0)), DegeneracyClass::regular);
  const auto c1 = RealMatrix::from_rows({{1, 1, 0}, {-1, -1, 0}, {0, 0, 1}});
  EXPECT_EQ(classify(c1, 0.0, vec({1, -1, 0}) / std::sqrt(2.0)), DegeneracyClass::case1);
  try {
    classify(fixture("A1").matrix, 3.0, vec({1, 1, 1}) / std::sqrt(3.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(OneSidedTangents, A5Tables) {
  const auto& a = fixture("A5").matrix;
  const Vector u0 = vec({-1, 0, 1, 0}) / std::sqrt(2.0);
  const double e1 = (1 - r10) / 3;

  const auto pos = one_sided_tangents(a, 0.0, u0);
  EXPECT_EQ(pos.degeneracy, DegeneracyClass::case2);
  expect_set(etas(pos.plus), {-1.0 / 3, e1});
  expect_set(etas(pos.minus), {-1.0 / 3, 1.0});
  EXPECT_EQ(find(pos.plus, e1)->quadrants, std::vector<Quadrant>{Quadrant::S});
  EXPECT_EQ(find(pos.minus, 1.0)->quadrants, std::vector<Quadrant>{Quadrant::W});
  EXPECT_NEAR(find(pos.plus, e1)->slope, -3 - r10, 1e-8);

  const auto neg = one_sided_tangents(a, 0.0, -u0);
  expect_set(etas(neg.plus), {-1.0, 1.0 / 3});
  expect_set(etas(neg.minus), {-e1, 1.0 / 3});
  EXPECT_TRUE(std::isinf(find(neg.plus, -1.0)->slope));
  EXPECT_EQ(find(neg.plus, 1.0 / 3)->quadrants, std::vector<Quadrant>{Quadrant::E});
  EXPECT_EQ(find(neg.minus, -e1)->quadrants, std::vector<Quadrant>{Quadrant::W});

  // The generalized eigenvector solves (A - lambda I) u_g = u0 and is orthogonal to the kernel.
  EXPECT_LE((a.entries() * pos.generalized_eigenvector - u0).norm(), 1e-10);
  EXPECT_NEAR(pos.generalized_eigenvector.dot(u0), 0.0, 1e-10);
  EXPECT_EQ(pos.zero_set, (std::vector<int>{1, 3}));

  for (const auto* side : {&pos.plus, &pos.minus}) {
    for (const auto& e : *side) EXPECT_LE(corrector_defect(a, 0.0, u0, e), 1e-9);
  }
}

TEST(OneSidedTangents, A4Inconclusive) {
  const auto os = one_sided_tangents(fixture("A4").matrix, 0.0, vec({1, 0, 1, 0}) / std::sqrt(2.0));
  EXPECT_EQ(os.degeneracy, DegeneracyClass::inconclusive);
  EXPECT_FALSE(os.vanishing.empty());
  for (const auto& v : os.vanishing) EXPECT_LE(v.eta_lo, v.eta_hi);
}

TEST(OneSidedTangents, JordanBlock) {
  // [[0,1],[0,0]] at 0 with u0 = e1: u1 = (1 + eta) e2, so the test reads
  // sigma |1 + eta| + eta (1 + eta) = 0.
  const auto a = RealMatrix::from_rows({{0, 1}, {0, 0}});
  const auto os = one_sided_tangents(a, 0.0, vec({1, 0}));
  expect_set(etas(os.plus), {-1.0});
  expect_set(etas(os.minus), {-1.0, 1.0});
}

TEST(OneSidedTangents, SideNegationDuality) {
  // Replacing u0 by -u0 swaps the sides and flips eta.
  for (const std::string name : {"A5", "A6"}) {
    const auto& a = fixture(name).matrix;
    for (const Vector& u0 : defective_directions(a, 0.0)) {
      const auto os = one_sided_tangents(a, 0.0, u0);
      const auto neg = one_sided_tangents(a, 0.0, -u0);
      std::vector<double> flipped;
      for (double e : etas(neg.minus)) flipped.push_back(-e);
      expect_set(etas(os.plus), flipped);
      flipped.clear();
      for (double e : etas(neg.plus)) flipped.push_back(-e);
      expect_set(etas(os.minus), flipped);
    }
  }
}

TEST(OneSidedTangents, ResidualsAndCorrector) {
  const Tolerances tol;
  for (const std::string name : {"A5", "A6"}) {
    const auto& a = fixture(name).matrix;
    const Eigenspace es = eigenspace_at(a, 0.0, tol);
    for (const Vector& u0 : defective_directions(a, 0.0)) {
      const auto os = one_sided_tangents(a, 0.0, u0);
      for (const auto& e : os.plus) {
        EXPECT_LE(one_sided_residual(es.adjoint_kernel_basis, u0, e.u1, e.eta0, Side::plus), 10 * tol.tol_residual);
        EXPECT_LE(corrector_defect(a, 0.0, u0, e), 1e-9);
        EXPECT_NEAR(e.z0.dot(u0), 0.0, 1e-10);
      }
      for (const auto& e : os.minus) {
        EXPECT_LE(one_sided_residual(es.adjoint_kernel_basis, u0, e.u1, e.eta0, Side::minus), 10 * tol.tol_residual);
        EXPECT_LE(corrector_defect(a, 0.0, u0, e), 1e-9);
      }
    }
  }
}

TEST(OneSidedTangents, WrongClass) {
  try {
    one_sided_tangents(fixture("A1").matrix, 3.0, vec({-2, 1, 1}) / std::sqrt(6.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::wrong_class);
  }
}

TEST(Case1Direction, SlopeOne) {
  const auto a = RealMatrix::from_rows({{1, 1, 0}, {-1, -1, 0}, {0, 0, 1}});
  const auto d = case1_direction(a, 0.0, vec({1, -1, 0}) / std::sqrt(2.0));
  EXPECT_TRUE(std::isinf(d.eta0));
  EXPECT_DOUBLE_EQ(d.slope, 1.0);
  EXPECT_TRUE(d.defective);
  try {
    case1_direction(fixture("A5").matrix, 0.0, vec({-1, 0, 1, 0}) / std::sqrt(2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::wrong_class);
  }
}

TEST(DefectiveDirections, Examples) {
  const auto a5 = defective_directions(fixture("A5").matrix, 0.0);
  ASSERT_EQ(a5.size(), 2u);
  EXPECT_NEAR(std::abs(a5[0].dot(vec({-1, 0, 1, 0}) / std::sqrt(2.0))), 1.0, 1e-10);
  EXPECT_LE((a5[0] + a5[1]).norm(), 1e-12);
  const auto a6 = defective_directions(fixture("A6").matrix, 0.0);
  ASSERT_EQ(a6.size(), 2u);
  EXPECT_NEAR(std::abs(a6[0].dot(vec({1, 1, -1, 0}) / std::sqrt(3.0))), 1.0, 1e-10);
  EXPECT_TRUE(defective_directions(fixture("A1").matrix, 3.0).empty());
}

TEST(Classify, SymmetricMatricesAreRegular) {
  const Tolerances tol;
  for (const auto& [name, a] : support::property_matrices()) {
    if (!a.is_symmetric()) continue;
    for (const auto& es : spectral_data(a, tol).eigenvalues) {
      for (Eigen::Index j = 0; j < es.kernel_basis.cols(); ++j) {
        EXPECT_EQ(classify(a, es.lambda, es.kernel_basis.col(j), tol), DegeneracyClass::regular) << name;
      }
      EXPECT_TRUE(defective_directions(a, es.lambda, tol).empty()) << name;
    }
  }
}
