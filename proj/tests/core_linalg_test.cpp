#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fucik/core_linalg.hpp"
#include "fucik/error.hpp"
#include "fucik/fixtures.hpp"

using namespace fucik;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Nullity of M^k by full-pivot LU on the integer matrix: an independent count
// of the algebraic multiplicity of 0 once it stabilizes.
int nullity_of_power(const Matrix& m, int k) {
  Matrix p = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) p = p * m;
  Eigen::FullPivLU<Matrix> lu(p);
  lu.setThreshold(1e-10);
  return static_cast<int>(m.cols() - lu.rank());
}

void expect_eigen(const SpectralData& sd, double lambda, int alg, int geo) {
  const Eigenspace* e = sd.find(lambda, 1e-8);
  ASSERT_NE(e, nullptr) << "missing eigenvalue " << lambda;
  EXPECT_EQ(e->algebraic_mult, alg) << "lambda " << lambda;
  EXPECT_EQ(e->geometric_mult, geo) << "lambda " << lambda;
}

}  // namespace

TEST(RealMatrix, RejectsBadInput) {
  EXPECT_THROW(RealMatrix(Matrix(0, 0)), Error);
  EXPECT_THROW(RealMatrix(Matrix::Zero(2, 3)), Error);
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(RealMatrix{m}, Error);
  EXPECT_THROW(RealMatrix::from_rows({{1, 2}, {3}}), Error);
  try {
    RealMatrix(Matrix(0, 0));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
}

TEST(Tolerances, Validate) {
  Tolerances t;
  EXPECT_NO_THROW(t.validate());
  t.tol_sign = 1e-12;  // below tol_residual
  EXPECT_THROW(t.validate(), Error);
  t = Tolerances{};
  t.tol_rank = 0.0;
  EXPECT_THROW(t.validate(), Error);
}

TEST(SpectralData, A1) {
  const auto sd = spectral_data(fixture("A1").matrix);
  ASSERT_EQ(sd.eigenvalues.size(), 2u);
  expect_eigen(sd, 0.0, 1, 1);
  expect_eigen(sd, 3.0, 2, 2);
}

TEST(SpectralData, AllRowsEqualFamily) {
  for (int n = 2; n <= 4; ++n) {
    const auto sd = spectral_data(fixture("As" + std::to_string(n)).matrix);
    ASSERT_EQ(sd.eigenvalues.size(), 2u);
    expect_eigen(sd, 0.0, n - 1, n - 1);
    expect_eigen(sd, n * (n + 1) / 2.0, 1, 1);
  }
}

TEST(SpectralData, Identity) {
  const auto sd = spectral_data(RealMatrix(Matrix::Identity(3, 3)));
  ASSERT_EQ(sd.eigenvalues.size(), 1u);
  expect_eigen(sd, 1.0, 3, 3);
}

TEST(SpectralData, OneByOne) {
  const auto sd = spectral_data(RealMatrix::from_rows({{7}}));
  ASSERT_EQ(sd.eigenvalues.size(), 1u);
  expect_eigen(sd, 7.0, 1, 1);
}

TEST(SpectralData, ComplexPairDropped) {
  const auto sd = spectral_data(RealMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 2}}));
  ASSERT_EQ(sd.eigenvalues.size(), 1u);
  expect_eigen(sd, 2.0, 1, 1);
}

TEST(SpectralData, DefectiveFixturesMatchRankOracle) {
  // Algebraic multiplicity of 0 = stabilized nullity of A^k; geometric = nullity of A.
  for (const char* name : {"A4", "A5", "A6"}) {
    const Matrix& m = fixture(name).matrix.entries();
    const int geo = nullity_of_power(m, 1);
    const int alg = nullity_of_power(m, m.rows());
    const auto sd = spectral_data(fixture(name).matrix);
    SCOPED_TRACE(name);
    expect_eigen(sd, 0.0, alg, geo);
  }
  EXPECT_EQ(nullity_of_power(fixture("A5").matrix.entries(), 2), 2);
  EXPECT_EQ(nullity_of_power(fixture("A5").matrix.entries(), 1), 1);
}

TEST(SpectralData, A5OtherEigenvalues) {
  const auto sd = spectral_data(fixture("A5").matrix);
  ASSERT_EQ(sd.eigenvalues.size(), 3u);
  expect_eigen(sd, 3.0, 1, 1);
  expect_eigen(sd, 6.0, 1, 1);
}

TEST(SpectralData, KernelInvariantsOnRandomMatrices) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m(5, 5);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    if (trial % 2) m = (m + m.transpose()).eval();
    const RealMatrix a(m);
    const auto sd = spectral_data(a);
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& e : sd.eigenvalues) {
      EXPECT_GT(e.lambda, prev);
      prev = e.lambda;
      EXPECT_GE(e.geometric_mult, 1);
      EXPECT_LE(e.geometric_mult, e.algebraic_mult);
      const Matrix shifted = m - e.lambda * Matrix::Identity(5, 5);
      const Matrix& U = e.kernel_basis;
      const Matrix& V = e.adjoint_kernel_basis;
      EXPECT_LE((shifted * U).norm(), 1e-10 * (1 + a.norm()));
      EXPECT_LE((shifted.transpose() * V).norm(), 1e-10 * (1 + a.norm()));
      EXPECT_LE((U.transpose() * U - Matrix::Identity(U.cols(), U.cols())).norm(), 1e-12);
      EXPECT_LE((V.transpose() * V - Matrix::Identity(V.cols(), V.cols())).norm(), 1e-12);
      if (trial % 2) {
        // Symmetric: kernel and adjoint kernel coincide.
        EXPECT_LE((U - V * (V.transpose() * U)).norm(), 1e-10);
      }
    }
    if (trial % 2) {
      int total = 0;
      for (const auto& e : sd.eigenvalues) total += e.algebraic_mult;
      EXPECT_EQ(total, 5);
    }
  }
}

TEST(EigenspaceAt, NotAnEigenvalue) {
  try {
    eigenspace_at(fixture("A1").matrix, 1.0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_an_eigenvalue);
  }
}

TEST(ProjectOnto, Examples) {
  Matrix e1 = Matrix::Zero(2, 1);
  e1(0, 0) = 1;
  EXPECT_TRUE(project_onto(e1, vec({3, 4})).isApprox(vec({3, 0})));
  EXPECT_EQ(project_onto(Matrix(2, 0), vec({3, 4})), Vector::Zero(2));

  const Eigenspace es = eigenspace_at(fixture("A5").matrix, 0.0);
  EXPECT_LE(project_onto(es.adjoint_kernel_basis, vec({-6, 0, 6, 0})).norm(), 1e-12);
  EXPECT_LE((es.adjoint_kernel_basis.col(0).cwiseAbs() - vec({0, 1, 0, 1}) / std::sqrt(2.0)).norm(), 1e-12);
}

TEST(ProjectOnto, IdempotentAndSymmetric) {
  std::mt19937 rng(3);
  std::normal_distribution<double> nd;
  Matrix raw(6, 3);
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw.data()[i] = nd(rng);
  const Matrix q = Eigen::HouseholderQR<Matrix>(raw).householderQ() * Matrix::Identity(6, 3);
  for (int t = 0; t < 20; ++t) {
    Vector x(6), y(6);
    for (int i = 0; i < 6; ++i) {
      x(i) = nd(rng);
      y(i) = nd(rng);
    }
    const Vector px = project_onto(q, x);
    EXPECT_LE((project_onto(q, px) - px).norm(), 1e-12);
    EXPECT_NEAR(px.dot(y), x.dot(project_onto(q, y)), 1e-12);
    EXPECT_LE((project_onto(q, q.col(1)) - q.col(1)).norm(), 1e-12);
  }
}

TEST(RestrictedSolve, MatchesPseudoinverseOracle) {
  struct Case {
    const char* name;
    double lambda;
    Vector y;
  };
  const std::vector<Case> cases = {{"A5", 0.0, vec({-6, 0, 6, 0})},
                                   {"A1", 3.0, vec({1, 1, 1})},
                                   {"A1", 3.0, vec({0, 0, 0})},
                                   {"A3", 1.0, vec({1, 1, 1, 1, 1, 1})}};
  for (const auto& c : cases) {
    SCOPED_TRACE(c.name);
    const RealMatrix& a = fixture(c.name).matrix;
    const Matrix shifted = a.entries() - c.lambda * Matrix::Identity(a.n(), a.n());
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(shifted);
    cod.setThreshold(1e-10);
    const Vector oracle = cod.solve(c.y);  // minimum norm: orthogonal to the kernel
    const Vector x = restricted_solve(a, c.lambda, c.y);
    EXPECT_LE((x - oracle).norm(), 1e-10 * (1 + oracle.norm()));
    EXPECT_LE((shifted * x - c.y).norm(), 1e-10 * (1 + a.norm()) * std::max(1.0, c.y.norm()));
    const Eigenspace es = eigenspace_at(a, c.lambda);
    EXPECT_LE((es.kernel_basis.transpose() * x).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(RestrictedSolve, A5GeneralizedEigenvector) {
  const RealMatrix& a = fixture("A5").matrix;
  const Vector u0 = vec({-6, 0, 6, 0});
  const Vector x = restricted_solve(a, 0.0, u0);
  EXPECT_LE((a.entries() * x - u0).norm(), 1e-10);
  EXPECT_NEAR(x.dot(u0), 0.0, 1e-10);
  // The published representative differs by a kernel multiple.
  const Vector published = vec({-5, 0, 3, 2});
  const Vector diff = published - x;
  EXPECT_LE((diff - u0 * (u0.dot(diff) / u0.squaredNorm())).norm(), 1e-10);
}

TEST(RestrictedSolve, OutOfRange) {
  const RealMatrix& a = fixture("A5").matrix;
  try {
    restricted_solve(a, 0.0, vec({0, 1, 0, -1}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::out_of_range);
  }
}

TEST(PosNegParts, Examples) {
  const auto p = pos_neg_parts(vec({1, -2, 0}));
  EXPECT_EQ(p.plus, vec({1, 0, 0}));
  EXPECT_EQ(p.minus, vec({0, 2, 0}));
  const auto q = pos_neg_parts(vec({0.5, 2, 0}));
  EXPECT_EQ(q.plus, vec({0.5, 2, 0}));
  EXPECT_EQ(q.minus, Vector::Zero(3));
  const Vector u0 = vec({-2, 1, 1}) / std::sqrt(6.0);
  const auto r = pos_neg_parts(u0);
  EXPECT_TRUE(r.plus.isApprox(vec({0, 1, 1}) / std::sqrt(6.0)));
  EXPECT_TRUE(r.minus.isApprox(vec({2, 0, 0}) / std::sqrt(6.0)));
}

TEST(PosNegParts, Complementarity) {
  std::mt19937 rng(11);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 100; ++t) {
    Vector u(7);
    for (int i = 0; i < 7; ++i) u(i) = t % 3 == 0 && i % 2 ? 0.0 : nd(rng);
    const auto p = pos_neg_parts(u);
    EXPECT_EQ(p.plus.cwiseProduct(p.minus), Vector::Zero(7));
    EXPECT_EQ(p.plus - p.minus, u);
    EXPECT_EQ(p.plus + p.minus, u.cwiseAbs());
  }
}

TEST(SignMatrices, Examples) {
  auto s = sign_matrices(vec({3, -1, 0}));
  EXPECT_EQ(s.xi, vec({1, -1, 0}));
  EXPECT_EQ(s.xi0, vec({0, 0, 1}));
  s = sign_matrices(vec({-6, 0, 6, 0}));
  EXPECT_EQ(s.xi, vec({-1, 0, 1, 0}));
  EXPECT_EQ(s.xi0, vec({0, 1, 0, 1}));
  s = sign_matrices(vec({0.1, 2, 3}));
  EXPECT_EQ(s.xi, Vector::Ones(3));
  EXPECT_EQ(s.xi0, Vector::Zero(3));
  s = sign_matrices(vec({1e-9, -1e-9, 1}));
  EXPECT_EQ(s.xi0, vec({1, 1, 0}));
}

TEST(SignMatrices, Identities) {
  std::mt19937 rng(5);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    Vector u(6);
    for (int i = 0; i < 6; ++i) u(i) = i == t % 6 ? 0.0 : nd(rng);
    const auto s = sign_matrices(u);
    const auto sa = sign_matrices(u.cwiseAbs());
    EXPECT_EQ(s.xi0, Vector::Ones(6) - sa.xi);
    EXPECT_LE((s.xi.cwiseProduct(u) - u.cwiseAbs()).norm(), 1e-8);
  }
}

TEST(OrthogonalComplement, Basis) {
  const Vector x = vec({1, 2, 2});
  const Matrix c = orthogonal_complement(x);
  ASSERT_EQ(c.rows(), 3);
  ASSERT_EQ(c.cols(), 2);
  EXPECT_LE((c.transpose() * x).norm(), 1e-12);
  EXPECT_LE((c.transpose() * c - Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_EQ(orthogonal_complement(vec({2})).cols(), 0);
}

TEST(NullSpace, RelativeCutoff) {
  Matrix m(2, 3);
  m << 1, 0, 0, 0, 1, 0;
  const Matrix n = null_space(m, 1e-9);
  ASSERT_EQ(n.cols(), 1);
  EXPECT_NEAR(std::abs(n(2, 0)), 1.0, 1e-12);
  EXPECT_EQ(null_space(Matrix::Identity(3, 3), 1e-9).cols(), 0);
}
