#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fucik/error.hpp"
#include "fucik/fixtures.hpp"

using namespace fucik;

namespace {

// Smallest residual over sign patterns of the linear problem
// (A - alpha D+ - beta D-) u = 0 with u in the pattern's orthant.
double fucik_defect(const RealMatrix& a, double alpha, double beta) {
  const int n = a.n();
  double best = std::numeric_limits<double>::infinity();
  for (int bits = 0; bits < (1 << n); ++bits) {
    Matrix m = a.entries();
    for (int i = 0; i < n; ++i) m(i, i) -= (bits >> i & 1) ? beta : alpha;
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Vector u = svd.matrixV().col(n - 1);
    const double sv = svd.singularValues()(n - 1);
    for (double sgn : {1.0, -1.0}) {
      double off = 0.0;
      for (int i = 0; i < n; ++i) {
        const double want = (bits >> i & 1) ? -1.0 : 1.0;
        off = std::max(off, std::max(0.0, -want * sgn * u(i)));
      }
      best = std::min(best, sv + off);
    }
  }
  return best;
}

}  // namespace

TEST(Fixtures, NamesResolve) {
  for (const auto& name : fixture_names()) EXPECT_EQ(fixture(name).name, name);
  try {
    fixture("A7");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
}

TEST(Fixtures, EigenvaluesAgreeWithCharacteristicRoots) {
  for (const auto& name : fixture_names()) {
    const auto& f = fixture(name);
    const Matrix& a = f.matrix.entries();
    const Eigen::VectorXcd ev = a.eigenvalues();
    int total = 0;
    for (const auto& e : f.eigenvalues) {
      const Matrix shifted = a - e.lambda * Matrix::Identity(a.rows(), a.cols());
      Eigen::FullPivLU<Matrix> lu(shifted);
      lu.setThreshold(1e-9);
      EXPECT_EQ(a.rows() - lu.rank(), e.geometric) << name << " at " << e.lambda;
      // Algebraic multiplicity from the rank of the n-th power.
      Matrix power = Matrix::Identity(a.rows(), a.cols());
      for (int k = 0; k < a.rows(); ++k) power = power * shifted;
      Eigen::FullPivLU<Matrix> lp(power);
      lp.setThreshold(1e-9);
      EXPECT_EQ(a.rows() - lp.rank(), e.algebraic) << name << " at " << e.lambda;
      total += e.algebraic;
    }
    int real_count = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) real_count += std::abs(ev(i).imag()) < 1e-3;
    EXPECT_EQ(total, real_count) << name;
  }
}

TEST(Fixtures, ExpectedVectorsAreKernelVectors) {
  for (const auto& name : fixture_names()) {
    const auto& f = fixture(name);
    auto check = [&](double lambda, const Vector& u) {
      EXPECT_NEAR(u.norm(), 1.0, 1e-12);
      EXPECT_LE((f.matrix.entries() * u - lambda * u).norm(), 1e-12) << name;
    };
    for (const auto& nd : f.nondegeneracy) check(nd.lambda, nd.u0);
    for (const auto& d : f.degenerate) check(d.lambda, d.u0);
  }
}

TEST(Fixtures, TablesAreSelfConsistent) {
  for (const auto& name : fixture_names()) {
    const auto& f = fixture(name);
    for (const auto& t : f.tangents) {
      ASSERT_EQ(t.etas.size(), t.slopes.size());
      for (double e : t.etas) {
        const double s = (e - 1) / (e + 1);
        EXPECT_TRUE(std::any_of(t.slopes.begin(), t.slopes.end(), [&](double x) { return std::abs(x - s) < 1e-12; }));
      }
    }
    for (const auto& d : f.degenerate) {
      for (const auto& r : d.rows) {
        if (std::isfinite(r.slope)) {
          EXPECT_NEAR(r.slope, (r.eta - 1) / (r.eta + 1), 1e-12);
        }
        // Plus side lies below the diagonal; the quadrant follows the sign of eta.
        const bool east_or_south = r.side == Side::plus;
        EXPECT_EQ(r.quadrant == Quadrant::E || r.quadrant == Quadrant::S, east_or_south) << name;
        if (r.eta > 0) {
          EXPECT_TRUE(r.quadrant == Quadrant::E || r.quadrant == Quadrant::W) << name;
        } else if (r.eta < 0) {
          EXPECT_TRUE(r.quadrant == Quadrant::S || r.quadrant == Quadrant::N) << name;
        }
      }
    }
  }
}

TEST(Fixtures, CurvesSolveTheProblemNearTheirEigenvalue) {
  // Each closed-form curve passes through some (lambda, lambda); the branch
  // leaving that point must consist of genuine solutions. Far-away parts of
  // a hyperbola need not belong to the spectrum.
  for (const std::string name : {"A1", "A2"}) {
    const auto& f = fixture(name);
    for (const auto& c : f.curves) {
      bool anchored = false;
      for (const auto& e : f.eigenvalues) {
        const double l = e.lambda;
        if (std::abs(c.value(l, l)) > 1e-12) continue;
        double worst = 0.0;
        for (int k = -10; k <= 10; ++k) {
          const double t = 0.05 * k + 0.0123;
          double alpha = l + t, beta = 0.0;
          if (c.c_ab == 0 && c.c_b == 0) {
            alpha = -c.c_0 / c.c_a;
            beta = l + t;
          } else {
            beta = -(c.c_a * alpha + c.c_0) / (c.c_ab * alpha + c.c_b);
          }
          worst = std::max(worst, fucik_defect(f.matrix, alpha, beta));
        }
        anchored = anchored || worst <= 1e-10;
      }
      EXPECT_TRUE(anchored) << name << " " << c.text;
    }
  }
}
