#include "fucik/degenerate_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fucik/error.hpp"
#include "fucik/polynomial.hpp"
#include "fucik/sampling.hpp"

namespace fucik {

const char* to_string(DegeneracyClass c) {
  switch (c) {
    case DegeneracyClass::regular: return "regular";
    case DegeneracyClass::case1: return "case1";
    case DegeneracyClass::case2: return "case2";
    case DegeneracyClass::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Newton multi-start settings for p >= 2.
constexpr double kStartLo = -5.0;
constexpr double kStartHi = 5.0;
constexpr double kStartSpacing = 0.5;
constexpr int kNewtonMaxIter = 60;
// Coefficients below kVanishFactor * tol_residual count as zero.
constexpr double kVanishFactor = 1e3;

Vector unit_kernel_vector(const RealMatrix& a, double lambda, const Vector& u0, const Tolerances& tol) {
  const int n = a.n();
  if (u0.size() != n || u0.norm() == 0.0) {
    throw Error(ErrorKind::precondition, "u0 must be a nonzero vector of matching length");
  }
  const Vector u = u0.normalized();
  const Matrix shifted = a.entries() - lambda * Matrix::Identity(n, n);
  if ((shifted * u).norm() > tol.tol_sign * (1.0 + a.norm())) {
    throw Error(ErrorKind::precondition, "u0 is not in Ker(A - lambda I)");
  }
  return u;
}

// Ingredients of the first-order system on one sign branch.
struct BranchSystem {
  Vector diag;  // diagonal of Xi(u0) + sigma * T, T = tau on the zero set
  const Matrix* V;
  const Vector* w;
  const Vector* g;
  const Matrix* uperp;

  Vector u1(const Vector& x) const {
    Vector u = *w + x(0) * *g;
    if (uperp->cols() > 0) u += *uperp * x.tail(x.size() - 1);
    return u;
  }

  Vector residual(const Vector& x) const {
    const Vector u = u1(x);
    return V->transpose() * ((diag.array() + x(0)).matrix().asDiagonal() * u);
  }

  Matrix jacobian(const Vector& x) const {
    const auto p = x.size();
    Matrix j(V->cols(), p);
    const Vector u = u1(x);
    const Vector shifted_diag = (diag.array() + x(0)).matrix();
    j.col(0) = V->transpose() * (u + shifted_diag.asDiagonal() * *g);
    if (p > 1) j.rightCols(p - 1) = V->transpose() * (shifted_diag.asDiagonal() * *uperp);
    return j;
  }

  // Largest coefficient of the polynomial system in (eta, d).
  double coefficient_norm() const {
    const auto B = diag.asDiagonal();
    double m = 0.0;
    m = std::max(m, (V->transpose() * (B * *w)).cwiseAbs().maxCoeff());
    m = std::max(m, (V->transpose() * (B * *g + *w)).cwiseAbs().maxCoeff());
    m = std::max(m, (V->transpose() * *g).cwiseAbs().maxCoeff());
    if (uperp->cols() > 0) {
      m = std::max(m, (V->transpose() * (B * *uperp)).cwiseAbs().maxCoeff());
      m = std::max(m, (V->transpose() * *uperp).cwiseAbs().maxCoeff());
    }
    return m;
  }
};

std::vector<Vector> solve_scalar_branch(const BranchSystem& sys) {
  const Matrix& V = *sys.V;
  const auto B = sys.diag.asDiagonal();
  const Vector v = V.col(0);
  const double c0 = v.dot(B * *sys.w);
  const double c1 = v.dot(B * *sys.g + *sys.w);
  const double c2 = v.dot(*sys.g);
  auto coeffs = poly::trim({c0, c1, c2}, 1e-12, 0.0);
  std::vector<Vector> out;
  if (coeffs.empty()) return out;
  auto roots = poly::merge_close(poly::roots(coeffs), 1e-6);
  for (const auto& r : roots) {
    if (std::abs(r.imag()) > 1e-6 * (1.0 + std::abs(r.real()))) continue;
    out.push_back(Vector::Constant(1, r.real()));
  }
  return out;
}

std::vector<Vector> solve_newton_branch(const BranchSystem& sys, int p, double accept) {
  std::vector<Vector> out;
  for (const Vector& start : box_lattice(p, kStartLo, kStartHi, kStartSpacing)) {
    Vector x = start;
    double fnorm = sys.residual(x).norm();
    for (int it = 0; it < kNewtonMaxIter && fnorm > 1e-14; ++it) {
      const Vector f = sys.residual(x);
      const Matrix j = sys.jacobian(x);
      const Vector step = j.completeOrthogonalDecomposition().solve(-f);
      double t = 1.0;
      bool improved = false;
      for (int k = 0; k < 30; ++k) {
        const Vector trial = x + t * step;
        const double tn = sys.residual(trial).norm();
        if (tn < fnorm) {
          x = trial;
          fnorm = tn;
          improved = true;
          break;
        }
        t *= 0.5;
      }
      if (!improved) break;
    }
    if (fnorm <= accept) out.push_back(x);
  }
  return out;
}

bool branch_consistent(const Vector& u1, const std::vector<int>& zero_set, const std::vector<int>& tau,
                       double tol) {
  for (std::size_t k = 0; k < zero_set.size(); ++k) {
    if (tau[k] * u1(zero_set[k]) < -tol) return false;
  }
  return true;
}

// Consistent eta range of a vanishing branch. p = 1: exact interval of the
// linear inequalities tau_i (w_i + eta g_i) >= -tol. p >= 2: extent over the
// start lattice. Returns false when nothing is consistent.
bool consistent_range(const BranchSystem& sys, int p, const std::vector<int>& zero_set,
                      const std::vector<int>& tau, double tol, double& lo, double& hi) {
  const double inf = std::numeric_limits<double>::infinity();
  if (p == 1) {
    lo = -inf;
    hi = inf;
    for (std::size_t k = 0; k < zero_set.size(); ++k) {
      const double a = tau[k] * (*sys.w)(zero_set[k]);
      const double b = tau[k] * (*sys.g)(zero_set[k]);
      // a + eta b >= -tol
      if (std::abs(b) <= 1e-14) {
        if (a < -tol) return false;
      } else if (b > 0) {
        lo = std::max(lo, (-tol - a) / b);
      } else {
        hi = std::min(hi, (-tol - a) / b);
      }
    }
    return lo <= hi;
  }
  lo = inf;
  hi = -inf;
  for (const Vector& x : box_lattice(p, kStartLo, kStartHi, kStartSpacing)) {
    if (branch_consistent(sys.u1(x), zero_set, tau, tol)) {
      lo = std::min(lo, x(0));
      hi = std::max(hi, x(0));
    }
  }
  return lo <= hi;
}

}  // namespace

DegeneracyClass classify(const RealMatrix& a, double lambda, const Vector& u0, const Tolerances& tol) {
  tol.validate();
  const Vector u = unit_kernel_vector(a, lambda, u0, tol);
  const Eigenspace es = eigenspace_at(a, lambda, tol);
  const Matrix& V = es.adjoint_kernel_basis;
  if ((V.transpose() * u).norm() > tol.tol_sign) return DegeneracyClass::regular;
  if ((V.transpose() * u.cwiseAbs()).norm() > tol.tol_sign) return DegeneracyClass::case1;
  return DegeneracyClass::case2;
}

double one_sided_residual(const Matrix& adjoint_basis, const Vector& u0, const Vector& u1, double eta,
                          Side side, const Tolerances& tol) {
  if (adjoint_basis.cols() == 0) return 0.0;
  const auto sm = sign_matrices(u0, tol);
  const double sigma = side == Side::plus ? 1.0 : -1.0;
  const Vector lhs = sm.xi.asDiagonal() * u1 + sigma * (sm.xi0.asDiagonal() * u1.cwiseAbs()) + eta * u1;
  return (adjoint_basis.transpose() * lhs).cwiseAbs().maxCoeff();
}

OneSidedTangents one_sided_tangents(const RealMatrix& a, double lambda, const Vector& u0, const Tolerances& tol) {
  const DegeneracyClass cls = classify(a, lambda, u0, tol);
  if (cls != DegeneracyClass::case2) {
    throw Error(ErrorKind::wrong_class, std::string("one-sided tangents need a case2 direction, got ") + to_string(cls));
  }
  const int n = a.n();
  const Vector u = u0.normalized();
  const Eigenspace es = eigenspace_at(a, lambda, tol);
  const Matrix& U = es.kernel_basis;
  const Matrix& V = es.adjoint_kernel_basis;
  const int p = es.dimension();

  OneSidedTangents out;
  out.u0 = u;
  out.abs_preimage = restricted_solve(a, lambda, u.cwiseAbs(), tol);
  out.generalized_eigenvector = restricted_solve(a, lambda, u, tol);
  const Matrix uperp = U * orthogonal_complement(U.transpose() * u);

  const SignMatrices sm = sign_matrices(u, tol);
  for (int i = 0; i < n; ++i) {
    if (sm.xi0(i) != 0.0) out.zero_set.push_back(i);
  }
  const auto zcount = out.zero_set.size();
  if (zcount > 20) throw Error(ErrorKind::capacity, "too many zero components in u0");

  const double vanish_tol = kVanishFactor * tol.tol_residual;
  const double accept = 10.0 * tol.tol_residual * (1.0 + a.norm());

  for (Side side : {Side::plus, Side::minus}) {
    const double sigma = side == Side::plus ? 1.0 : -1.0;
    std::vector<OneSidedEntry> entries;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << zcount); ++bits) {
      std::vector<int> tau(zcount);
      Vector diag = sm.xi;
      for (std::size_t k = 0; k < zcount; ++k) {
        tau[k] = ((bits >> k) & 1u) ? -1 : 1;
        diag(out.zero_set[k]) = sigma * tau[k];
      }
      const BranchSystem sys{diag, &V, &out.abs_preimage, &out.generalized_eigenvector, &uperp};

      if (sys.coefficient_norm() <= vanish_tol) {
        double lo = 0.0, hi = 0.0;
        if (consistent_range(sys, p, out.zero_set, tau, tol.tol_sign, lo, hi)) {
          out.vanishing.push_back({side, tau, lo, hi});
        }
        continue;
      }

      const auto roots = p == 1 ? solve_scalar_branch(sys) : solve_newton_branch(sys, p, accept);
      for (const Vector& x : roots) {
        const Vector u1 = sys.u1(x);
        if (!branch_consistent(u1, out.zero_set, tau, tol.tol_sign)) continue;
        const double eta = x(0);
        const double res = one_sided_residual(V, u, u1, eta, side, tol);
        if (res > accept) continue;
        OneSidedEntry e;
        e.side = side;
        e.eta0 = eta;
        e.z0 = p > 1 ? Vector(uperp * x.tail(p - 1)) : Vector::Zero(n);
        e.u1 = u1;
        e.slope = slope_from_eta(eta);
        e.quadrants = quadrant_of(eta, side);
        e.zero_signs = tau;
        e.residual = res;
        entries.push_back(std::move(e));
      }
    }

    std::sort(entries.begin(), entries.end(),
              [](const OneSidedEntry& x, const OneSidedEntry& y) { return x.eta0 < y.eta0; });
    std::vector<OneSidedEntry> unique;
    for (auto& e : entries) {
      const bool dup = std::any_of(unique.begin(), unique.end(), [&](const OneSidedEntry& k) {
        return std::abs(k.eta0 - e.eta0) <= tol.tol_dedup && (k.z0 - e.z0).norm() <= tol.tol_dedup;
      });
      if (!dup) unique.push_back(std::move(e));
    }
    (side == Side::plus ? out.plus : out.minus) = std::move(unique);
  }

  out.degeneracy = out.vanishing.empty() ? DegeneracyClass::case2 : DegeneracyClass::inconclusive;
  return out;
}

TangentDirection case1_direction(const RealMatrix& a, double lambda, const Vector& u0, const Tolerances& tol) {
  const DegeneracyClass cls = classify(a, lambda, u0, tol);
  if (cls != DegeneracyClass::case1) {
    throw Error(ErrorKind::wrong_class, std::string("slope-1 direction needs a case1 direction, got ") + to_string(cls));
  }
  const Eigenspace es = eigenspace_at(a, lambda, tol);
  TangentDirection d;
  d.u0 = u0.normalized();
  d.coeffs = es.kernel_basis.transpose() * d.u0;
  d.eta0 = std::numeric_limits<double>::infinity();
  d.slope = 1.0;
  d.pattern = SignPattern::of(d.u0, tol.tol_sign);
  d.nondegeneracy.reason = "Q u0 = 0 with Q|u0| != 0 (slope-1 direction)";
  d.residual = (es.adjoint_kernel_basis.transpose() * d.u0).cwiseAbs().maxCoeff();
  d.defective = true;
  return d;
}

std::vector<Vector> defective_directions(const RealMatrix& a, double lambda, const Tolerances& tol) {
  const Eigenspace es = eigenspace_at(a, lambda, tol);
  const Matrix m0 = es.adjoint_kernel_basis.transpose() * es.kernel_basis;
  const Matrix nullsp = null_space(m0, tol.tol_sign);
  std::vector<Vector> out;
  for (Eigen::Index k = 0; k < nullsp.cols(); ++k) {
    Vector u = (es.kernel_basis * nullsp.col(k)).normalized();
    // Orient so that the largest-magnitude component is positive.
    Eigen::Index imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    if (u(imax) < 0) u = -u;
    out.push_back(u);
    out.push_back(-u);
  }
  return out;
}

}  // namespace fucik
