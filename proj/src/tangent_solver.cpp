#include "fucik/tangent_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fucik/error.hpp"
#include "fucik/polynomial.hpp"
#include "fucik/sampling.hpp"

namespace fucik {

SignPattern::SignPattern(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) throw Error(ErrorKind::invalid_input, "sign pattern entries must be +1 or -1");
  }
}

SignPattern SignPattern::from_bits(int n, std::uint64_t bits) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = ((bits >> i) & 1u) ? -1 : 1;
  return SignPattern(std::move(s));
}

SignPattern SignPattern::of(const Vector& u, double tol) {
  std::vector<int> s(static_cast<std::size_t>(u.size()));
  for (Eigen::Index i = 0; i < u.size(); ++i) s[static_cast<std::size_t>(i)] = u(i) < -tol ? -1 : 1;
  return SignPattern(std::move(s));
}

int SignPattern::negatives() const {
  return static_cast<int>(std::count(signs_.begin(), signs_.end(), -1));
}

bool SignPattern::consistent(const Vector& u, double tol) const {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (signs_[static_cast<std::size_t>(i)] * u(i) < -tol) return false;
  }
  return true;
}

SignPattern SignPattern::negated() const {
  std::vector<int> s = signs_;
  for (int& x : s) x = -x;
  return SignPattern(std::move(s));
}

Vector SignPattern::as_vector() const {
  Vector v(size());
  for (int i = 0; i < size(); ++i) v(i) = signs_[static_cast<std::size_t>(i)];
  return v;
}

std::string SignPattern::str() const {
  std::string out;
  for (int s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

const char* to_string(Side side) { return side == Side::plus ? "plus" : "minus"; }

const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::E: return "E";
    case Quadrant::S: return "S";
    case Quadrant::W: return "W";
    case Quadrant::N: return "N";
  }
  return "?";
}

const char* to_string(Nondegeneracy::Status s) {
  switch (s) {
    case Nondegeneracy::Status::holds: return "holds";
    case Nondegeneracy::Status::fails: return "fails";
    case Nondegeneracy::Status::not_applicable: return "not-applicable";
  }
  return "?";
}

std::vector<Quadrant> quadrant_of(double eta, Side side) {
  constexpr double kZero = 1e-12;
  if (side == Side::plus) {
    if (std::abs(eta) <= kZero) return {Quadrant::E, Quadrant::S};
    return {eta > 0 ? Quadrant::E : Quadrant::S};
  }
  if (std::abs(eta) <= kZero) return {Quadrant::W, Quadrant::N};
  return {eta > 0 ? Quadrant::W : Quadrant::N};
}

double slope_from_eta(double eta, double snap) {
  if (std::isinf(eta)) return 1.0;
  if (std::abs(eta + 1.0) <= snap) return std::numeric_limits<double>::infinity();
  return (eta - 1.0) / (eta + 1.0);
}

double eta_from_point(double alpha, double beta, double lambda) {
  if (alpha == beta) {
    throw Error(ErrorKind::undefined_direction, "alpha == beta: direction from the diagonal is undefined");
  }
  const double da = alpha - lambda;
  const double db = beta - lambda;
  return (da + db) / (da - db);
}

std::vector<Quadrant> TangentDirection::quadrants() const {
  auto q = quadrant_of(eta0, Side::plus);
  const auto m = quadrant_of(eta0, Side::minus);
  q.insert(q.end(), m.begin(), m.end());
  return q;
}

double tangent_residual(const Matrix& adjoint_basis, const Vector& u0, double eta0) {
  if (adjoint_basis.cols() == 0) return 0.0;
  const Vector r = adjoint_basis.transpose() * (u0.cwiseAbs() + eta0 * u0);
  return r.cwiseAbs().maxCoeff();
}

namespace {

// Evaluation radius for the determinant interpolation in eta.
constexpr double kEtaScale = 2.0;
// Relative singular-value cutoff deciding the kernel of the pencil at a root.
constexpr double kPencilKernelTol = 1e-7;
// Fallback sampling of eta when a branch pencil is singular for every eta.
constexpr double kContinuumEtaMin = -5.0;
constexpr double kContinuumEtaMax = 5.0;
constexpr double kContinuumEtaStep = 0.05;

struct Candidate {
  double eta;
  Vector coeffs;
  bool continuum;
};

double pencil_det(const Matrix& ms, const Matrix& m0, double eta) {
  const Matrix m = ms + eta * m0;
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

// Rayleigh-type correction for a simple pencil eigenvalue.
double polish_root(const Matrix& ms, const Matrix& m0, double eta) {
  for (int it = 0; it < 4; ++it) {
    const Matrix m = ms + eta * m0;
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto last = m.cols() - 1;
    const Vector c = svd.matrixV().col(last);
    const Vector y = svd.matrixU().col(last);
    const double denom = y.dot(m0 * c);
    if (std::abs(denom) < 1e-10) break;
    const double step = y.dot(m * c) / denom;
    eta -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(eta))) break;
  }
  return eta;
}

void collect_from_null(const Matrix& nullsp, double eta, bool continuum, std::vector<Candidate>& out) {
  const auto k = nullsp.cols();
  if (k == 0) return;
  if (k == 1) {
    const Vector c = nullsp.col(0).normalized();
    out.push_back({eta, c, continuum});
    out.push_back({eta, -c, continuum});
    return;
  }
  for (const Vector& x : sphere_samples(static_cast<int>(k))) {
    out.push_back({eta, (nullsp * x).normalized(), true});
  }
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

}  // namespace

std::vector<TangentDirection> tangent_directions(const RealMatrix& a, double lambda, const Tolerances& tol) {
  tol.validate();
  const int n = a.n();
  if (n > 20) throw Error(ErrorKind::capacity, "sign-pattern enumeration is limited to n <= 20");
  const Eigenspace es = eigenspace_at(a, lambda, tol);
  const Matrix& U = es.kernel_basis;
  const Matrix& V = es.adjoint_kernel_basis;
  const int p = es.dimension();
  const Matrix m0 = V.transpose() * U;

  std::vector<TangentDirection> accepted;
  const std::uint64_t branches = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < branches; ++bits) {
    const SignPattern pattern = SignPattern::from_bits(n, bits);
    const Matrix ms = V.transpose() * pattern.as_vector().asDiagonal() * U;

    const double mag = std::max(1.0, ms.norm() + kEtaScale * m0.norm());
    auto coeffs = poly::fit([&](double t) { return pencil_det(ms, m0, kEtaScale * t); }, p);
    coeffs = poly::trim(std::move(coeffs), 1e-10, tol.tol_rank * std::pow(mag, p));

    std::vector<Candidate> cands;
    if (coeffs.empty()) {
      const int steps = static_cast<int>(std::lround((kContinuumEtaMax - kContinuumEtaMin) / kContinuumEtaStep));
      for (int k = 0; k <= steps; ++k) {
        const double eta = kContinuumEtaMin + k * kContinuumEtaStep;
        collect_from_null(null_space(ms + eta * m0, kPencilKernelTol), eta, true, cands);
      }
    } else {
      auto roots = poly::roots(coeffs);
      roots = poly::merge_close(std::move(roots), 1e-5);
      for (const auto& r : roots) {
        if (std::abs(r.imag()) > 1e-6 * (1.0 + std::abs(r.real()))) continue;
        double eta = kEtaScale * r.real();
        eta = polish_root(ms, m0, eta);
        const Matrix nullsp = null_space(ms + eta * m0, kPencilKernelTol);
        collect_from_null(nullsp, eta, nullsp.cols() > 1, cands);
      }
    }

    for (const auto& c : cands) {
      const Vector u = U * c.coeffs;
      if (!pattern.consistent(u, tol.tol_sign)) continue;
      const double res = tangent_residual(V, u, c.eta);
      if (res > 10.0 * tol.tol_residual) continue;
      TangentDirection d;
      d.eta0 = c.eta;
      d.coeffs = c.coeffs;
      d.u0 = u;
      d.residual = res;
      d.continuum = c.continuum;
      // (eta, u) -> (-eta, -u) maps solutions to solutions. Sampled families
      // get their mirror image explicitly since the pattern -s samples its own
      // null-space basis.
      if (c.continuum) {
        TangentDirection m = d;
        m.eta0 = -d.eta0;
        m.coeffs = -d.coeffs;
        m.u0 = -d.u0;
        accepted.push_back(std::move(m));
      }
      accepted.push_back(std::move(d));
    }
  }

  std::sort(accepted.begin(), accepted.end(), [](const TangentDirection& x, const TangentDirection& y) {
    if (x.eta0 != y.eta0) return x.eta0 < y.eta0;
    return lex_less(x.u0, y.u0);
  });

  std::vector<TangentDirection> out;
  for (auto& d : accepted) {
    bool merged = false;
    for (auto& kept : out) {
      if (std::abs(kept.eta0 - d.eta0) <= tol.tol_dedup && (kept.u0 - d.u0).norm() <= tol.tol_dedup) {
        kept.continuum = kept.continuum || d.continuum;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(d));
  }

  for (auto& d : out) {
    d.pattern = SignPattern::of(d.u0, tol.tol_sign);
    d.slope = slope_from_eta(d.eta0);
    d.defective = p > 0 && (V.transpose() * d.u0).norm() <= tol.tol_sign;
    const bool has_zero = (d.u0.cwiseAbs().array() <= tol.tol_sign).any();
    if (has_zero) {
      d.nondegeneracy.reason = "u0 has a zero component";
    } else if (d.defective) {
      d.nondegeneracy.reason = "Q u0 = 0 (defective direction)";
    } else {
      d.nondegeneracy = check_nondegeneracy(a, lambda, d.u0, d.eta0, tol);
    }
  }
  return out;
}

Nondegeneracy check_nondegeneracy(const RealMatrix& a, double lambda, const Vector& u0, double eta0,
                                  const Tolerances& tol) {
  tol.validate();
  const int n = a.n();
  if (u0.size() != n || u0.norm() == 0.0) {
    throw Error(ErrorKind::precondition, "u0 must be a nonzero vector of matching length");
  }
  const Vector u = u0.normalized();
  const Matrix shifted = a.entries() - lambda * Matrix::Identity(n, n);
  if ((shifted * u).norm() > tol.tol_sign * (1.0 + a.norm())) {
    throw Error(ErrorKind::precondition, "u0 is not in Ker(A - lambda I)");
  }
  if ((u.cwiseAbs().array() <= tol.tol_sign).any()) {
    throw Error(ErrorKind::precondition, "u0 has a zero component; the nondegeneracy test needs all components nonzero");
  }
  const Eigenspace es = eigenspace_at(a, lambda, tol);
  const Matrix& U = es.kernel_basis;
  const Matrix& V = es.adjoint_kernel_basis;
  const int p = es.dimension();

  const Vector qu = V.transpose() * u;
  if (qu.norm() <= tol.tol_sign) {
    throw Error(ErrorKind::degenerate_direction, "Q u0 = 0: use the degenerate-case solver");
  }

  const Matrix w_basis = U * orthogonal_complement(U.transpose() * u);  // n x (p-1)
  const Vector xi = sign_matrices(u, tol).xi;
  Matrix l(p, p);
  l.leftCols(p - 1) = V.transpose() * ((xi.array() + eta0).matrix().asDiagonal() * w_basis);
  l.col(p - 1) = qu;

  Eigen::JacobiSVD<Matrix> svd(l, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Nondegeneracy out;
  out.sigma_min = s(p - 1);
  if (s(p - 1) > tol.tol_rank * std::max(1.0, s(0))) {
    out.status = Nondegeneracy::Status::holds;
    return out;
  }
  const Vector x = svd.matrixV().col(p - 1);
  out.status = Nondegeneracy::Status::fails;
  out.witness_w = w_basis * x.head(p - 1);
  out.witness_c = x(p - 1);
  return out;
}

}  // namespace fucik
