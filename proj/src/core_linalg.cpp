#include "fucik/core_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "fucik/error.hpp"

namespace fucik {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::not_an_eigenvalue: return "not an eigenvalue";
    case ErrorKind::out_of_range: return "not in range";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::degenerate_direction: return "degenerate direction";
    case ErrorKind::wrong_class: return "wrong degeneracy class";
    case ErrorKind::undefined_direction: return "undefined direction";
    case ErrorKind::capacity: return "capacity exceeded";
  }
  return "unknown";
}

RealMatrix::RealMatrix(Matrix entries) : a_(std::move(entries)) {
  if (a_.rows() == 0 || a_.cols() == 0) {
    throw Error(ErrorKind::invalid_input, "matrix dimension must be positive");
  }
  if (a_.rows() != a_.cols()) {
    std::ostringstream msg;
    msg << "matrix must be square, got " << a_.rows() << "x" << a_.cols();
    throw Error(ErrorKind::invalid_input, msg.str());
  }
  if (!a_.allFinite()) {
    throw Error(ErrorKind::invalid_input, "matrix entries must be finite");
  }
  Eigen::JacobiSVD<Matrix> svd(a_);
  norm_ = svd.singularValues()(0);
}

RealMatrix RealMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw Error(ErrorKind::invalid_input, "matrix dimension must be positive");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      std::ostringstream msg;
      msg << "row " << i << " has " << rows[i].size() << " entries, expected " << n;
      throw Error(ErrorKind::invalid_input, msg.str());
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return RealMatrix(std::move(m));
}

bool RealMatrix::is_symmetric(double tol) const {
  return (a_ - a_.transpose()).cwiseAbs().maxCoeff() <= tol;
}

void Tolerances::validate() const {
  if (!(tol_rank > 0 && tol_residual > 0 && tol_sign > 0 && tol_dedup > 0)) {
    throw Error(ErrorKind::invalid_input, "tolerances must be strictly positive");
  }
  if (tol_sign < tol_residual) {
    throw Error(ErrorKind::invalid_input, "tol_sign must not be smaller than tol_residual");
  }
}

const Eigenspace* SpectralData::find(double lambda, double tol) const {
  const Eigenspace* best = nullptr;
  double best_dist = tol;
  for (const auto& e : eigenvalues) {
    const double d = std::abs(e.lambda - lambda);
    if (d <= best_dist) {
      best = &e;
      best_dist = d;
    }
  }
  return best;
}

namespace {

using Complex = std::complex<double>;

// Spread allowed for a cluster of m computed eigenvalues that stem from one
// eigenvalue: a Jordan block of size m splits by about eps^(1/m) * |A|.
constexpr double kClusterSlack = 10.0;

double cluster_radius(int m, double scale) {
  const double eps = std::numeric_limits<double>::epsilon();
  return kClusterSlack * std::pow(eps, 1.0 / m) * scale;
}

struct Cluster {
  std::vector<Complex> members;

  Complex mean() const {
    Complex s{0.0, 0.0};
    for (const auto& z : members) s += z;
    return s / static_cast<double>(members.size());
  }
};

double spread_of(const std::vector<Complex>& zs) {
  Complex s{0.0, 0.0};
  for (const auto& z : zs) s += z;
  s /= static_cast<double>(zs.size());
  double r = 0.0;
  for (const auto& z : zs) r = std::max(r, std::abs(z - s));
  return r;
}

// Groups perturbed copies of a multiple eigenvalue. A Jordan block of size m
// splits into a ring of radius ~ eps^(1/m), so pairwise merging cannot grow a
// cluster; instead try each size from large to small and take the tightest
// nearest-neighbour group that fits its radius.
std::vector<Cluster> agglomerate(const Eigen::VectorXcd& values, double scale) {
  std::vector<Complex> rest(values.data(), values.data() + values.size());
  std::vector<Cluster> clusters;
  while (!rest.empty()) {
    std::vector<std::size_t> best;
    for (std::size_t m = rest.size(); m >= 2 && best.empty(); --m) {
      double best_spread = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rest.size(); ++i) {
        std::vector<std::size_t> order(rest.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
          return std::abs(rest[x] - rest[i]) < std::abs(rest[y] - rest[i]);
        });
        order.resize(m);
        std::vector<Complex> group;
        for (std::size_t k : order) group.push_back(rest[k]);
        const double s = spread_of(group);
        if (s <= cluster_radius(static_cast<int>(m), scale) && s < best_spread) {
          best_spread = s;
          best = order;
        }
      }
    }
    if (best.empty()) best = {0};
    Cluster c;
    std::sort(best.begin(), best.end());
    for (std::size_t k : best) c.members.push_back(rest[k]);
    for (auto it = best.rbegin(); it != best.rend(); ++it) rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(*it));
    clusters.push_back(std::move(c));
  }
  return clusters;
}

struct KernelPair {
  Matrix kernel;
  Matrix adjoint;
};

KernelPair kernels_of(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s(0));
  Eigen::Index p = 0;
  for (Eigen::Index i = s.size() - 1; i >= 0 && s(i) <= cutoff; --i) ++p;
  return {svd.matrixV().rightCols(p), svd.matrixU().rightCols(p)};
}

}  // namespace

Matrix null_space(const Matrix& m, double rel_tol) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s(0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(m.cols() - rank);
}

Eigenspace eigenspace_at(const RealMatrix& a, double lambda, const Tolerances& tol) {
  const int n = a.n();
  const Matrix shifted = a.entries() - lambda * Matrix::Identity(n, n);
  auto [kernel, adjoint] = kernels_of(shifted, tol.tol_rank);
  if (kernel.cols() == 0) {
    std::ostringstream msg;
    msg << "lambda = " << lambda << " is not an eigenvalue (kernel empty at tol_rank "
        << tol.tol_rank << ")";
    throw Error(ErrorKind::not_an_eigenvalue, msg.str());
  }
  Eigenspace e;
  e.lambda = lambda;
  e.geometric_mult = static_cast<int>(kernel.cols());
  e.algebraic_mult = e.geometric_mult;
  e.kernel_basis = std::move(kernel);
  e.adjoint_kernel_basis = std::move(adjoint);
  return e;
}

SpectralData spectral_data(const RealMatrix& a, const Tolerances& tol) {
  tol.validate();
  const double scale = 1.0 + a.norm();
  Eigen::EigenSolver<Matrix> solver(a.entries(), /*computeEigenvectors=*/false);
  const Eigen::VectorXcd values = solver.eigenvalues();

  std::vector<Cluster> pending = agglomerate(values, scale);
  std::vector<Eigenspace> found;
  while (!pending.empty()) {
    Cluster c = std::move(pending.back());
    pending.pop_back();
    const Complex mu = c.mean();
    if (std::abs(mu.imag()) > tol.tol_rank * scale) continue;
    const double lambda = mu.real();
    const Matrix shifted = a.entries() - lambda * Matrix::Identity(a.n(), a.n());
    auto [kernel, adjoint] = kernels_of(shifted, tol.tol_rank);
    if (kernel.cols() == 0) {
      // Spurious merge: fall back to the individual members.
      if (c.members.size() > 1) {
        for (const auto& z : c.members) pending.push_back({{z}});
      }
      continue;
    }
    Eigenspace e;
    e.lambda = lambda;
    e.geometric_mult = static_cast<int>(kernel.cols());
    e.algebraic_mult = std::max(static_cast<int>(c.members.size()), e.geometric_mult);
    e.kernel_basis = std::move(kernel);
    e.adjoint_kernel_basis = std::move(adjoint);
    found.push_back(std::move(e));
  }

  std::sort(found.begin(), found.end(),
            [](const Eigenspace& x, const Eigenspace& y) { return x.lambda < y.lambda; });

  SpectralData out;
  for (auto& e : found) {
    if (!out.eigenvalues.empty() &&
        std::abs(out.eigenvalues.back().lambda - e.lambda) <= tol.tol_rank * scale) {
      out.eigenvalues.back().algebraic_mult += e.algebraic_mult;
      continue;
    }
    out.eigenvalues.push_back(std::move(e));
  }
  return out;
}

Vector project_onto(const Matrix& basis, const Vector& x) {
  if (basis.cols() == 0) return Vector::Zero(x.size());
  return basis * (basis.transpose() * x);
}

Vector restricted_solve(const RealMatrix& a, double lambda, const Vector& y, const Tolerances& tol) {
  const int n = a.n();
  if (y.size() != n) throw Error(ErrorKind::invalid_input, "right-hand side has wrong length");
  const Matrix shifted = a.entries() - lambda * Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = tol.tol_rank * std::max(1.0, s(0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  const Matrix adjoint = svd.matrixU().rightCols(n - rank);
  const double off_range = (adjoint.transpose() * y).norm();
  if (off_range > tol.tol_sign * std::max(1.0, y.norm())) {
    std::ostringstream msg;
    msg << "right-hand side has adjoint-kernel component " << off_range
        << ", not in Img(A - lambda I)";
    throw Error(ErrorKind::out_of_range, msg.str());
  }
  const Matrix ur = svd.matrixU().leftCols(rank);
  const Matrix vr = svd.matrixV().leftCols(rank);
  Vector x = vr * (s.head(rank).cwiseInverse().asDiagonal() * (ur.transpose() * y));
  const Matrix kernel = svd.matrixV().rightCols(n - rank);
  x -= project_onto(kernel, x);
  return x;
}

PosNegParts pos_neg_parts(const Vector& u) {
  return {u.cwiseMax(0.0), (-u).cwiseMax(0.0)};
}

SignMatrices sign_matrices(const Vector& u, const Tolerances& tol) {
  SignMatrices out{Vector::Zero(u.size()), Vector::Zero(u.size())};
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) <= tol.tol_sign) {
      out.xi0(i) = 1.0;
    } else {
      out.xi(i) = u(i) > 0 ? 1.0 : -1.0;
    }
  }
  return out;
}

Matrix orthogonal_complement(const Vector& x) {
  const auto k = x.size();
  if (k <= 1) return Matrix(k, 0);
  Eigen::HouseholderQR<Matrix> qr(x.normalized());
  const Matrix q = qr.householderQ() * Matrix::Identity(k, k);
  return q.rightCols(k - 1);
}

}  // namespace fucik
