#pragma once

// Emanation directions of Fucik curves at a diagonal point (lambda, lambda).
//
// Writing alpha = lambda + eps (eta + 1), beta = lambda + eps (eta - 1), a
// curve leaving (lambda, lambda) along eta0 needs a unit u0 in Ker(A - lambda I)
// with <|u0| + eta0 u0, v> = 0 for every v in Ker(A^t - lambda I). Inside a
// fixed orthant |u0| is linear, so each sign pattern turns this system into a
// p x p matrix pencil in eta0.

#include <cstdint>
#include <string>
#include <vector>

#include "fucik/core_linalg.hpp"

namespace fucik {

/// Orthant fixing the linearization of |u|: signs are -1 or +1. A vector u is
/// consistent with the pattern iff s_i u_i >= -tol for all i, so zero
/// components fit either sign.
class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::vector<int> signs);

  /// Pattern whose bit i (LSB first) set means s_i = -1.
  static SignPattern from_bits(int n, std::uint64_t bits);
  /// Sign of each component; zeros (|u_i| <= tol) map to +1.
  static SignPattern of(const Vector& u, double tol);

  int size() const { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& signs() const { return signs_; }
  int negatives() const;

  bool consistent(const Vector& u, double tol) const;
  SignPattern negated() const;
  Vector as_vector() const;

  /// "+-+" style rendering.
  std::string str() const;

  auto operator<=>(const SignPattern&) const = default;

 private:
  std::vector<int> signs_;
};

enum class Side { plus, minus };
enum class Quadrant { E, S, W, N };

const char* to_string(Side side);
const char* to_string(Quadrant q);

/// Quadrant(s) reached from (lambda, lambda) by a one-sided tangent with value
/// eta on the given side of eps. eta == 0 lies on the boundary ray and yields
/// both admissible tags.
std::vector<Quadrant> quadrant_of(double eta, Side side);

/// d(beta)/d(alpha) = (eta - 1) / (eta + 1). Returns +infinity when eta lies
/// within `snap` of -1, and 1 for infinite eta.
double slope_from_eta(double eta, double snap = 1e-12);

/// eta = ((alpha - lambda) + (beta - lambda)) / ((alpha - lambda) - (beta - lambda)).
/// Throws ErrorKind::undefined_direction when alpha == beta.
double eta_from_point(double alpha, double beta, double lambda);

struct Nondegeneracy {
  enum class Status { holds, fails, not_applicable };

  Status status = Status::not_applicable;
  Vector witness_w;        // set on fails: (w, c) with |w|^2 + c^2 = 1
  double witness_c = 0.0;
  double sigma_min = 0.0;  // smallest singular value of the tested map
  std::string reason;      // set on not_applicable
};

const char* to_string(Nondegeneracy::Status s);

struct TangentDirection {
  double eta0 = 0.0;  // +infinity for the slope-1 direction of a Case 1 eigenvector
  Vector coeffs;      // u0 = U * coeffs in the orthonormal kernel basis U
  Vector u0;          // unit vector
  double slope = 0.0;
  SignPattern pattern;
  Nondegeneracy nondegeneracy;
  double residual = 0.0;   // max_j |<|u0| + eta0 u0, v_j>|
  bool continuum = false;  // sample of a non-isolated solution family
  bool defective = false;  // Q u0 = 0; route through the degenerate solver

  /// Quadrants touched by the two half-curves (eps > 0 and eps < 0).
  std::vector<Quadrant> quadrants() const;
};

/// All solutions (eta0, u0) of the tangent system at lambda, deduplicated and
/// ordered by eta0, then lexicographically by u0. Both u0 and -u0 appear.
/// Sign branches whose pencil is singular for every eta, or whose roots carry a
/// multi-dimensional kernel, are sampled and flagged as `continuum`.
/// Throws ErrorKind::not_an_eigenvalue when Ker(A - lambda I) is trivial.
std::vector<TangentDirection> tangent_directions(const RealMatrix& a, double lambda,
                                                 const Tolerances& tol = {});

/// Nondegeneracy test: injectivity of
///   (w, c) -> Q((Xi(u0) + eta0 I) w) + c Q u0
/// on {w in Ker(A - lambda I) : <u0, w> = 0} x R.
/// Throws ErrorKind::precondition if u0 is not a kernel vector or has a zero
/// component, ErrorKind::degenerate_direction if Q u0 = 0.
Nondegeneracy check_nondegeneracy(const RealMatrix& a, double lambda, const Vector& u0, double eta0,
                                  const Tolerances& tol = {});

/// max_j |<|u0| + eta0 u0, v_j>| over an orthonormal adjoint-kernel basis.
double tangent_residual(const Matrix& adjoint_basis, const Vector& u0, double eta0);

}  // namespace fucik
