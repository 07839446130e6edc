#pragma once

// Eigendirections u0 in Ker(A - lambda I) that also lie in Img(A - lambda I)
// (Q u0 = 0). These exist only when the algebraic multiplicity of lambda
// exceeds the geometric one. The first-order tangent system is then silent and
// curves may leave (lambda, lambda) with different one-sided tangents for
// eps -> 0+ and eps -> 0-.
//
// With u(eps) = u0 + eps u1 + o(eps), the first-order term is
//   u1 = R|u0| + eta u_g + z,   R = (A - lambda I) restricted to Ker^perp, inverted,
// where u_g = R u0 is a generalized eigenvector and z ranges over
// Ker(A - lambda I) orthogonal to u0. For side sigma = +-1 the limit eta0
// must satisfy, for every adjoint kernel vector v,
//   <Xi(u0) u1 + sigma Xi0(u0) |u1|, v> + eta0 <u1, v> = 0.

#include <vector>

#include "fucik/core_linalg.hpp"
#include "fucik/tangent_solver.hpp"

namespace fucik {

enum class DegeneracyClass { regular, case1, case2, inconclusive };

const char* to_string(DegeneracyClass c);

struct OneSidedEntry {
  Side side = Side::plus;
  double eta0 = 0.0;
  Vector z0;  // kernel component orthogonal to u0
  Vector u1;  // first-order corrector
  double slope = 0.0;
  std::vector<Quadrant> quadrants;
  std::vector<int> zero_signs;  // orthant of u1 on the zero set of u0
  double residual = 0.0;
};

/// A sign branch whose equations vanish identically on a nonempty consistent
/// set: every eta in [eta_lo, eta_hi] passes the first-order test there.
struct VanishingBranch {
  Side side = Side::plus;
  std::vector<int> zero_signs;
  double eta_lo = 0.0;
  double eta_hi = 0.0;
};

struct OneSidedTangents {
  DegeneracyClass degeneracy = DegeneracyClass::case2;
  Vector u0;                       // unit
  Vector generalized_eigenvector;  // u_g, orthogonal to the kernel
  Vector abs_preimage;             // R|u0|, orthogonal to the kernel
  std::vector<int> zero_set;       // indices with |u0_i| <= tol_sign
  std::vector<OneSidedEntry> plus;
  std::vector<OneSidedEntry> minus;
  std::vector<VanishingBranch> vanishing;
};

/// regular if Q u0 != 0, case1 if Q u0 = 0 but Q|u0| != 0, case2 otherwise.
/// Escalation to inconclusive happens in one_sided_tangents.
/// Throws ErrorKind::precondition when u0 is not a kernel vector.
DegeneracyClass classify(const RealMatrix& a, double lambda, const Vector& u0, const Tolerances& tol = {});

/// One-sided tangent values for a Case 2 eigendirection. p = 1 branches are
/// solved in closed form, p >= 2 by damped Newton from a start lattice (which
/// does not guarantee a complete root list).
/// Throws ErrorKind::wrong_class unless classify() is case2.
OneSidedTangents one_sided_tangents(const RealMatrix& a, double lambda, const Vector& u0,
                                    const Tolerances& tol = {});

/// Slope-1 direction (eta0 = +infinity) of a Case 1 eigendirection.
/// Throws ErrorKind::wrong_class unless classify() is case1.
TangentDirection case1_direction(const RealMatrix& a, double lambda, const Vector& u0,
                                 const Tolerances& tol = {});

/// Unit vectors spanning Ker(A - lambda I) intersected with Img(A - lambda I),
/// each basis vector listed with both signs. Empty when lambda is not defective.
std::vector<Vector> defective_directions(const RealMatrix& a, double lambda, const Tolerances& tol = {});

/// max over an adjoint basis of |<Xi u1 + sigma Xi0 |u1|, v> + eta <u1, v>|.
double one_sided_residual(const Matrix& adjoint_basis, const Vector& u0, const Vector& u1, double eta,
                          Side side, const Tolerances& tol = {});

}  // namespace fucik
