#pragma once

#include <utility>
#include <vector>

#include "hamcond/hamcore.hpp"

namespace hamcond {

/// Simple eigenvalue with unit right (Qx = lambda x) and left (y^*Q = lambda y^*) vectors.
struct EigenTriple {
  Complex lambda;
  CVector x;
  CVector y;
  double residual_right = 0.0;
  double residual_left = 0.0;

  int dim() const { return static_cast<int>(x.size()); }
  /// y^* x
  Complex y_star_x() const { return y.dot(x); }
  /// y^* J x
  Complex y_star_jx() const;
  /// y x^*
  CMatrix outer() const { return y * x.adjoint(); }
};

enum class NormalizationKind { Complex, Real };

struct NormalizationCertificate {
  double phase_applied = 0.0;
  NormalizationKind kind = NormalizationKind::Complex;
  double residual = 0.0;
};

inline constexpr double kDecompositionTol = 1e-10;
inline constexpr double kGapTol = 1e-8;

/**
 * All 2n eigenvalues of Q with unit right and left eigenvectors.
 *
 * Right vectors come from a complex Schur-based solver on Q, left vectors from
 * the same solver on Q^*, paired by nearest conj(mu) to lambda. Results are
 * ordered by decreasing real part, then decreasing imaginary part.
 */
std::vector<EigenTriple> eigen_decompose(const SquareComplexMatrix& q,
                                         double tol = kDecompositionTol);

/// Throws NotSimple unless min_{j != index} |lambda_j - lambda_index| > gap_tol * max(1, q_norm).
void assert_simple(const std::vector<EigenTriple>& triples, int index, double gap_tol = kGapTol,
                   double q_norm = 0.0);

/// Rotates y so that y^*Jx is real and nonnegative.
std::pair<EigenTriple, NormalizationCertificate> normalize_complex(const EigenTriple& t);

/**
 * Rotates y so that Im(y^*Jx) Re(y^*Jx) = <Re(yx^*), Im(yx^*)>.
 *
 * The admissible phases form a coset phi0 + k pi/2. A pair that already
 * satisfies the condition is returned unchanged; otherwise phi0 is the
 * principal value (1/2) atan2(num, den) in (-pi/2, pi/2].
 */
std::pair<EigenTriple, NormalizationCertificate> normalize_real(const EigenTriple& t);

/// |Im(y^*Jx) Re(y^*Jx) - <xi, eta>| for the current pair.
double real_normalization_residual(const EigenTriple& t);

/// Multiplies y by e^{i phi}.
EigenTriple rotate_left(const EigenTriple& t, double phi);

struct SymmetryCheck {
  bool ok = true;
  double worst = 0.0;
};

/**
 * Hamiltonian spectra are symmetric under lambda -> -conj(lambda); real ones
 * additionally under conjugation.
 */
SymmetryCheck spectral_symmetry_check(const std::vector<EigenTriple>& triples, bool real_flag,
                                      double tol);
SymmetryCheck spectral_symmetry_check(const std::vector<Complex>& spectrum, bool real_flag,
                                      double tol);

std::vector<Complex> eigenvalues_of(const std::vector<EigenTriple>& triples);

/// Eigenvalues only; cheaper than eigen_decompose.
std::vector<Complex> spectrum(const SquareComplexMatrix& q);

}  // namespace hamcond
