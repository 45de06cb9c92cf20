#pragma once

#include <complex>
#include <string_view>
#include <optional>

#include <Eigen/Dense>

#include "hamcond/error.hpp"

namespace hamcond {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;

/// Default relative tolerance for structure checks, scaled by max(1, ||A||_F).
inline constexpr double kStructureTol = 1e-10;

/// Absolute threshold below which a projection is treated as zero.
inline constexpr double kZeroProjection = 1e-300;

/**
 * Dense 2n x 2n complex matrix.
 *
 * The constructor rejects odd or empty dimensions and non-finite entries, so
 * every instance is a valid carrier for a Hamiltonian-type problem.
 */
class SquareComplexMatrix {
 public:
  explicit SquareComplexMatrix(CMatrix m);
  /// Accepts any dense real or complex Eigen expression.
  template <typename Derived>
  explicit SquareComplexMatrix(const Eigen::MatrixBase<Derived>& m)
      : SquareComplexMatrix(CMatrix(m.template cast<Complex>())) {}

  static SquareComplexMatrix zero(int n);
  static SquareComplexMatrix identity(int n);

  int half() const { return static_cast<int>(m_.rows() / 2); }
  int dim() const { return static_cast<int>(m_.rows()); }

  const CMatrix& mat() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  RMatrix real() const { return m_.real(); }
  RMatrix imag() const { return m_.imag(); }
  double max_imag() const;
  double norm() const { return m_.norm(); }

  bool operator==(const SquareComplexMatrix& other) const { return m_ == other.m_; }

 private:
  CMatrix m_;
};

SquareComplexMatrix operator+(const SquareComplexMatrix& a, const SquareComplexMatrix& b);
SquareComplexMatrix operator-(const SquareComplexMatrix& a, const SquareComplexMatrix& b);
SquareComplexMatrix operator*(Complex s, const SquareComplexMatrix& a);

enum class StructureTag { HamComplex, HamReal, SkewHamReal, SkewHamComplex };

std::string_view to_string(StructureTag tag);
std::optional<StructureTag> parse_structure(std::string_view name);
bool is_real_tag(StructureTag tag);

/// J = [[0, I_n], [-I_n, 0]].
SquareComplexMatrix make_symplectic_form(int n);
RMatrix symplectic_real(int n);

/// Frobenius residual of the defining identity for `tag` (e.g. ||AJ - (AJ)^*||_F).
double structure_residual(const SquareComplexMatrix& a, StructureTag tag);

bool check_structure(const SquareComplexMatrix& a, StructureTag tag,
                     double tol = kStructureTol);

/**
 * Frobenius-nearest member of the tagged subspace.
 *
 *   HamComplex      (A + J A^* J) / 2
 *   HamReal         (B + J B^T J) / 2
 *   SkewHamReal     (B - J B^T J) / 2
 *   SkewHamComplex  (A - J A^* J) / 2
 *
 * Real tags throw StructureMismatch when the imaginary part is not negligible.
 */
SquareComplexMatrix project(const SquareComplexMatrix& a, StructureTag tag);

// Real splitting B = B|_H + B|_W.
RMatrix ham_part(const RMatrix& b);
RMatrix skew_ham_part(const RMatrix& b);

/// A|_HC / ||A|_HC||_F. Throws ZeroProjection at exact degeneracy.
SquareComplexMatrix normalized_projection(const SquareComplexMatrix& a);

/// Trace(A^T B), the bilinear pairing; real-valued for real arguments.
Complex frobenius_inner(const SquareComplexMatrix& a, const SquareComplexMatrix& b);
double frobenius_inner(const RMatrix& a, const RMatrix& b);
double frobenius_norm(const SquareComplexMatrix& a);

double distance_to_structure(const SquareComplexMatrix& a, StructureTag tag);

}  // namespace hamcond
