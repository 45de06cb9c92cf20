#include "hamcond/hamcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hamcond {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::ZeroProjection: return "ZeroProjection";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::MatchingFailed: return "MatchingFailed";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DefectiveEigenvalue: return "DefectiveEigenvalue";
    case ErrorCode::InputError: return "InputError";
  }
  return "Unknown";
}

SquareComplexMatrix::SquareComplexMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0 || m_.rows() % 2 != 0) {
    throw Error(ErrorCode::InvalidDimension,
                "expected a 2n x 2n matrix, got " + std::to_string(m_.rows()) + " x " +
                    std::to_string(m_.cols()));
  }
  if (!m_.allFinite()) {
    throw Error(ErrorCode::InvalidDimension, "matrix has non-finite entries");
  }
}

SquareComplexMatrix SquareComplexMatrix::zero(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "n must be >= 1");
  return SquareComplexMatrix(CMatrix::Zero(2 * n, 2 * n));
}

SquareComplexMatrix SquareComplexMatrix::identity(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "n must be >= 1");
  return SquareComplexMatrix(CMatrix::Identity(2 * n, 2 * n));
}

double SquareComplexMatrix::max_imag() const {
  return m_.size() == 0 ? 0.0 : m_.imag().cwiseAbs().maxCoeff();
}

SquareComplexMatrix operator+(const SquareComplexMatrix& a, const SquareComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidDimension, "dimension mismatch");
  return SquareComplexMatrix(CMatrix(a.mat() + b.mat()));
}

SquareComplexMatrix operator-(const SquareComplexMatrix& a, const SquareComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidDimension, "dimension mismatch");
  return SquareComplexMatrix(CMatrix(a.mat() - b.mat()));
}

SquareComplexMatrix operator*(Complex s, const SquareComplexMatrix& a) {
  return SquareComplexMatrix(CMatrix(s * a.mat()));
}

std::string_view to_string(StructureTag tag) {
  switch (tag) {
    case StructureTag::HamComplex: return "ham-complex";
    case StructureTag::HamReal: return "ham-real";
    case StructureTag::SkewHamReal: return "skewham-real";
    case StructureTag::SkewHamComplex: return "skewham-complex";
  }
  return "?";
}

std::optional<StructureTag> parse_structure(std::string_view name) {
  for (auto tag : {StructureTag::HamComplex, StructureTag::HamReal, StructureTag::SkewHamReal,
                   StructureTag::SkewHamComplex}) {
    if (name == to_string(tag)) return tag;
  }
  return std::nullopt;
}

bool is_real_tag(StructureTag tag) {
  return tag == StructureTag::HamReal || tag == StructureTag::SkewHamReal;
}

RMatrix symplectic_real(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "n must be >= 1");
  RMatrix j = RMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -RMatrix::Identity(n, n);
  return j;
}

SquareComplexMatrix make_symplectic_form(int n) { return SquareComplexMatrix(symplectic_real(n)); }

namespace {

double scale_of(const SquareComplexMatrix& a) { return std::max(1.0, a.norm()); }

void require_real(const SquareComplexMatrix& a, StructureTag tag) {
  if (a.max_imag() > kStructureTol * scale_of(a)) {
    throw Error(ErrorCode::StructureMismatch,
                std::string("tag ") + std::string(to_string(tag)) +
                    " requires a real matrix; max |Im a_ij| = " + format_value(a.max_imag()));
  }
}

}  // namespace

double structure_residual(const SquareComplexMatrix& a, StructureTag tag) {
  const RMatrix j = symplectic_real(a.half());
  switch (tag) {
    case StructureTag::HamComplex: {
      const CMatrix aj = a.mat() * j;
      return (aj - aj.adjoint()).norm();
    }
    case StructureTag::SkewHamComplex: {
      const CMatrix aj = a.mat() * j;
      return (aj + aj.adjoint()).norm();
    }
    case StructureTag::HamReal: {
      const RMatrix bj = a.real() * j;
      return (bj - bj.transpose()).norm();
    }
    case StructureTag::SkewHamReal: {
      const RMatrix bj = a.real() * j;
      return (bj + bj.transpose()).norm();
    }
  }
  return 0.0;
}

bool check_structure(const SquareComplexMatrix& a, StructureTag tag, double tol) {
  const double scale = scale_of(a);
  if (is_real_tag(tag) && a.max_imag() > tol * scale) return false;
  return structure_residual(a, tag) <= tol * scale;
}

RMatrix ham_part(const RMatrix& b) {
  const RMatrix j = symplectic_real(static_cast<int>(b.rows() / 2));
  return 0.5 * (b + j * b.transpose() * j);
}

RMatrix skew_ham_part(const RMatrix& b) {
  const RMatrix j = symplectic_real(static_cast<int>(b.rows() / 2));
  return 0.5 * (b - j * b.transpose() * j);
}

SquareComplexMatrix project(const SquareComplexMatrix& a, StructureTag tag) {
  const RMatrix j = symplectic_real(a.half());
  switch (tag) {
    case StructureTag::HamComplex:
      return SquareComplexMatrix(CMatrix(0.5 * (a.mat() + j * a.mat().adjoint() * j)));
    case StructureTag::SkewHamComplex:
      return SquareComplexMatrix(CMatrix(0.5 * (a.mat() - j * a.mat().adjoint() * j)));
    case StructureTag::HamReal:
      require_real(a, tag);
      return SquareComplexMatrix(ham_part(a.real()));
    case StructureTag::SkewHamReal:
      require_real(a, tag);
      return SquareComplexMatrix(skew_ham_part(a.real()));
  }
  return a;
}

SquareComplexMatrix normalized_projection(const SquareComplexMatrix& a) {
  const SquareComplexMatrix p = project(a, StructureTag::HamComplex);
  const double nrm = p.norm();
  if (nrm <= kZeroProjection) {
    throw Error(ErrorCode::ZeroProjection, "Hamiltonian projection vanishes");
  }
  return SquareComplexMatrix(CMatrix(p.mat() / nrm));
}

Complex frobenius_inner(const SquareComplexMatrix& a, const SquareComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidDimension, "dimension mismatch");
  return (a.mat().transpose() * b.mat()).trace();
}

double frobenius_inner(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::InvalidDimension, "dimension mismatch");
  }
  return a.cwiseProduct(b).sum();
}

double frobenius_norm(const SquareComplexMatrix& a) { return a.norm(); }

double distance_to_structure(const SquareComplexMatrix& a, StructureTag tag) {
  const SquareComplexMatrix p = project(a, tag);
  if (is_real_tag(tag)) return (a.real() - p.real()).norm();
  return (a.mat() - p.mat()).norm();
}

}  // namespace hamcond
