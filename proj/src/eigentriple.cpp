#include "hamcond/eigentriple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hamcond {

Complex EigenTriple::y_star_jx() const {
  const int n = dim() / 2;
  // J x = [x_2; -x_1]
  CVector jx(dim());
  jx.head(n) = x.tail(n);
  jx.tail(n) = -x.head(n);
  return y.dot(jx);
}

namespace {

// Eigenvalues closer than this (relative) are treated as equal for ordering.
constexpr double kOrderingQuantum = 1e-9;
// Right/left pairing tolerance, relative to max(1, ||Q||_F).
constexpr double kMatchTol = 1e-6;

bool ordered_before(Complex a, Complex b, double quantum) {
  const double ra = std::round(a.real() / quantum);
  const double rb = std::round(b.real() / quantum);
  if (ra != rb) return ra > rb;
  const double ia = std::round(a.imag() / quantum);
  const double ib = std::round(b.imag() / quantum);
  if (ia != ib) return ia > ib;
  return false;
}

Eigen::ComplexEigenSolver<CMatrix> solve(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> solver(m, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::DecompositionFailed, "complex eigensolver did not converge");
  }
  return solver;
}

}  // namespace

std::vector<EigenTriple> eigen_decompose(const SquareComplexMatrix& q, double tol) {
  const CMatrix& m = q.mat();
  const int dim = q.dim();
  const double scale = std::max(1.0, q.norm());

  const auto right = solve(m);
  const auto left = solve(m.adjoint());

  std::vector<EigenTriple> out;
  out.reserve(dim);
  std::vector<bool> used(dim, false);
  for (int k = 0; k < dim; ++k) {
    const Complex lambda = right.eigenvalues()(k);
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int j = 0; j < dim; ++j) {
      if (used[j]) continue;
      const double d = std::abs(std::conj(left.eigenvalues()(j)) - lambda);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < 0 || best_dist > kMatchTol * scale) {
      throw Error(ErrorCode::MatchingFailed,
                  "no adjoint eigenvalue within tolerance of lambda #" + std::to_string(k) +
                      " (distance " + format_value(best_dist) + ")");
    }
    used[best] = true;

    EigenTriple t;
    t.lambda = lambda;
    t.x = right.eigenvectors().col(k).normalized();
    t.y = left.eigenvectors().col(best).normalized();
    t.residual_right = (m * t.x - lambda * t.x).norm();
    t.residual_left = (t.y.adjoint() * m - lambda * t.y.adjoint()).norm();
    if (t.residual_right > tol * scale || t.residual_left > tol * scale) {
      throw Error(ErrorCode::DecompositionFailed,
                  "eigenvector residual above tolerance for lambda #" + std::to_string(k));
    }
    out.push_back(std::move(t));
  }

  const double quantum = kOrderingQuantum * scale;
  std::stable_sort(out.begin(), out.end(), [quantum](const EigenTriple& a, const EigenTriple& b) {
    return ordered_before(a.lambda, b.lambda, quantum);
  });
  return out;
}

std::vector<Complex> eigenvalues_of(const std::vector<EigenTriple>& triples) {
  std::vector<Complex> out;
  out.reserve(triples.size());
  for (const auto& t : triples) out.push_back(t.lambda);
  return out;
}

std::vector<Complex> spectrum(const SquareComplexMatrix& q) {
  Eigen::ComplexEigenSolver<CMatrix> solver(q.mat(), false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::DecompositionFailed, "complex eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

void assert_simple(const std::vector<EigenTriple>& triples, int index, double gap_tol,
                   double q_norm) {
  if (index < 0 || index >= static_cast<int>(triples.size())) {
    throw Error(ErrorCode::InputError, "eigenvalue index " + std::to_string(index) +
                                           " out of range [0, " +
                                           std::to_string(triples.size()) + ")");
  }
  double gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < static_cast<int>(triples.size()); ++j) {
    if (j == index) continue;
    gap = std::min(gap, std::abs(triples[j].lambda - triples[index].lambda));
  }
  const double threshold = gap_tol * std::max(1.0, q_norm);
  if (!(gap > threshold)) {
    throw Error(ErrorCode::NotSimple, "eigenvalue #" + std::to_string(index) + " has gap " +
                                          format_value(gap) + " <= " +
                                          format_value(threshold));
  }
}

EigenTriple rotate_left(const EigenTriple& t, double phi) {
  EigenTriple out = t;
  out.y *= std::polar(1.0, phi);
  return out;
}

std::pair<EigenTriple, NormalizationCertificate> normalize_complex(const EigenTriple& t) {
  const Complex s = t.y_star_jx();
  NormalizationCertificate cert;
  cert.kind = NormalizationKind::Complex;
  if (std::abs(s) <= 1e-14) {
    cert.residual = std::abs(s.imag());
    return {t, cert};
  }
  // (e^{i phi} y)^* J x = e^{-i phi} y^* J x
  cert.phase_applied = std::arg(s);
  EigenTriple out = rotate_left(t, cert.phase_applied);
  cert.residual = std::abs(out.y_star_jx().imag());
  return {out, cert};
}

double real_normalization_residual(const EigenTriple& t) {
  const CMatrix yx = t.outer();
  const RMatrix xi = yx.real();
  const RMatrix eta = yx.imag();
  const Complex s = t.y_star_jx();
  return std::abs(s.imag() * s.real() - frobenius_inner(xi, eta));
}

std::pair<EigenTriple, NormalizationCertificate> normalize_real(const EigenTriple& t) {
  const CMatrix yx = t.outer();
  const RMatrix xi = yx.real();
  const RMatrix eta = yx.imag();
  const Complex s = t.y_star_jx();
  const double p = s.real();
  const double q = s.imag();

  // Rotating y by phi turns the residual into
  //   cos(2 phi) (pq - <xi,eta>) - sin(2 phi) (||xi||^2 - ||eta||^2 + p^2 - q^2) / 2,
  // whose zeros satisfy tan(2 phi) = num / den below, with period pi/2.
  const double num = 2.0 * (frobenius_inner(xi, eta) - p * q);
  const double den = q * q - p * p - xi.squaredNorm() + eta.squaredNorm();

  NormalizationCertificate cert;
  cert.kind = NormalizationKind::Real;
  // Roots repeat every pi/2 and swap the roles of xi and eta. A pair that is
  // already normalized is left alone; otherwise the principal root is taken.
  double phi = 0.0;
  const bool satisfied = std::abs(0.5 * num) <= 1e-14;
  if (!satisfied && (std::abs(num) > 1e-14 || std::abs(den) > 1e-14)) {
    phi = 0.5 * std::atan2(num, den);
  }
  cert.phase_applied = phi;
  EigenTriple out = phi == 0.0 ? t : rotate_left(t, phi);
  cert.residual = real_normalization_residual(out);
  return {out, cert};
}

SymmetryCheck spectral_symmetry_check(const std::vector<Complex>& spectrum, bool real_flag,
                                      double tol) {
  auto nearest = [&](Complex target) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& mu : spectrum) best = std::min(best, std::abs(mu - target));
    return best;
  };
  SymmetryCheck result;
  for (const Complex& lambda : spectrum) {
    result.worst = std::max(result.worst, nearest(-std::conj(lambda)));
    if (real_flag) {
      result.worst = std::max(result.worst, nearest(-lambda));
      result.worst = std::max(result.worst, nearest(std::conj(lambda)));
    }
  }
  result.ok = result.worst <= tol;
  return result;
}

SymmetryCheck spectral_symmetry_check(const std::vector<EigenTriple>& triples, bool real_flag,
                                      double tol) {
  return spectral_symmetry_check(eigenvalues_of(triples), real_flag, tol);
}

}  // namespace hamcond
