#include "hamcond/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hamcond {

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::XiDominant: return "XiDominant";
    case CaseTag::EtaDominant: return "EtaDominant";
    case CaseTag::Circular: return "Circular";
    case CaseTag::NotApplicable: return "NotApplicable";
  }
  return "?";
}

std::string_view to_string(RankOneKind kind) {
  switch (kind) {
    case RankOneKind::Hamiltonian: return "Hamiltonian";
    case RankOneKind::SkewHamiltonian: return "SkewHamiltonian";
    case RankOneKind::Neither: return "Neither";
  }
  return "?";
}

namespace {

double checked_abs_ysx(const EigenTriple& t) {
  const double ysx = std::abs(t.y_star_x());
  if (ysx <= kZeroProjection) {
    throw Error(ErrorCode::DefectiveEigenvalue, "y^* x vanishes");
  }
  return ysx;
}

void require_real_normalized(const EigenTriple& t) {
  const double res = real_normalization_residual(t);
  if (res > kNormalizedTol) {
    throw Error(ErrorCode::NotNormalized,
                "real normalization residual " + format_value(res));
  }
}

StructuredPerturbation make_perturbation(const EigenTriple& t, SquareComplexMatrix m,
                                         StructureTag tag, std::optional<double> theta) {
  const double ratio = response_ratio(t, m);
  return StructuredPerturbation{std::move(m), tag, theta, ratio};
}

struct RealParts {
  RMatrix xi_h;
  RMatrix eta_h;
};

RealParts real_projections(const EigenTriple& t) {
  const CMatrix yx = t.outer();
  return {ham_part(yx.real()), ham_part(yx.imag())};
}

}  // namespace

double response_ratio(const EigenTriple& t, const SquareComplexMatrix& e) {
  const Complex num = t.y.dot(e.mat() * t.x);
  return std::abs(num) / checked_abs_ysx(t);
}

double kappa_unstructured(const EigenTriple& t) {
  const double ysx = checked_abs_ysx(t);
  return t.x.norm() * t.y.norm() / ysx;
}

ComplexConditioning kappa_ham_complex(const EigenTriple& t) {
  const Complex s = t.y_star_jx();
  if (std::abs(s.imag()) > kNormalizedTol) {
    throw Error(ErrorCode::NotNormalized, "Im(y^*Jx) = " + format_value(s.imag()));
  }
  const double ysx = checked_abs_ysx(t);
  const SquareComplexMatrix yx(t.outer());
  const double projected = project(yx, StructureTag::HamComplex).norm() / ysx;

  const RMatrix j = symplectic_real(t.dim() / 2);
  const double xi_dot_j = frobenius_inner(RMatrix(yx.real()), j);
  const double closed = std::sqrt(0.5 * (1.0 + xi_dot_j * xi_dot_j)) / ysx;
  if (std::abs(projected - closed) > 1e-10 * std::max(1.0, closed)) {
    throw Error(ErrorCode::NotNormalized, "projected norm " + format_value(projected) +
                                              " disagrees with closed form " +
                                              format_value(closed));
  }
  return {projected, t.y_star_x(), s, xi_dot_j};
}

CaseTag classify_case(double d_xi, double d_eta, double tau) {
  if (d_xi > d_eta * (1.0 + tau)) return CaseTag::XiDominant;
  if (d_eta > d_xi * (1.0 + tau)) return CaseTag::EtaDominant;
  return CaseTag::Circular;
}

RealConditioning kappa_ham_real(const EigenTriple& t) {
  require_real_normalized(t);
  const double ysx = checked_abs_ysx(t);
  const auto [xi_h, eta_h] = real_projections(t);
  // D = ||B + J B^T J||_F^2 / 2 = 2 ||B|_H||_F^2
  RealConditioning out;
  out.d_xi = 2.0 * xi_h.squaredNorm();
  out.d_eta = 2.0 * eta_h.squaredNorm();
  out.case_tag = classify_case(out.d_xi, out.d_eta);
  out.value = std::max(xi_h.norm(), eta_h.norm()) / ysx;
  return out;
}

SquareComplexMatrix canonical_sign(const SquareComplexMatrix& e) {
  const CMatrix& m = e.mat();
  const double cutoff = 1e-12 * m.cwiseAbs().maxCoeff();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) > cutoff) {
        return m(i, j).real() < 0.0 ? SquareComplexMatrix(CMatrix(-m)) : e;
      }
    }
  }
  return e;
}

std::array<StructuredPerturbation, 2> worst_perturbation_complex(const EigenTriple& t) {
  const SquareComplexMatrix plus =
      canonical_sign(normalized_projection(SquareComplexMatrix(t.outer())));
  SquareComplexMatrix minus(CMatrix(-plus.mat()));
  return {make_perturbation(t, plus, StructureTag::HamComplex, std::nullopt),
          make_perturbation(t, std::move(minus), StructureTag::HamComplex, std::nullopt)};
}

RealWorstCase::RealWorstCase(const EigenTriple& normalized, CaseTag tag, RMatrix xi_h,
                             RMatrix eta_h)
    : triple_(normalized), case_tag_(tag), xi_h_(std::move(xi_h)), eta_h_(std::move(eta_h)) {
  auto pair_from = [&](const RMatrix& b) {
    const double nrm = b.norm();
    if (nrm <= kZeroProjection) {
      throw Error(ErrorCode::ZeroProjection, "selected real Hamiltonian projection vanishes");
    }
    const SquareComplexMatrix plus = canonical_sign(SquareComplexMatrix(RMatrix(b / nrm)));
    SquareComplexMatrix minus(CMatrix(-plus.mat()));
    extremes_.push_back(make_perturbation(triple_, plus, StructureTag::HamReal, std::nullopt));
    extremes_.push_back(
        make_perturbation(triple_, std::move(minus), StructureTag::HamReal, std::nullopt));
  };
  switch (case_tag_) {
    case CaseTag::XiDominant: pair_from(xi_h_); break;
    case CaseTag::EtaDominant: pair_from(eta_h_); break;
    case CaseTag::Circular:
      extremes_.push_back(at(0.0));
      extremes_.push_back(at(std::numbers::pi));
      break;
    case CaseTag::NotApplicable:
      throw Error(ErrorCode::StructureMismatch, "no real worst case for a complex matrix");
  }
}

StructuredPerturbation RealWorstCase::at(double theta) const {
  const double nrm = xi_h_.norm();
  if (nrm <= kZeroProjection) {
    throw Error(ErrorCode::ZeroProjection, "Re(yx^*)|_H vanishes");
  }
  const RMatrix e = (xi_h_ * std::cos(theta) + eta_h_ * std::sin(theta)) / nrm;
  return make_perturbation(triple_, SquareComplexMatrix(e), StructureTag::HamReal, theta);
}

RealWorstCase worst_perturbation_real(const EigenTriple& t) {
  const RealConditioning rc = kappa_ham_real(t);
  auto [xi_h, eta_h] = real_projections(t);
  return RealWorstCase(t, rc.case_tag, std::move(xi_h), std::move(eta_h));
}

StructuredPerturbation e_theta(const EigenTriple& t, double theta) {
  require_real_normalized(t);
  const auto [xi_h, eta_h] = real_projections(t);
  const RMatrix combo = xi_h * std::cos(theta) + eta_h * std::sin(theta);
  const double nrm = combo.norm();
  if (nrm <= kZeroProjection) {
    throw Error(ErrorCode::ZeroProjection,
                "E_theta combination vanishes at theta = " + format_value(theta));
  }
  return make_perturbation(t, SquareComplexMatrix(RMatrix(combo / nrm)), StructureTag::HamReal,
                           theta);
}

RankOneStructure detect_rank_one_structure(const EigenTriple& t, double tol) {
  const SquareComplexMatrix yx(t.outer());
  RankOneStructure out;
  out.ham_residual = structure_residual(yx, StructureTag::HamComplex);
  out.skew_residual = structure_residual(yx, StructureTag::SkewHamComplex);
  if (out.ham_residual <= tol) {
    out.kind = RankOneKind::Hamiltonian;
  } else if (out.skew_residual <= tol) {
    out.kind = RankOneKind::SkewHamiltonian;
  }
  if (out.kind != RankOneKind::Neither) {
    const int n = t.dim() / 2;
    CVector jx(t.dim());
    jx.head(n) = t.x.tail(n);
    jx.tail(n) = -t.x.head(n);
    const Complex c = jx.dot(t.y);
    out.y_is_phase_jx = std::abs(std::abs(c) - 1.0) <= std::sqrt(tol) &&
                        (t.y - c * jx).norm() <= std::sqrt(tol);
    out.purely_imaginary = std::abs(t.lambda.real()) <= tol;
  }
  return out;
}

bool validate_bounds(const ConditionReport& r, double slack) {
  const double k = r.kappa;
  const double kc = r.kappa_ham_complex;
  bool ok = k / std::numbers::sqrt2 <= kc + slack && kc <= k + slack;
  if (r.kappa_ham_real) {
    const double kr = *r.kappa_ham_real;
    ok = ok && kc / std::numbers::sqrt2 <= kr + slack && kr <= kc + slack;
  }
  return ok;
}

int numerical_rank(const SquareComplexMatrix& e, double rel_tol) {
  Eigen::JacobiSVD<CMatrix> svd(e.mat());
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++rank;
  }
  return rank;
}

bool is_real_matrix(const SquareComplexMatrix& q, double tol) {
  return q.max_imag() <= tol * std::max(1.0, q.norm());
}

ConditionReport analyze_eigenvalue(const SquareComplexMatrix& q,
                                   const std::vector<EigenTriple>& triples, int index,
                                   const AnalysisOptions& opts) {
  if (!check_structure(q, StructureTag::HamComplex)) {
    throw Error(ErrorCode::StructureMismatch, "matrix is not Hamiltonian (QJ != (QJ)^*)");
  }
  assert_simple(triples, index, opts.gap_tol, q.norm());
  const bool real = is_real_matrix(q);
  if (opts.real_perturbations && !real) {
    throw Error(ErrorCode::StructureMismatch,
                "real perturbations requested for a matrix with nonzero imaginary part");
  }

  ConditionReport r;
  const EigenTriple& raw = triples[index];
  r.lambda = raw.lambda;
  r.kappa = kappa_unstructured(raw);

  const auto [tc, cert_c] = normalize_complex(raw);
  const ComplexConditioning cc = kappa_ham_complex(tc);
  r.y_star_x = cc.y_star_x;
  r.y_star_jx = cc.y_star_jx;
  r.xi_dot_j = cc.xi_dot_j;
  r.kappa_ham_complex = cc.value;

  if (real) {
    const auto [tr, cert_r] = normalize_real(tc);
    const RealConditioning rc = kappa_ham_real(tr);
    r.d_xi = rc.d_xi;
    r.d_eta = rc.d_eta;
    r.kappa_ham_real = rc.value;
    r.case_tag = rc.case_tag;
  }
  return r;
}

std::vector<ConditionReport> analyze(const SquareComplexMatrix& q, const AnalysisOptions& opts) {
  const auto triples = eigen_decompose(q, opts.tol);
  std::vector<ConditionReport> out;
  out.reserve(triples.size());
  for (int i = 0; i < static_cast<int>(triples.size()); ++i) {
    out.push_back(analyze_eigenvalue(q, triples, i, opts));
  }
  return out;
}

}  // namespace hamcond
