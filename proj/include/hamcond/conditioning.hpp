#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "hamcond/eigentriple.hpp"

namespace hamcond {

enum class CaseTag { XiDominant, EtaDominant, Circular, NotApplicable };

std::string_view to_string(CaseTag tag);

/// Relative tie tolerance on D_xi versus D_eta.
inline constexpr double kCaseTieTol = 1e-8;
/// Residual above which a pair is rejected as not normalized.
inline constexpr double kNormalizedTol = 1e-10;
/// Singular values below this fraction of sigma_max count as zero.
inline constexpr double kRankTol = 1e-10;

struct ConditionReport {
  Complex lambda;
  Complex y_star_x;
  Complex y_star_jx;  // after complex normalization
  double xi_dot_j = 0.0;
  double d_xi = 0.0;
  double d_eta = 0.0;
  double kappa = 0.0;
  double kappa_ham_complex = 0.0;
  std::optional<double> kappa_ham_real;
  CaseTag case_tag = CaseTag::NotApplicable;
};

/// Unit-norm structured direction; attained_ratio = |y^*Ex| / |y^*x| is recomputed from E.
struct StructuredPerturbation {
  SquareComplexMatrix matrix;
  StructureTag tag;
  std::optional<double> theta;
  double attained_ratio = 0.0;
};

/// |y^* E x| / |y^* x|
double response_ratio(const EigenTriple& t, const SquareComplexMatrix& e);

/// ||yx^*||_F / |y^*x|; throws DefectiveEigenvalue when y^*x vanishes.
double kappa_unstructured(const EigenTriple& t);

struct ComplexConditioning {
  double value = 0.0;
  Complex y_star_x;
  Complex y_star_jx;
  double xi_dot_j = 0.0;
};

/**
 * Complex Hamiltonian condition number ||(yx^*)|_HC||_F / |y^*x|.
 *
 * Requires a complex-normalized pair. The projected norm and the closed form
 * sqrt((1 + <xi,J>^2) / 2) / |y^*x| are both evaluated and must agree.
 */
ComplexConditioning kappa_ham_complex(const EigenTriple& t);

struct RealConditioning {
  double value = 0.0;
  CaseTag case_tag = CaseTag::NotApplicable;
  double d_xi = 0.0;
  double d_eta = 0.0;
};

/// Real Hamiltonian condition number; requires a real-normalized pair.
RealConditioning kappa_ham_real(const EigenTriple& t);

CaseTag classify_case(double d_xi, double d_eta, double tau = kCaseTieTol);

/// +/- (yx^*)|_N, the "+" member first.
std::array<StructuredPerturbation, 2> worst_perturbation_complex(const EigenTriple& t);

/**
 * Worst real Hamiltonian directions.
 *
 * In the dominant cases `extremes` holds the +/- pair. In the circular case
 * every member of the family returned by `at(theta)` is a maximizer and
 * `extremes` holds theta = 0 and theta = pi.
 */
class RealWorstCase {
 public:
  RealWorstCase(const EigenTriple& normalized, CaseTag tag, RMatrix xi_h, RMatrix eta_h);

  CaseTag case_tag() const { return case_tag_; }
  const std::vector<StructuredPerturbation>& extremes() const& { return extremes_; }
  /// By value on temporaries, so `for (auto& p : worst_perturbation_real(t).extremes())` is safe.
  std::vector<StructuredPerturbation> extremes() && { return std::move(extremes_); }
  /// (xi|_H cos theta + eta|_H sin theta) / ||xi|_H||_F
  StructuredPerturbation at(double theta) const;

 private:
  EigenTriple triple_;
  CaseTag case_tag_;
  RMatrix xi_h_;
  RMatrix eta_h_;
  std::vector<StructuredPerturbation> extremes_;
};

RealWorstCase worst_perturbation_real(const EigenTriple& t);

/// Normalized combination (xi|_H cos theta + eta|_H sin theta) / ||...||_F.
StructuredPerturbation e_theta(const EigenTriple& t, double theta);

enum class RankOneKind { Hamiltonian, SkewHamiltonian, Neither };

std::string_view to_string(RankOneKind kind);

struct RankOneStructure {
  RankOneKind kind = RankOneKind::Neither;
  double ham_residual = 0.0;
  double skew_residual = 0.0;
  /// y = c J x with |c| = 1 (only evaluated when kind != Neither).
  bool y_is_phase_jx = false;
  bool purely_imaginary = false;
};

RankOneStructure detect_rank_one_structure(const EigenTriple& t, double tol = 1e-10);

/// kappa/sqrt2 <= kappa_HC <= kappa and kappa_HC/sqrt2 <= kappa_H <= kappa_HC.
bool validate_bounds(const ConditionReport& r, double slack = 1e-10);

int numerical_rank(const SquareComplexMatrix& e, double rel_tol = kRankTol);

/// Sign flip so that the first nonzero entry (row-major) has nonnegative real part.
SquareComplexMatrix canonical_sign(const SquareComplexMatrix& e);

struct AnalysisOptions {
  double tol = kDecompositionTol;
  double gap_tol = kGapTol;
  /// Compute kappa_H even when Q has an imaginary part within tolerance.
  bool real_perturbations = false;
};

/// Per-eigenvalue report; each eigenvalue must be simple.
ConditionReport analyze_eigenvalue(const SquareComplexMatrix& q,
                                   const std::vector<EigenTriple>& triples, int index,
                                   const AnalysisOptions& opts = {});

std::vector<ConditionReport> analyze(const SquareComplexMatrix& q,
                                     const AnalysisOptions& opts = {});

/// True when Q is real within the structure tolerance.
bool is_real_matrix(const SquareComplexMatrix& q, double tol = kStructureTol);

}  // namespace hamcond
