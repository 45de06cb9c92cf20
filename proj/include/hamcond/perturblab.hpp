#pragma once

#include <cstdint>
#include <string_view>
#include <optional>
#include <vector>

#include "hamcond/conditioning.hpp"

namespace hamcond {

enum class Family {
  UnstructuredCircle,
  ComplexWorst,
  RealWorst,
  RealThetaFamily,
  RandomStructured,
};

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

struct SweepConfig {
  double eps = 1e-4;
  int theta_steps = 360;
  int samples = 100;
  std::uint64_t seed = 0;
  std::vector<double> fd_steps{1e-4, 1e-5, 1e-6};

  /// Throws InputError when an invariant is violated.
  void validate() const;
};

struct SweepRecord {
  Family family;
  double parameter = 0.0;
  Complex perturbed_lambda;
  Complex displacement;
  /// First-order magnitude |y^*Ex| / |y^*x| * eps for the direction used.
  double predicted = 0.0;
};

/// Gaussian draw projected onto `tag` and scaled to unit Frobenius norm.
StructuredPerturbation random_unit_structured(int n, StructureTag tag, std::uint64_t seed);

/**
 * Random Hamiltonian [[K, M], [L, -K^*]] from 4n^2 standard Gaussian
 * parameters: K general, L and M symmetric (real) or Hermitian (complex).
 */
SquareComplexMatrix random_hamiltonian(int n, std::uint64_t seed, bool real);

/// Independent stream for sample `index` of a run seeded with `seed`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

struct NearestMatch {
  int index = -1;
  double distance = 0.0;
  /// Second-nearest eigenvalue lies within twice the nearest distance.
  bool ambiguous = false;
};

NearestMatch nearest_eigenvalue(const std::vector<Complex>& spectrum, Complex target);

struct FdRow {
  double step = 0.0;
  double estimate = 0.0;
};

struct FdResult {
  double estimate = 0.0;  // at the smallest step
  std::vector<FdRow> table;
  std::optional<double> richardson;
};

/**
 * |lambda_E(t) - lambda| / t for each step, tracking lambda by nearest match
 * in the spectrum of Q + tE. Throws MatchingFailed when the tracked eigenvalue
 * collides with another one.
 */
FdResult fd_derivative(const SquareComplexMatrix& q, const SquareComplexMatrix& e, Complex lambda,
                       const std::vector<double>& steps);

/// Perturbed eigenvalue for Q + eps E nearest to lambda.
SweepRecord perturbed_point(const SquareComplexMatrix& q, const EigenTriple& t,
                            const SquareComplexMatrix& e, double eps, Family family,
                            double parameter);

/**
 * One sweep family for the eigenvalue described by `t` (raw or normalized;
 * the normalization each family needs is applied here).
 */
std::vector<SweepRecord> sweep_family(const SquareComplexMatrix& q, const EigenTriple& t,
                                      Family family, const SweepConfig& config);

enum class SamplingMode {
  /// i.i.d. draws from the structured unit sphere.
  Isotropic,
  /// A quarter of the budget isotropic, the rest as shrinking Gaussian steps
  /// around the best draw so far.
  Adaptive,
};

struct McResult {
  double max_ratio = 0.0;
  SquareComplexMatrix argmax;
  int samples = 0;
};

/// Largest |y^*Gx| / |y^*x| over `samples` random unit structured G.
McResult mc_oracle(const EigenTriple& t, StructureTag tag, int samples, std::uint64_t seed,
                   SamplingMode mode = SamplingMode::Adaptive);

}  // namespace hamcond
