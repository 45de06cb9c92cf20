#include "hamcond/perturblab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace hamcond {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::UnstructuredCircle: return "unstructured";
    case Family::ComplexWorst: return "complex-worst";
    case Family::RealWorst: return "real-worst";
    case Family::RealThetaFamily: return "real-theta";
    case Family::RandomStructured: return "random";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (auto f : {Family::UnstructuredCircle, Family::ComplexWorst, Family::RealWorst,
                 Family::RealThetaFamily, Family::RandomStructured}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (!(eps > 0.0)) throw Error(ErrorCode::InputError, "eps must be positive");
  if (theta_steps < 4) throw Error(ErrorCode::InputError, "theta_steps must be >= 4");
  if (samples < 1) throw Error(ErrorCode::InputError, "samples must be >= 1");
  for (std::size_t i = 0; i < fd_steps.size(); ++i) {
    if (!(fd_steps[i] > 0.0)) throw Error(ErrorCode::InputError, "fd steps must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (fd_steps[i] == fd_steps[j]) {
        throw Error(ErrorCode::InputError, "fd steps must be distinct");
      }
    }
  }
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

CMatrix gaussian_structured(int n, StructureTag tag, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int dim = 2 * n;
  CMatrix g(dim, dim);
  const bool real = is_real_tag(tag);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = real ? 0.0 : normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return project(SquareComplexMatrix(std::move(g)), tag).mat();
}

CMatrix unit_structured(int n, StructureTag tag, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    CMatrix g = gaussian_structured(n, tag, rng);
    const double nrm = g.norm();
    if (nrm > kZeroProjection) return g / nrm;
  }
  throw Error(ErrorCode::ZeroProjection, "structured Gaussian draw vanished 8 times");
}

}  // namespace

StructuredPerturbation random_unit_structured(int n, StructureTag tag, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "n must be >= 1");
  std::mt19937_64 rng(seed);
  SquareComplexMatrix m(unit_structured(n, tag, rng));
  return StructuredPerturbation{std::move(m), tag, std::nullopt, 0.0};
}

SquareComplexMatrix random_hamiltonian(int n, std::uint64_t seed, bool real) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](bool with_imag) { return Complex(normal(rng), with_imag ? normal(rng) : 0.0); };

  CMatrix k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = draw(!real);
  auto hermitian = [&]() {
    CMatrix h(n, n);
    for (int i = 0; i < n; ++i) {
      h(i, i) = draw(false);
      for (int j = 0; j < i; ++j) {
        h(i, j) = draw(!real);
        h(j, i) = std::conj(h(i, j));
      }
    }
    return h;
  };
  const CMatrix l = hermitian();
  const CMatrix m = hermitian();

  CMatrix q(2 * n, 2 * n);
  q << k, m, l, -k.adjoint();
  return SquareComplexMatrix(std::move(q));
}

NearestMatch nearest_eigenvalue(const std::vector<Complex>& spectrum, Complex target) {
  NearestMatch out;
  double second = std::numeric_limits<double>::infinity();
  out.distance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(spectrum.size()); ++i) {
    const double d = std::abs(spectrum[i] - target);
    if (d < out.distance) {
      second = out.distance;
      out.distance = d;
      out.index = i;
    } else if (d < second) {
      second = d;
    }
  }
  out.ambiguous = second <= 2.0 * out.distance;
  return out;
}

FdResult fd_derivative(const SquareComplexMatrix& q, const SquareComplexMatrix& e, Complex lambda,
                       const std::vector<double>& steps) {
  if (steps.empty()) throw Error(ErrorCode::InputError, "no finite-difference steps");
  FdResult out;
  for (double h : steps) {
    const auto spec = spectrum(q + Complex(h) * e);
    const NearestMatch m = nearest_eigenvalue(spec, lambda);
    if (m.ambiguous) {
      throw Error(ErrorCode::MatchingFailed,
                  "tracked eigenvalue is ambiguous at step " + format_value(h));
    }
    out.table.push_back({h, m.distance / h});
  }
  auto smallest = std::min_element(out.table.begin(), out.table.end(),
                                   [](const FdRow& a, const FdRow& b) { return a.step < b.step; });
  out.estimate = smallest->estimate;
  if (out.table.size() >= 2) {
    std::vector<FdRow> sorted = out.table;
    std::sort(sorted.begin(), sorted.end(),
              [](const FdRow& a, const FdRow& b) { return a.step < b.step; });
    // D(h) = D0 + c h  =>  D0 = (h1 D(h0) - h0 D(h1)) / (h1 - h0)
    const FdRow& a = sorted[0];
    const FdRow& b = sorted[1];
    out.richardson = (b.step * a.estimate - a.step * b.estimate) / (b.step - a.step);
  }
  return out;
}

SweepRecord perturbed_point(const SquareComplexMatrix& q, const EigenTriple& t,
                            const SquareComplexMatrix& e, double eps, Family family,
                            double parameter) {
  const auto spec = spectrum(q + Complex(eps) * e);
  const NearestMatch m = nearest_eigenvalue(spec, t.lambda);
  if (m.ambiguous) {
    throw Error(ErrorCode::MatchingFailed, "perturbed eigenvalue cannot be tracked");
  }
  SweepRecord r;
  r.family = family;
  r.parameter = parameter;
  r.perturbed_lambda = spec[m.index];
  r.displacement = spec[m.index] - t.lambda;
  r.predicted = response_ratio(t, e) * eps;
  return r;
}

std::vector<SweepRecord> sweep_family(const SquareComplexMatrix& q, const EigenTriple& t,
                                      Family family, const SweepConfig& config) {
  config.validate();
  const EigenTriple tc = normalize_complex(t).first;
  const bool real = is_real_matrix(q);
  auto theta_at = [&](int k) {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / config.theta_steps;
  };
  auto real_normalized = [&]() {
    if (!real) {
      throw Error(ErrorCode::StructureMismatch, std::string(to_string(family)) +
                                                    " requires a real Hamiltonian matrix");
    }
    return normalize_real(tc).first;
  };

  std::vector<SweepRecord> out;
  switch (family) {
    case Family::UnstructuredCircle: {
      const CMatrix yx = tc.outer();
      for (int k = 0; k < config.theta_steps; ++k) {
        const double theta = theta_at(k);
        const SquareComplexMatrix e(CMatrix(std::polar(1.0, theta) * yx));
        out.push_back(perturbed_point(q, tc, e, config.eps, family, theta));
      }
      break;
    }
    case Family::ComplexWorst: {
      const auto worst = worst_perturbation_complex(tc);
      for (int k = 0; k < 2; ++k) {
        out.push_back(perturbed_point(q, tc, worst[k].matrix, config.eps, family, k));
      }
      break;
    }
    case Family::RealWorst: {
      const EigenTriple tr = real_normalized();
      const RealWorstCase worst = worst_perturbation_real(tr);
      if (worst.case_tag() == CaseTag::Circular) {
        for (int k = 0; k < config.theta_steps; ++k) {
          const double theta = theta_at(k);
          out.push_back(perturbed_point(q, tr, worst.at(theta).matrix, config.eps, family, theta));
        }
      } else {
        for (int k = 0; k < 2; ++k) {
          out.push_back(
              perturbed_point(q, tr, worst.extremes()[k].matrix, config.eps, family, k));
        }
      }
      break;
    }
    case Family::RealThetaFamily: {
      const EigenTriple tr = real_normalized();
      for (int k = 0; k < config.theta_steps; ++k) {
        const double theta = theta_at(k);
        out.push_back(perturbed_point(q, tr, e_theta(tr, theta).matrix, config.eps, family, theta));
      }
      break;
    }
    case Family::RandomStructured: {
      const StructureTag tag = real ? StructureTag::HamReal : StructureTag::HamComplex;
      for (int k = 0; k < config.samples; ++k) {
        const auto e = random_unit_structured(q.half(), tag, substream_seed(config.seed, k));
        out.push_back(perturbed_point(q, tc, e.matrix, config.eps, family, k));
      }
      break;
    }
  }
  return out;
}

McResult mc_oracle(const EigenTriple& t, StructureTag tag, int samples, std::uint64_t seed,
                   SamplingMode mode) {
  if (samples < 1) throw Error(ErrorCode::InputError, "samples must be >= 1");
  const int n = t.dim() / 2;
  const double ysx = std::abs(t.y_star_x());
  if (ysx <= kZeroProjection) throw Error(ErrorCode::DefectiveEigenvalue, "y^* x vanishes");
  auto ratio = [&](const CMatrix& g) { return std::abs(t.y.dot(g * t.x)) / ysx; };

  std::mt19937_64 rng(seed);
  CMatrix best = unit_structured(n, tag, rng);
  double best_ratio = ratio(best);

  const int isotropic = mode == SamplingMode::Isotropic ? samples : std::max(1, samples / 4);
  for (int k = 1; k < isotropic; ++k) {
    CMatrix g = unit_structured(n, tag, rng);
    const double r = ratio(g);
    if (r > best_ratio) {
      best_ratio = r;
      best = std::move(g);
    }
  }

  // (1+1) evolution strategy with the one-fifth success rule.
  double sigma = 0.5;
  for (int k = isotropic; k < samples; ++k) {
    CMatrix g = best + sigma * unit_structured(n, tag, rng);
    const double nrm = g.norm();
    if (nrm <= kZeroProjection) continue;
    g /= nrm;
    const double r = ratio(g);
    if (r > best_ratio) {
      best_ratio = r;
      best = std::move(g);
      sigma *= 1.5;
    } else {
      sigma *= 0.9;
    }
    if (sigma < 1e-9) sigma = 0.5;
  }
  return McResult{best_ratio, SquareComplexMatrix(std::move(best)), samples};
}

}  // namespace hamcond
