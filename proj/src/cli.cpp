#include "hamcond/cli.hpp"

#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "hamcond/conditioning.hpp"
#include "hamcond/matrix_io.hpp"
#include "hamcond/perturblab.hpp"

namespace hamcond::cli {

using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension:
    case ErrorCode::StructureMismatch:
    case ErrorCode::InputError:
      return kInputError;
    case ErrorCode::NotSimple:
    case ErrorCode::DefectiveEigenvalue:
      return kNotSimple;
    case ErrorCode::ZeroProjection:
      return kDegenerate;
    case ErrorCode::DecompositionFailed:
    case ErrorCode::MatchingFailed:
    case ErrorCode::NotNormalized:
      return kNumericFailure;
  }
  return kNumericFailure;
}

namespace {

struct AnalyzeArgs {
  std::string matrix;
  bool real_perturbations = false;
  std::string format = "table";
  double tol = kDecompositionTol;
};

struct ProjectArgs {
  std::string matrix;
  std::string structure;
  std::string out;
};

struct WorstArgs {
  std::string matrix;
  int index = 0;
  std::string structure;
  std::optional<double> theta;
};

struct SweepArgs {
  std::string matrix;
  int index = 0;
  std::vector<std::string> families;
  SweepConfig config;
  std::string out;
};

struct McArgs {
  std::string matrix;
  int index = 0;
  std::string structure;
  int samples = 100000;
  std::uint64_t seed = 0;
  bool isotropic = false;
};

struct GenArgs {
  int n = 2;
  std::uint64_t seed = 0;
  bool real = false;
  std::string out;
};

StructureTag require_structure(const std::string& name) {
  const auto tag = parse_structure(name);
  if (!tag) throw Error(ErrorCode::InputError, "unknown structure '" + name + "'");
  return *tag;
}

// Decomposes Q and returns the triple at `index` after checking simplicity.
EigenTriple select_eigenvalue(const SquareComplexMatrix& q, int index) {
  if (!check_structure(q, StructureTag::HamComplex)) {
    throw Error(ErrorCode::StructureMismatch, "matrix is not Hamiltonian");
  }
  const auto triples = eigen_decompose(q);
  assert_simple(triples, index, kGapTol, q.norm());
  return triples[index];
}

int run_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const SquareComplexMatrix q = io::load_matrix(a.matrix);
  AnalysisOptions opts;
  opts.tol = a.tol;
  opts.real_perturbations = a.real_perturbations;
  const auto rows = analyze(q, opts);
  if (rows.empty()) {
    err << "warning: no eigenvalues to report\n";
    return kOk;
  }
  const auto mode = a.format == "csv" ? io::ReportMode::Csv : io::ReportMode::Table;
  out << io::render_report(rows, mode, a.real_perturbations);
  return kOk;
}

int run_project(const ProjectArgs& a, std::ostream& out) {
  const SquareComplexMatrix q = io::load_matrix(a.matrix);
  const StructureTag tag = require_structure(a.structure);
  const SquareComplexMatrix p = project(q, tag);
  out << "distance_to_structure " << json(distance_to_structure(q, tag)).dump() << '\n';
  if (a.out.empty()) {
    out << io::matrix_to_json(p).dump(2) << '\n';
  } else {
    io::write_matrix(a.out, p);
  }
  return kOk;
}

int run_worst(const WorstArgs& a, std::ostream& out) {
  const SquareComplexMatrix q = io::load_matrix(a.matrix);
  const StructureTag tag = require_structure(a.structure);
  const EigenTriple raw = select_eigenvalue(q, a.index);
  const EigenTriple tc = normalize_complex(raw).first;

  json doc;
  if (tag == StructureTag::HamComplex) {
    const auto worst = worst_perturbation_complex(tc);
    doc = io::matrix_to_json(worst[0].matrix);
    doc["attained_ratio"] = worst[0].attained_ratio;
    doc["kappa_struct"] = kappa_ham_complex(tc).value;
  } else if (tag == StructureTag::HamReal) {
    if (!is_real_matrix(q)) {
      throw Error(ErrorCode::StructureMismatch, "ham-real needs a real matrix");
    }
    const EigenTriple tr = normalize_real(tc).first;
    const RealWorstCase worst = worst_perturbation_real(tr);
    StructuredPerturbation e = worst.extremes()[0];
    if (a.theta) {
      e = worst.case_tag() == CaseTag::Circular ? worst.at(*a.theta) : e_theta(tr, *a.theta);
      doc["theta"] = *a.theta;
    }
    doc.update(io::matrix_to_json(e.matrix));
    doc["attained_ratio"] = e.attained_ratio;
    doc["kappa_struct"] = kappa_ham_real(tr).value;
    doc["case"] = std::string(to_string(worst.case_tag()));
  } else {
    throw Error(ErrorCode::InputError, "worst supports ham-complex and ham-real only");
  }
  doc["structure"] = std::string(to_string(tag));
  doc["eigenvalue_index"] = a.index;
  doc["lambda"] = json::array({raw.lambda.real(), raw.lambda.imag()});
  out << doc.dump(2) << '\n';
  return kOk;
}

int run_sweep(const SweepArgs& a, std::ostream& out) {
  const SquareComplexMatrix q = io::load_matrix(a.matrix);
  a.config.validate();
  std::vector<Family> families;
  for (const auto& name : a.families) {
    const auto f = parse_family(name);
    if (!f) throw Error(ErrorCode::InputError, "unknown family '" + name + "'");
    families.push_back(*f);
  }
  if (families.empty()) throw Error(ErrorCode::InputError, "no families given");
  const EigenTriple t = select_eigenvalue(q, a.index);

  std::vector<SweepRecord> records;
  for (Family f : families) {
    auto part = sweep_family(q, t, f, a.config);
    records.insert(records.end(), part.begin(), part.end());
  }
  if (a.out.empty()) {
    io::write_sweep_csv(out, records);
  } else {
    std::ofstream file(a.out);
    if (!file) throw Error(ErrorCode::InputError, "cannot write " + a.out);
    io::write_sweep_csv(file, records);
  }
  return kOk;
}

int run_mc(const McArgs& a, std::ostream& out, std::ostream& err) {
  const SquareComplexMatrix q = io::load_matrix(a.matrix);
  const StructureTag tag = require_structure(a.structure);
  const EigenTriple tc = normalize_complex(select_eigenvalue(q, a.index)).first;

  double closed = 0.0;
  switch (tag) {
    case StructureTag::HamComplex:
      closed = kappa_ham_complex(tc).value;
      break;
    case StructureTag::HamReal:
      if (!is_real_matrix(q)) {
        throw Error(ErrorCode::StructureMismatch, "ham-real needs a real matrix");
      }
      closed = kappa_ham_real(normalize_real(tc).first).value;
      break;
    default:
      throw Error(ErrorCode::InputError, "mc-verify supports ham-complex and ham-real only");
  }
  const auto mode = a.isotropic ? SamplingMode::Isotropic : SamplingMode::Adaptive;
  const McResult mc = mc_oracle(tc, tag, a.samples, a.seed, mode);
  const bool dominated = mc.max_ratio <= closed + 1e-10;
  out << "closed_form " << json(closed).dump() << '\n'
      << "mc_max " << json(mc.max_ratio).dump() << '\n'
      << "coverage " << json(mc.max_ratio / closed).dump() << '\n'
      << "samples " << mc.samples << '\n'
      << "dominance " << (dominated ? "ok" : "violated") << '\n';
  if (!dominated) {
    err << "error: sampled ratio exceeds the closed-form condition number\n";
    return kNumericFailure;
  }
  return kOk;
}

int run_gen(const GenArgs& a, std::ostream& out) {
  const SquareComplexMatrix q = random_hamiltonian(a.n, a.seed, a.real);
  if (a.out.empty()) {
    out << io::matrix_to_json(q).dump(2) << '\n';
  } else {
    io::write_matrix(a.out, q);
  }
  return kOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured eigenvalue conditioning of Hamiltonian matrices", "hamcond"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Condition numbers for every eigenvalue");
  analyze_cmd->add_option("matrix", analyze_args.matrix, "Matrix JSON file")->required();
  analyze_cmd->add_flag("--real-perturbations", analyze_args.real_perturbations,
                        "Require a real matrix and print D_xi, D_eta, |y*x|");
  analyze_cmd->add_option("--format", analyze_args.format)
      ->check(CLI::IsMember({"table", "csv"}));
  analyze_cmd->add_option("--tol", analyze_args.tol, "Eigenvector residual tolerance")
      ->check(CLI::NonNegativeNumber);

  ProjectArgs project_args;
  auto* project_cmd = app.add_subcommand("project", "Nearest structured matrix");
  project_cmd->add_option("matrix", project_args.matrix)->required();
  project_cmd->add_option("--structure", project_args.structure)
      ->required()
      ->check(CLI::IsMember({"ham-complex", "ham-real", "skewham-real", "skewham-complex"}));
  project_cmd->add_option("--out", project_args.out);

  WorstArgs worst_args;
  auto* worst_cmd = app.add_subcommand("worst", "Worst-case structured perturbation");
  worst_cmd->add_option("matrix", worst_args.matrix)->required();
  worst_cmd->add_option("--eigenvalue-index", worst_args.index)->required();
  worst_cmd->add_option("--structure", worst_args.structure)
      ->required()
      ->check(CLI::IsMember({"ham-complex", "ham-real"}));
  worst_cmd->add_option("--theta", worst_args.theta);

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Perturbation sweeps as CSV");
  sweep_cmd->add_option("matrix", sweep_args.matrix)->required();
  sweep_cmd->add_option("--eigenvalue-index", sweep_args.index)->required();
  sweep_cmd->add_option("--families", sweep_args.families,
                        "unstructured,complex-worst,real-worst,real-theta,random")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--eps", sweep_args.config.eps);
  sweep_cmd->add_option("--theta-steps", sweep_args.config.theta_steps);
  sweep_cmd->add_option("--samples", sweep_args.config.samples);
  sweep_cmd->add_option("--seed", sweep_args.config.seed);
  sweep_cmd->add_option("--out", sweep_args.out);

  McArgs mc_args;
  auto* mc_cmd = app.add_subcommand("mc-verify", "Monte-Carlo check of the closed form");
  mc_cmd->add_option("matrix", mc_args.matrix)->required();
  mc_cmd->add_option("--eigenvalue-index", mc_args.index)->required();
  mc_cmd->add_option("--structure", mc_args.structure)
      ->required()
      ->check(CLI::IsMember({"ham-complex", "ham-real"}));
  mc_cmd->add_option("--samples", mc_args.samples)->check(CLI::PositiveNumber);
  mc_cmd->add_option("--seed", mc_args.seed);
  mc_cmd->add_flag("--isotropic", mc_args.isotropic, "Plain i.i.d. sampling");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Random Hamiltonian test matrix");
  gen_cmd->add_option("--n", gen_args.n)->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_args.seed);
  gen_cmd->add_flag("--real", gen_args.real);
  gen_cmd->add_option("--out", gen_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (analyze_cmd->parsed()) return run_analyze(analyze_args, out, err);
    if (project_cmd->parsed()) return run_project(project_args, out);
    if (worst_cmd->parsed()) return run_worst(worst_args, out);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args, out);
    if (mc_cmd->parsed()) return run_mc(mc_args, out, err);
    if (gen_cmd->parsed()) return run_gen(gen_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kInputError;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("hamcond");
  for (const auto& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hamcond::cli
