#include "hamcond/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hamcond::io {

using nlohmann::json;

namespace {

Complex entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw Error(ErrorCode::InputError, "matrix entry must be a number or [re, im]: " + e.dump());
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string rtrim(std::string s) {
  s.erase(s.find_last_not_of(' ') + 1);
  return s;
}

std::string full(double v) { return fmt("%.17g", v); }

}  // namespace

SquareComplexMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    throw Error(ErrorCode::InputError, "matrix document needs a \"rows\" array");
  }
  const json& rows = doc["rows"];
  const auto dim = rows.size();
  if (dim == 0 || dim % 2 != 0) {
    throw Error(ErrorCode::InputError,
                "matrix dimension must be even and positive, got " + std::to_string(dim));
  }
  if (doc.contains("n")) {
    const json& n = doc["n"];
    if (!n.is_number_integer() || n.get<long long>() * 2 != static_cast<long long>(dim)) {
      throw Error(ErrorCode::InputError, "\"n\" does not match the number of rows");
    }
  }
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim) {
      throw Error(ErrorCode::InputError, "row " + std::to_string(i) + " is not of length " +
                                             std::to_string(dim) + " (matrix must be square)");
    }
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = entry_from_json(rows[i][j]);
  }
  if (!m.allFinite()) throw Error(ErrorCode::InputError, "matrix has non-finite entries");
  return SquareComplexMatrix(std::move(m));
}

json matrix_to_json(const SquareComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) {
      const Complex z = m(i, j);
      if (z.imag() == 0.0) {
        row.push_back(z.real());
      } else {
        row.push_back(json::array({z.real(), z.imag()}));
      }
    }
    rows.push_back(std::move(row));
  }
  return json{{"n", m.half()}, {"rows", std::move(rows)}};
}

SquareComplexMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputError, "cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InputError, path.string() + ": " + e.what());
  }
  return matrix_from_json(doc);
}

void write_matrix(const std::filesystem::path& path, const SquareComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InputError, "cannot write " + path.string());
  out << matrix_to_json(m).dump(2) << '\n';
}

std::string format_complex(Complex z, int decimals) {
  char buf[96];
  const char sign = z.imag() < 0.0 ? '-' : '+';
  std::snprintf(buf, sizeof buf, "%.*f %c %.*fi", decimals, z.real(), sign, decimals,
                std::abs(z.imag()));
  return buf;
}

std::string render_report(const std::vector<ConditionReport>& rows, ReportMode mode,
                          bool extended) {
  if (rows.empty()) return {};
  std::ostringstream os;
  if (mode == ReportMode::Csv) {
    os << "re_lambda,im_lambda,kappa,kappa_ham_complex,kappa_ham_real,case_tag,abs_y_star_x,"
          "xi_dot_j,d_xi,d_eta\n";
    for (const auto& r : rows) {
      os << full(r.lambda.real()) << ',' << full(r.lambda.imag()) << ',' << full(r.kappa) << ','
         << full(r.kappa_ham_complex) << ','
         << (r.kappa_ham_real ? full(*r.kappa_ham_real) : std::string("n/a")) << ','
         << to_string(r.case_tag) << ',' << full(std::abs(r.y_star_x)) << ','
         << full(r.xi_dot_j) << ',' << full(r.d_xi) << ',' << full(r.d_eta) << '\n';
    }
    return os.str();
  }

  char line[256];
  std::snprintf(line, sizeof line, "%-20s | %13s | %16s | %15s | %-13s", "lambda",
                "kappa(lambda)", "kappa_HC(lambda)", "kappa_H(lambda)", "case");
  os << (extended ? std::string(line) : rtrim(line));
  if (extended) {
    std::snprintf(line, sizeof line, " | %8s | %8s | %8s", "D_xi", "D_eta", "|y*x|");
    os << line;
  }
  os << '\n' << std::string(extended ? 126 : 93, '-') << '\n';
  for (const auto& r : rows) {
    const std::string kr = r.kappa_ham_real ? fmt("%.4f", *r.kappa_ham_real) : "n/a";
    std::snprintf(line, sizeof line, "%-20s | %13.4f | %16.4f | %15s | %-13s",
                  format_complex(r.lambda, 4).c_str(), r.kappa, r.kappa_ham_complex, kr.c_str(),
                  std::string(to_string(r.case_tag)).c_str());
    os << (extended ? std::string(line) : rtrim(line));
    if (extended) {
      std::snprintf(line, sizeof line, " | %8.4f | %8.4f | %8.4f", r.d_xi, r.d_eta,
                    std::abs(r.y_star_x));
      os << line;
    }
    os << '\n';
  }
  return os.str();
}

std::string sweep_csv_header() {
  return "family,parameter,re_lambda,im_lambda,re_displacement,im_displacement,predicted";
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << sweep_csv_header() << '\n';
  for (const auto& r : records) {
    os << to_string(r.family) << ',' << full(r.parameter) << ',' << full(r.perturbed_lambda.real())
       << ',' << full(r.perturbed_lambda.imag()) << ',' << full(r.displacement.real()) << ','
       << full(r.displacement.imag()) << ',' << full(r.predicted) << '\n';
  }
}

}  // namespace hamcond::io
