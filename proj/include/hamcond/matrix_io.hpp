#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamcond/conditioning.hpp"
#include "hamcond/perturblab.hpp"

namespace hamcond::io {

// Matrix documents: {"n": N, "rows": [[entry, ...], ...]} where an entry is a
// bare number (real) or a [re, im] pair. Extra top-level keys are ignored.

SquareComplexMatrix matrix_from_json(const nlohmann::json& doc);
nlohmann::json matrix_to_json(const SquareComplexMatrix& m);

/// Throws Error(InputError) on unreadable or malformed files.
SquareComplexMatrix load_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const SquareComplexMatrix& m);

enum class ReportMode { Table, Csv };

/// 4-decimal table (header "lambda | kappa(lambda) | ...") or full-precision CSV.
std::string render_report(const std::vector<ConditionReport>& rows, ReportMode mode,
                          bool extended = false);

/// family,parameter,re_lambda,im_lambda,re_displacement,im_displacement,predicted
std::string sweep_csv_header();
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

std::string format_complex(Complex z, int decimals);

}  // namespace hamcond::io
