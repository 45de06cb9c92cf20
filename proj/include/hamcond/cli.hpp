#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hamcond/error.hpp"

namespace hamcond::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kNotSimple = 3;
inline constexpr int kDegenerate = 4;
inline constexpr int kNumericFailure = 5;

int exit_code_for(ErrorCode code);

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hamcond::cli
