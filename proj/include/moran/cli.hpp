#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "moran/families.hpp"

namespace moran::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Runs one command line. args[0] is the program name. Results go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1,2,1" -> symbols; "1@3,2@5" additionally sets MD gaps. Empty text is the
/// empty address.
CylinderAddress parse_address(const std::string& text);

/// "12(02)" or, for bases above 10, "1 11 (2 0)": prefix digits followed by an
/// optional repeating block in parentheses.
DigitString parse_digits(const std::string& text, int base);

/// Rounds to 12 significant digits; the JSON writer then prints the shortest
/// decimal that reads back to the rounded value.
double round12(double x);

}  // namespace moran::cli
