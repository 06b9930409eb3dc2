#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quadsep/quadratic.hpp"

namespace quadsep {

/// Parsed problem file.  The stored linear coefficients are the `a` of
/// x^T A x + 2 a^T x + a0, i.e. files carry half the plain linear
/// coefficient vector.
struct ProblemFile {
  std::size_t n = 0;
  QuadraticFunction f;
  std::optional<QuadraticFunction> g;
  Tolerances tolerances;
  std::vector<std::string> warnings;  // e.g. symmetrized A
};

/// Parses UTF-8 JSON of the shape
///   {"n": 2, "f": {"A": [[..],[..]], "a": [..], "a0": ..},
///    "g": {...}?, "tolerances": {"tol_rel": .., "tol_abs": ..}?}
/// Throws InputError with parser context on malformed input.
ProblemFile parse_problem(std::istream& in);
ProblemFile parse_problem(const std::string& text);

/// Reads from a path, or from `in` when path is "-".
ProblemFile load_problem(const std::string& path, std::istream& in);

/// Canonical serialization; parse(emit(parse(x))) == parse(x).
std::string emit_problem(const ProblemFile& p);

}  // namespace quadsep
