#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "funcmodel/charfn.hpp"
#include "funcmodel/operators.hpp"

namespace funcmodel {

struct GridSettings {
  int n = 2048;
  double scale = 1.0;
};

/// Parsed problem document. Complex entries are written as [re, im] pairs or
/// plain numbers; matrices as arrays of rows.
struct Problem {
  std::string name;
  std::uint64_t seed = 0;
  FamilySpec family;
  GridSettings grid;
  BoundaryValueSettings boundary;
  std::map<std::string, double> tolerances;
  /// Canonical serialization of the parsed input, used for digests.
  std::string canonical;
};

/// Throws InputError on malformed documents or invariant violations; the
/// family is built once here so that every backend/alpha/kappa check runs at
/// parse time.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

/// 64-bit FNV-1a digest rendered as 16 hex digits.
std::string fnv_digest(const std::string& data);

}  // namespace funcmodel
