#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace funcmodel {

struct CheckRecord {
  std::string name;
  std::string inputs_digest;
  /// Empty when the check raised an error before producing a residual.
  std::optional<double> residual;
  double tolerance = 0.0;
  /// "le": pass when residual <= tolerance; "ge": pass when residual >= tolerance.
  std::string comparison = "le";
  bool pass = false;
  std::string note;
};

struct Report {
  std::string problem;
  std::string command;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  std::vector<CheckRecord> records;

  /// Judges and appends a record.
  void add(std::string name, const std::string& inputs, double residual, double tolerance,
           std::string note = {}, bool at_least = false);
  /// Appends a failed record for a check that threw.
  void add_error(std::string name, const std::string& inputs, double tolerance,
                 const std::string& what);

  std::size_t passed() const;
  std::size_t failed() const { return records.size() - passed(); }
  int exit_status() const { return failed() == 0 ? 0 : 1; }

  std::string to_json() const;
  std::string to_csv() const;
};

}  // namespace funcmodel
