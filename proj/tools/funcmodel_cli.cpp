#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "funcmodel/problem.hpp"
#include "funcmodel/suites.hpp"

namespace {

constexpr int kInputError = 2;

std::string command_list() {
  std::string s;
  for (const auto& n : funcmodel::command_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional-model verification suites for L^kappa = A + alpha kappa alpha / 2"};
  std::string command;
  std::string problem_path;
  std::string out_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  double tol_scale = 1.0;

  app.add_option("command", command, "One of: " + command_list())->required();
  app.add_option("--problem", problem_path, "Problem file (JSON)")->required();
  app.add_option("--out", out_path, "Report path (stdout when omitted)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "Override the problem seed");
  app.add_option("--tol-scale", tol_scale, "Multiply every upper tolerance by this factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  funcmodel::Report report;
  try {
    const funcmodel::Problem problem = funcmodel::load_problem(problem_path);
    report = funcmodel::run_command(command, problem, {seed, tol_scale});
  } catch (const funcmodel::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }

  const std::string text = format == "csv" ? report.to_csv() : report.to_json();
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << '\n';
      return kInputError;
    }
    out << text;
  }
  std::cerr << report.command << ": " << report.passed() << "/" << report.records.size()
            << " checks passed\n";
  return report.exit_status();
}
