#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "funcmodel/problem.hpp"
#include "funcmodel/report.hpp"
#include "funcmodel/suites.hpp"

using namespace funcmodel;

namespace {

const std::string kProblems = FUNCMODEL_PROBLEM_DIR;
const std::string kData = FUNCMODEL_TEST_DATA_DIR;

std::string scalar_doc(const std::string& extra = "") {
  return R"({"name": "s", "seed": 2, "backend": {"type": "matrix", "A": [[0.25]]},
             "alpha": {"V": [[0.5]]}, "kappa": {"preset": "iJ"})" + extra + "}";
}

}  // namespace

TEST(Digest, Fnv1a64) {
  EXPECT_EQ(fnv_digest(""), "cbf29ce484222325");
  EXPECT_EQ(fnv_digest("a"), "af63dc4c8601ec8c");
}

TEST(Problem, ParsesShippedFiles) {
  for (const char* f : {"scalar.json", "matrix4_J.json", "matrix6_iJ.json", "friedrichs_rank2.json"}) {
    const Problem p = load_problem(kProblems + "/" + f);
    EXPECT_FALSE(p.canonical.empty()) << f;
    EXPECT_NO_THROW(build_family(p.family)) << f;
  }
  const Problem six = load_problem(kProblems + "/matrix6_iJ.json");
  EXPECT_EQ(build_family(six.family).rank(), 3);
}

TEST(Problem, ComplexEntriesAndOverrides) {
  const Problem p = parse_problem(
      R"({"name": "c", "backend": {"type": "matrix", "A": [[1, [0, 0.5]], [[0, -0.5], -1]]},
          "alpha": {"dense": [[0.5, 0], [0, 0.2]]}, "kappa": {"preset": "zero"},
          "grid": {"N": 512, "scale": 2.0}, "tolerances": {"model.theorem": 0.05},
          "boundary": {"eps_ladder": [0.1, 0.01, 0.001], "order": 1}})");
  EXPECT_EQ(p.grid.n, 512);
  EXPECT_DOUBLE_EQ(p.grid.scale, 2.0);
  EXPECT_DOUBLE_EQ(tolerance_for(p, "model.theorem"), 0.05);
  EXPECT_DOUBLE_EQ(tolerance_for(p, "model.fpm"), 1e-6);
  EXPECT_EQ(p.boundary.eps_ladder.size(), 3u);
  const FamilyMember m = build_family(p.family);
  EXPECT_NEAR(std::abs(m.backend().dense()(0, 1) - cplx(0.0, 0.5)), 0.0, 1e-15);
}

TEST(Problem, RejectsInvalidInput) {
  EXPECT_THROW(load_problem(kData + "/negative_weight.json"), InputError);
  EXPECT_THROW(load_problem(kData + "/not_json.json"), InputError);
  EXPECT_THROW(load_problem(kData + "/does_not_exist.json"), InputError);
  EXPECT_THROW(parse_problem(R"({"backend": {"type": "matrix", "A": [[0, 1], [0, 0]]},
                                  "alpha": {"V": [[1, 0], [0, 1]]}, "kappa": {"preset": "iI"}})"),
               InputError);
  EXPECT_THROW(parse_problem(R"({"backend": {"type": "sparse"}, "alpha": {"V": [[1]]},
                                  "kappa": {"preset": "iI"}})"),
               InputError);
  EXPECT_THROW(parse_problem(scalar_doc(R"(, "grid": {"N": 1000})")), InputError);
  EXPECT_THROW(parse_problem(R"({"backend": {"type": "matrix", "A": [[0]]}, "alpha": {"V": [[1]]},
                                  "kappa": {"preset": "custom"}})"),
               InputError);
}

TEST(Report, JudgesAndSerializes) {
  Report rep;
  rep.problem = "p";
  rep.command = "charfn";
  rep.tol_scale = 2.0;
  rep.add("a", "x", 1.5e-8, 1e-8);
  rep.add("b", "y", 0.3, 0.1, {}, true);
  rep.add("c", "z", 3e-8, 1e-8);
  rep.add_error("d", "w", 1e-8, "boom");
  EXPECT_TRUE(rep.records[0].pass);
  EXPECT_TRUE(rep.records[1].pass);
  EXPECT_FALSE(rep.records[2].pass);
  EXPECT_FALSE(rep.records[3].residual.has_value());
  EXPECT_EQ(rep.passed(), 2u);
  EXPECT_EQ(rep.exit_status(), 1);
  const auto doc = nlohmann::json::parse(rep.to_json());
  EXPECT_EQ(doc.at("records").size(), 4u);
  EXPECT_TRUE(doc.at("records")[3].at("residual").is_null());
  EXPECT_EQ(doc.at("records")[0].at("inputs_digest").get<std::string>(), fnv_digest("x"));
  const std::string csv = rep.to_csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Suites, UnknownCommandAndOptions) {
  const Problem p = parse_problem(scalar_doc());
  EXPECT_THROW(run_command("frobnicate", p, {}), InputError);
  RunOptions bad;
  bad.tol_scale = 0.0;
  EXPECT_THROW(run_command("charfn", p, bad), InputError);
  EXPECT_EQ(command_names().size(), 8u);
}

TEST(Suites, PgCheckOnScalar) {
  const Report rep = run_command("pg-check", load_problem(kProblems + "/scalar.json"), {});
  EXPECT_EQ(rep.exit_status(), 0);
  for (const auto& r : rep.records) {
    if (r.name.starts_with("pg.roundtrip")) EXPECT_LE(*r.residual, 1e-10);
  }
}

TEST(Suites, DeterministicForFixedSeed) {
  const Problem p = load_problem(kProblems + "/matrix4_J.json");
  RunOptions o;
  o.seed = 99;
  const std::string a = run_command("dilation-check", p, o).to_json();
  const std::string b = run_command("dilation-check", p, o).to_json();
  EXPECT_EQ(a, b);
  o.seed = 100;
  EXPECT_NE(a, run_command("dilation-check", p, o).to_json());
}

TEST(Suites, SingularCheckNeedsIJ) {
  EXPECT_THROW(run_command("singular-check", load_problem(kData + "/matrix_plus_i.json"), {}),
               InputError);
}
