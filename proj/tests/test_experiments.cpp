#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "mixnorm/experiments.hpp"
#include "mixnorm/tensor_io.hpp"

using namespace mixnorm;

namespace {

ExtExp E(std::int64_t num, std::int64_t den = 1) { return ExtExp::of(num, den); }
const ExtExp kInf = ExtExp::inf();
const double kSqrt2 = std::sqrt(2.0);

ProblemSpec sup_spec(int m = 2) {
  return make_spec(m, ExponentTuple(static_cast<std::size_t>(m), kInf));
}

}  // namespace

TEST_CASE("ratio helpers") {
  CHECK(safe_ratio(2.0, 4.0) == 0.5);
  CHECK(safe_ratio(0.0, 0.0) == 0.0);
  CHECK(std::isinf(safe_ratio(1.0, 0.0)));

  CHECK_NOTHROW(enforce_sqrt2_bound(kSqrt2, 1.0));
  CHECK_NOTHROW(enforce_sqrt2_bound(2.82, 2.0));
  CHECK_THROWS_AS(enforce_sqrt2_bound(10.0, 1.0), HardAssertionError);

  CHECK(sqrt2_guard_applies(sup_spec(), {E(2), E(1)}));
  CHECK_FALSE(sqrt2_guard_applies(sup_spec(), {E(2), E(2)}));
  CHECK_FALSE(sqrt2_guard_applies(sup_spec(3), {E(2), E(2), E(1)}));
  CHECK_FALSE(sqrt2_guard_applies(make_spec(2, {E(2), kInf}), {E(2), E(1)}));
  CHECK_FALSE(
      sqrt2_guard_applies(make_spec(2, {kInf, kInf}, {1, 2}, Field::complex), {E(2), E(1)}));

  CHECK(median_of({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median_of({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(median_of({}), DomainError);

  const LineFit f = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(f.slope == Catch::Approx(2.0).epsilon(1e-13));
  CHECK(f.intercept == Catch::Approx(1.0).epsilon(1e-13));
  CHECK(f.r2 == Catch::Approx(1.0).epsilon(1e-13));
  CHECK(fit_line({0, 1}, {5, 5}).r2 == 1.0);  // flat data fits perfectly
  CHECK_THROWS_AS(fit_line({1, 1}, {0, 1}), DomainError);
  CHECK_THROWS_AS(fit_line({1}, {0}), DomainError);
}

TEST_CASE("ratio verification on the order-2 sign matrix") {
  const std::vector<LabeledTensor> instances = {{"sylvester-2", 0, hadamard_tensor(1)}};
  const VerifyReport rep = verify_inequality(sup_spec(), {E(2)}, instances);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].experiment_id == "sylvester-2");
  CHECK(rep.rows[0].n == 2);
  CHECK(rep.rows[0].mixed_norm == Catch::Approx(2.0 * kSqrt2).epsilon(1e-14));
  CHECK(rep.rows[0].opnorm == 2.0);
  CHECK(rep.rows[0].opnorm_exact);
  CHECK(rep.rows[0].ratio == Catch::Approx(kSqrt2).epsilon(1e-12));
  CHECK(rep.max_ratio == rep.rows[0].ratio);
  CHECK(rep.admissibility.admissible);
  CHECK(rep.sqrt2_guard);
  REQUIRE(rep.exps.size() == 2);
  CHECK(rep.exps[1] == E(1));  // forced innermost exponent
}

TEST_CASE("identity coefficients sit far below the bound") {
  for (std::int64_t n : {2, 4, 9}) {
    const std::vector<LabeledTensor> instances = {{"id", 0, diagonal_tensor(2, n)}};
    const VerifyReport rep = verify_inequality(sup_spec(), {E(2)}, instances);
    CHECK(rep.rows[0].mixed_norm == Catch::Approx(std::sqrt(double(n))).epsilon(1e-14));
    CHECK(rep.rows[0].opnorm == double(n));
    CHECK(rep.max_ratio <= 1.0);
  }
}

TEST_CASE("inadmissible exponents still get measured") {
  const std::vector<LabeledTensor> instances = {{"h", 0, hadamard_tensor(1)}};
  const VerifyReport rep = verify_inequality(sup_spec(), {E(19, 10)}, instances);
  CHECK_FALSE(rep.admissibility.admissible);
  CHECK(rep.rows[0].ratio > 0.0);
}

TEST_CASE("verification rejects mismatched instances") {
  const ComplexTensor C({2, 2}, std::vector<std::complex<double>>(4, {1.0, 0.0}));
  CHECK_THROWS_AS(verify_inequality(sup_spec(), {E(2)}, {{"c", 0, C}}), DomainError);
  const RealTensor cube({2, 2, 2}, std::vector<double>(8, 1.0));
  CHECK_THROWS_AS(verify_inequality(sup_spec(), {E(2)}, {{"cube", 0, cube}}), ShapeError);
  CHECK_THROWS_AS(verify_inequality(sup_spec(), {E(2), E(2)}, {}), DomainError);
}

TEST_CASE("hundred random sign matrices respect the bound") {
  std::vector<LabeledTensor> instances;
  for (std::uint64_t seed = 1; seed <= 100; ++seed)
    instances.push_back({"signs-n8-s" + std::to_string(seed), seed,
                         random_sign_tensor({8, 8}, seed)});
  RunOptions opt;
  opt.jobs = 4;
  const VerifyReport rep = verify_inequality(sup_spec(), {E(2)}, instances, opt);
  REQUIRE(rep.rows.size() == 100);
  for (const RatioRow& r : rep.rows) {
    CHECK(r.opnorm_exact);
    CHECK(r.ratio <= kSqrt2 + 1e-12);
    CHECK(r.ratio > 0.0);
    CHECK(r.seed >= 1);
  }
  CHECK(rep.max_ratio <= kSqrt2 + 1e-12);
}

TEST_CASE("zero padding leaves verification ratios unchanged") {
  const RealTensor T({2, 2}, {1, 2, 3, 4});
  const RealTensor P = embed(T, {3, 4});
  const VerifyReport a = verify_inequality(sup_spec(), {E(2)}, {{"t", 0, T}});
  const VerifyReport b = verify_inequality(sup_spec(), {E(2)}, {{"p", 0, P}});
  CHECK(a.rows[0].mixed_norm == b.rows[0].mixed_norm);
  CHECK(a.rows[0].opnorm == b.rows[0].opnorm);
  CHECK(a.rows[0].ratio == b.rows[0].ratio);
}

TEST_CASE("growth probe finds the diverging exponent") {
  FamilyDescriptor family{"random-sign", 2, 2, 1, 0, {}};
  RunOptions opt;
  opt.jobs = 4;
  opt.experiment_id = "growth-q65";
  const GrowthReport rep = probe_optimality(sup_spec(), {E(6, 5)}, family, {4, 6, 8, 12},
                                            {1, 2, 3, 4, 5}, opt);
  REQUIRE(rep.medians.size() == 4);
  CHECK(rep.rows.size() == 20);
  CHECK(rep.slope > 0.05);
  CHECK(rep.verdict == "growing");
  CHECK_FALSE(rep.truncated);
  for (const RatioRow& r : rep.rows) CHECK(r.experiment_id == "growth-q65");
}

TEST_CASE("growth probe at the threshold exponent stays bounded") {
  FamilyDescriptor family{"hadamard", 2, 2, 1, 0, {}};
  const GrowthReport rep = probe_optimality(sup_spec(), {E(2)}, family, {2, 4, 8, 16}, {});
  REQUIRE(rep.medians.size() == 4);
  for (const RatioRow& r : rep.rows) {
    CHECK(r.opnorm_exact);
    CHECK(r.ratio <= kSqrt2 + 1e-12);
  }
  CHECK(rep.verdict == "bounded");
}

TEST_CASE("vector-valued growth probe has an exact power-law slope") {
  FamilyDescriptor family{"diagonal", 2, 2, 1, 0, E(2)};
  {
    const GrowthReport rep =
        probe_optimality(make_spec(2, {E(4), E(4)}), {E(2)}, family, {2, 4, 8, 16}, {});
    CHECK(rep.slope == Catch::Approx(0.5).margin(1e-9));
    CHECK(rep.r2 == Catch::Approx(1.0).margin(1e-12));
    CHECK(rep.verdict == "growing");
    for (const RatioRow& r : rep.rows) CHECK(r.opnorm_exact);
  }
  {
    // here mixed and opnorm are the same power of n: the ratio is flat
    const GrowthReport rep =
        probe_optimality(sup_spec(), {E(2)}, family, {2, 4, 8, 16}, {});
    CHECK(rep.slope == Catch::Approx(0.0).margin(1e-12));
    CHECK(rep.verdict == "bounded");
  }
}

TEST_CASE("growth probe input validation") {
  FamilyDescriptor family{"random-sign", 2, 2, 1, 0, {}};
  CHECK_THROWS_AS(probe_optimality(sup_spec(), {E(2)}, family, {4, 6, 8}, {1}), DomainError);
  CHECK_THROWS_AS(probe_optimality(sup_spec(), {E(2)}, family, {4, 6, 6, 8}, {1}), DomainError);
  CHECK_THROWS_AS(probe_optimality(sup_spec(), {E(2)}, family, {4, 6, 8, 12}, {}), DomainError);
  FamilyDescriptor vec_pinned{"pinned-diagonal", 2, 2, 1, 0, E(2)};
  CHECK_THROWS_AS(probe_optimality(sup_spec(), {E(2)}, vec_pinned, {4, 6, 8, 12}, {1}),
                  DomainError);
}

TEST_CASE("growth probe truncates when the budget runs out") {
  FamilyDescriptor family{"random-sign", 2, 2, 1, 0, {}};
  RunOptions opt;
  opt.budget = 1 << 10;  // n = 12 needs 2^11 sign assignments
  const GrowthReport rep =
      probe_optimality(sup_spec(), {E(2)}, family, {4, 6, 8, 12}, {1, 2, 3}, opt);
  CHECK(rep.truncated);
  CHECK(rep.medians.size() == 3);
  CHECK(rep.rows.size() == 9);
  CHECK_FALSE(rep.warning.empty());

  RunOptions tiny;
  tiny.budget = 4;  // even n = 4 is over budget: nothing to report
  CHECK_THROWS_AS(probe_optimality(sup_spec(), {E(2)}, family, {4, 6, 8, 12}, {1}, tiny),
                  BudgetError);
}

TEST_CASE("constant search over small sign-matrix classes") {
  {
    const ConstantSearchReport rep = search_constant(1);
    CHECK(rep.classes == 1);
    CHECK(rep.best_ratio == Catch::Approx(1.0).epsilon(1e-14));
  }
  {
    const ConstantSearchReport rep = search_constant(2);
    CHECK(rep.classes == 2);
    CHECK(rep.best_class == 1);
    CHECK(std::abs(rep.best_ratio - kSqrt2) <= 1e-12);
    REQUIRE(rep.best_matrix.has_value());
    CHECK(rep.best_matrix->entries() == std::vector<double>{1, 1, 1, -1});
  }
  {
    const ConstantSearchReport rep = search_constant(2, false);
    CHECK(rep.classes == 16);
    CHECK(std::abs(rep.best_ratio - kSqrt2) <= 1e-12);
  }
  {
    const ConstantSearchReport rep = search_constant(3);
    CHECK(rep.classes == 16);
    CHECK(rep.best_ratio >= 1.0 - 1e-12);
    CHECK(rep.best_ratio <= kSqrt2 + 1e-12);
    // the reported ratio reproduces from the reported matrix
    REQUIRE(rep.best_matrix.has_value());
    const double mixed =
        mixed_norm(*rep.best_matrix, make_mixed_spec({1, 2}, {E(2), E(1)}));
    const double op = opnorm_exact_signs(*rep.best_matrix, 1 << 20).value;
    CHECK(rep.best_ratio == mixed / op);
  }
  CHECK_THROWS_AS(search_constant(10), BudgetError);
  CHECK_THROWS_AS(search_constant(6, true, 1 << 20), BudgetError);
  CHECK_THROWS_AS(search_constant(0), DomainError);
}

TEST_CASE("constant search is deterministic across worker counts") {
  // n = 5 spans many scan chunks, exercising the parallel argmax merge
  const ConstantSearchReport a = search_constant(5, true, std::int64_t{1} << 22, 1);
  const ConstantSearchReport b = search_constant(5, true, std::int64_t{1} << 22, 4);
  CHECK(a.classes == 65536);
  CHECK(a.best_class == b.best_class);
  CHECK(a.best_ratio == b.best_ratio);
  CHECK(a.best_ratio <= kSqrt2 + 1e-12);
}

TEST_CASE("ratio is invariant under row and column negation") {
  // justifies pinning the first row and column during the search
  const RealTensor M = random_sign_tensor({4, 4}, 3);
  std::vector<double> flipped = M.entries();
  for (std::int64_t j = 0; j < 4; ++j) flipped[static_cast<std::size_t>(1 * 4 + j)] *= -1.0;
  for (std::int64_t i = 0; i < 4; ++i) flipped[static_cast<std::size_t>(i * 4 + 2)] *= -1.0;
  const RealTensor F({4, 4}, std::move(flipped));
  const MixedNormSpec mspec = make_mixed_spec({1, 2}, {E(2), E(1)});
  CHECK(mixed_norm(M, mspec) == mixed_norm(F, mspec));
  CHECK(opnorm_exact_signs(M, 1 << 20).value == opnorm_exact_signs(F, 1 << 20).value);
}

TEST_CASE("experiment config json round trip") {
  ExperimentConfig c;
  c.spec = make_spec(3, {E(4), E(8), kInf}, {3, 1, 2});
  c.q = {E(2), E(5, 2)};
  c.family = FamilyDescriptor{"random-sign", 3, 4, 1, 11, {}};
  c.n_range = {4, 6, 8, 12};
  c.seeds = {1, 2, 3};
  c.budget = 1 << 18;
  c.tol = 1e-10;
  c.starts = 8;
  c.max_sweeps = 50;
  c.ascent_seed = 42;
  c.slope_threshold = 0.1;
  c.jobs = 2;
  c.experiment_id = "round-trip";
  c.output_path = "out.csv";
  c.output_format = "json";
  CHECK(config_from_json(config_to_json(c)) == c);

  c.family = FamilyDescriptor{"diagonal", 2, 2, 1, 0, E(3, 2)};
  CHECK(config_from_json(config_to_json(c)) == c);

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"spec":{}})")), IoError);

  const RunOptions o = run_options(c);
  CHECK(o.budget == c.budget);
  CHECK(o.ascent.starts == 8);
  CHECK(o.ascent.seed == 42);
  CHECK(o.ascent.jobs == 1);
  CHECK(o.jobs == 2);
  CHECK(o.slope_threshold == 0.1);
  CHECK(o.experiment_id == "round-trip");
}

TEST_CASE("csv layout is fixed") {
  RatioRow r;
  r.experiment_id = "exp";
  r.n = 2;
  r.seed = 7;
  r.mixed_norm = 2.0 * kSqrt2;
  r.opnorm = 2.0;
  r.opnorm_exact = true;
  r.ratio = kSqrt2;
  std::ostringstream out;
  write_rows_csv(out, {r}, "exp", std::nullopt, "pass");
  CHECK(out.str() ==
        "experiment_id,n,seed,mixed_norm,opnorm,opnorm_exact,ratio,slope,verdict\n"
        "exp,2,7,2.82842712475,2,true,1.41421356237,,\n"
        "exp,,,,,,,,pass\n");

  std::ostringstream out2;
  write_rows_csv(out2, {}, "g", 0.5, "growing");
  CHECK(out2.str() ==
        "experiment_id,n,seed,mixed_norm,opnorm,opnorm_exact,ratio,slope,verdict\n"
        "g,,,,,,,0.5,growing\n");
}

TEST_CASE("report files are byte-identical for any worker count") {
  std::vector<LabeledTensor> instances;
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    instances.push_back({"s" + std::to_string(seed), seed, random_sign_tensor({6, 6}, seed)});
  RunOptions serial;
  serial.jobs = 1;
  RunOptions parallel = serial;
  parallel.jobs = 4;
  const VerifyReport a = verify_inequality(sup_spec(), {E(2)}, instances, serial);
  const VerifyReport b = verify_inequality(sup_spec(), {E(2)}, instances, parallel);
  std::ostringstream sa, sb;
  write_rows_csv(sa, a.rows, "det", std::nullopt, "pass");
  write_rows_csv(sb, b.rows, "det", std::nullopt, "pass");
  CHECK(sa.str() == sb.str());
}

TEST_CASE("report json structure") {
  const std::vector<LabeledTensor> instances = {{"h", 0, hadamard_tensor(1)}};
  const VerifyReport rep = verify_inequality(sup_spec(), {E(2)}, instances);
  ExperimentConfig echo;
  const nlohmann::json vj = verify_report_to_json(rep, &echo);
  CHECK(vj.at("max_ratio").get<double>() == rep.max_ratio);
  CHECK(vj.at("admissible").get<bool>());
  CHECK(vj.at("sqrt2_guard").get<bool>());
  CHECK(vj.at("rows").size() == 1);
  CHECK(vj.at("thresholds").at("inner").get<std::string>() == "1");
  CHECK(vj.at("thresholds").at("q_min")[0].get<std::string>() == "2");
  CHECK(vj.contains("config"));

  FamilyDescriptor family{"diagonal", 2, 2, 1, 0, E(2)};
  const GrowthReport gr =
      probe_optimality(make_spec(2, {E(4), E(4)}), {E(2)}, family, {2, 4, 8, 16}, {});
  const nlohmann::json gj = growth_report_to_json(gr);
  CHECK(gj.at("medians").size() == 4);
  CHECK(gj.at("verdict").get<std::string>() == "growing");
  CHECK_FALSE(gj.contains("config"));

  const ConstantSearchReport sr = search_constant(2);
  const nlohmann::json sj = search_report_to_json(sr);
  CHECK(sj.at("classes").get<std::int64_t>() == 2);
  // the embedded matrix is readable by the tensor loader
  const TensorVariant back = tensor_from_json(sj.at("best_matrix"));
  CHECK(std::get<RealTensor>(back).entries() == sr.best_matrix->entries());
}
