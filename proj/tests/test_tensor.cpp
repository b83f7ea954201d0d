#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <vector>

#include "mixnorm/errors.hpp"
#include "mixnorm/rng.hpp"
#include "mixnorm/tensor.hpp"
#include "mixnorm/tensor_io.hpp"

using namespace mixnorm;

namespace {

ExtExp E(std::int64_t num, std::int64_t den = 1) { return ExtExp::of(num, den); }
const ExtExp kInf = ExtExp::inf();

RealTensor ones_matrix(std::int64_t rows, std::int64_t cols) {
  return RealTensor({rows, cols}, std::vector<double>(static_cast<std::size_t>(rows * cols), 1.0));
}

RealTensor identity_matrix(std::int64_t n) {
  std::vector<double> e(static_cast<std::size_t>(n * n), 0.0);
  for (std::int64_t i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = 1.0;
  return RealTensor({n, n}, std::move(e));
}

RealTensor random_matrix(std::int64_t rows, std::int64_t cols, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> e(static_cast<std::size_t>(rows * cols));
  for (double& x : e) x = rng.normal();
  return RealTensor({rows, cols}, std::move(e));
}

double nested_21(const RealTensor& T) {  // ℓ_2 over axis 1 of ℓ_1 over axis 2
  return mixed_norm(T, make_mixed_spec({1, 2}, {E(2), E(1)}));
}

}  // namespace

TEST_CASE("tensor construction and validation") {
  CHECK_NOTHROW(RealTensor({2, 3}, std::vector<double>(6, 0.5)));
  CHECK_THROWS_AS(RealTensor({2, 3}, std::vector<double>(5, 0.0)), ShapeError);
  CHECK_THROWS_AS(RealTensor({}, {}), ShapeError);
  CHECK_THROWS_AS(RealTensor({0, 3}, {}), ShapeError);
  CHECK_THROWS_AS(RealTensor({100000, 100000, 100000}, {}), BudgetError);
  std::vector<double> bad = {1.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_AS(RealTensor({2}, std::move(bad)), DomainError);
  const RealTensor T({2, 2}, {1, 2, 3, 4});
  CHECK(T.at({0, 1}) == 2.0);
  CHECK(T.at({1, 0}) == 3.0);
  CHECK_THROWS_AS(T.at({2, 0}), ShapeError);
  CHECK_THROWS_AS(T.at({0}), ShapeError);
}

TEST_CASE("nested norm closed forms") {
  CHECK(nested_21(ones_matrix(2, 2)) == Catch::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(mixed_norm(ones_matrix(2, 2), make_mixed_spec({1, 2}, {kInf, E(1)})) == 2.0);
  CHECK(mixed_norm(ones_matrix(3, 4), make_mixed_spec({1, 2}, {E(1), kInf})) == 3.0);

  // non-symmetric matrix distinguishes the two aggregation orders
  const RealTensor T({2, 2}, {1, 2, 3, 4});
  CHECK(mixed_norm(T, make_mixed_spec({1, 2}, {E(1), kInf})) == 6.0);  // row sups 2,4
  CHECK(mixed_norm(T, make_mixed_spec({2, 1}, {E(1), kInf})) == 7.0);  // col sups 3,4
}

TEST_CASE("identity coefficients give exact power laws") {
  // every fiber holds a single 1, so the nested norm is exactly n^{1/q_outer}
  for (std::int64_t n : {2, 3, 7, 10}) {
    const RealTensor I = identity_matrix(n);
    for (const ExtExp& q : {E(1), E(6, 5), E(2), E(3), E(7, 2)}) {
      const double expected = std::pow(static_cast<double>(n), q.recip_double());
      CHECK(mixed_norm(I, make_mixed_spec({1, 2}, {q, E(2)})) == expected);
      CHECK(mixed_norm(I, make_mixed_spec({1, 2}, {q, kInf})) == expected);
      CHECK(mixed_norm(I, make_mixed_spec({1, 2}, {q, E(1)})) == expected);
    }
    CHECK(mixed_norm(I, make_mixed_spec({1, 2}, {kInf, E(4)})) == 1.0);
  }
}

TEST_CASE("flat norm values") {
  CHECK(flat_norm(identity_matrix(3), E(4, 3)) ==
        Catch::Approx(std::pow(3.0, 0.75)).epsilon(1e-14));
  const RealTensor H({2, 2}, {1, 1, 1, -1});
  CHECK(flat_norm(H, E(4, 3)) == Catch::Approx(std::pow(4.0, 0.75)).epsilon(1e-14));
  CHECK(flat_norm(RealTensor::zeros({3, 3}), E(2)) == 0.0);
  CHECK(flat_norm(H, kInf) == 1.0);
}

TEST_CASE("all-equal exponents collapse to the flat norm") {
  const RealTensor T = random_matrix(5, 7, 31);
  for (const ExtExp& q : {E(1), E(4, 3), E(2), E(5), kInf}) {
    const double ref = flat_norm(T, q);
    const double a = mixed_norm(T, make_mixed_spec({1, 2}, {q, q}));
    const double b = mixed_norm(T, make_mixed_spec({2, 1}, {q, q}));
    CHECK(a == Catch::Approx(ref).epsilon(1e-12));
    CHECK(b == Catch::Approx(ref).epsilon(1e-12));
  }
  // rank 3 as well
  Rng rng(77);
  std::vector<double> e(3 * 4 * 2);
  for (double& x : e) x = rng.normal();
  const RealTensor U({3, 4, 2}, std::move(e));
  const double ref = flat_norm(U, E(3, 2));
  for (const std::vector<int>& ord :
       {std::vector<int>{1, 2, 3}, {3, 1, 2}, {2, 3, 1}}) {
    CHECK(mixed_norm(U, make_mixed_spec(ord, {E(3, 2), E(3, 2), E(3, 2)})) ==
          Catch::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("nested norms are nonincreasing in each exponent") {
  const std::vector<ExtExp> grid = {E(1), E(4, 3), E(2), E(3), kInf};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const RealTensor T = random_matrix(4, 6, seed);
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = 0; j < grid.size(); ++j)
        for (std::size_t i2 = i; i2 < grid.size(); ++i2)
          for (std::size_t j2 = j; j2 < grid.size(); ++j2) {
            const double lo = mixed_norm(T, make_mixed_spec({1, 2}, {grid[i2], grid[j2]}));
            const double hi = mixed_norm(T, make_mixed_spec({1, 2}, {grid[i], grid[j]}));
            CHECK(lo <= hi * (1.0 + 1e-12));
          }
  }
}

TEST_CASE("absolute homogeneity") {
  const RealTensor T = random_matrix(3, 5, 9);
  const double base = nested_21(T);
  CHECK(nested_21(scale(T, -2.5)) == Catch::Approx(2.5 * base).epsilon(1e-13));
  CHECK(nested_21(scale(T, 0.0)) == 0.0);
  const ComplexTensor C({1, 2}, {std::complex<double>(3.0, 4.0), std::complex<double>(0.0, 1.0)});
  CHECK(mixed_norm(C, make_mixed_spec({1, 2}, {E(2), E(1)})) ==
        Catch::Approx(6.0).epsilon(1e-14));  // |3+4i| + |i| = 6
}

TEST_CASE("flat interpolation between the two nesting orders") {
  // ‖T‖_{4/3} ≤ sqrt(‖T‖_{ℓ1(ℓ2)} · ‖T‖_{ℓ2(ℓ1)}), with equality for the
  // hand-checked matrices below.
  const auto l1l2 = [](const RealTensor& T) {
    return mixed_norm(T, make_mixed_spec({1, 2}, {E(1), E(2)}));
  };
  const auto l2l1 = [](const RealTensor& T) {
    return mixed_norm(T, make_mixed_spec({1, 2}, {E(2), E(1)}));
  };

  const RealTensor A({2, 2}, {1, 1, 0, 0});
  CHECK(flat_norm(A, E(4, 3)) == Catch::Approx(std::sqrt(l1l2(A) * l2l1(A))).epsilon(1e-13));
  const RealTensor I = identity_matrix(2);
  CHECK(flat_norm(I, E(4, 3)) == Catch::Approx(std::sqrt(l1l2(I) * l2l1(I))).epsilon(1e-13));
  const RealTensor J = ones_matrix(2, 2);
  CHECK(flat_norm(J, E(4, 3)) == Catch::Approx(std::sqrt(l1l2(J) * l2l1(J))).epsilon(1e-13));

  int checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const RealTensor T = random_matrix(4, 5, seed);
    const double lhs = flat_norm(T, E(4, 3));
    const double rhs = std::sqrt(l1l2(T) * l2l1(T));
    CHECK(lhs <= rhs * (1.0 + 1e-12));
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("zero padding preserves nested norms") {
  const RealTensor T({2, 2}, {1, 2, 3, 4});
  const RealTensor P = embed(T, {3, 4});
  CHECK(P.dims() == std::vector<std::int64_t>{3, 4});
  CHECK(P.at({1, 1}) == 4.0);
  CHECK(P.at({2, 3}) == 0.0);
  CHECK(nested_21(P) == nested_21(T));
  CHECK(mixed_norm(P, make_mixed_spec({2, 1}, {E(3), E(4, 3)})) ==
        mixed_norm(T, make_mixed_spec({2, 1}, {E(3), E(4, 3)})));
  CHECK_THROWS_AS(embed(T, {1, 4}), ShapeError);
  CHECK_THROWS_AS(embed(T, {2, 2, 2}), ShapeError);

  const RealTensor back = slice(P, {0, 0}, {2, 2});
  CHECK(back.entries() == T.entries());
  const RealTensor corner = slice(RealTensor({2, 3}, {1, 2, 3, 4, 5, 6}), {1, 1}, {1, 2});
  CHECK(corner.entries() == std::vector<double>{5, 6});
  CHECK_THROWS_AS(slice(P, {2, 2}, {2, 3}), ShapeError);
  CHECK_THROWS_AS(slice(P, {0, 0}, {0, 1}), ShapeError);
}

TEST_CASE("contraction agrees with direct evaluation") {
  const RealTensor T({2, 2}, {1, 2, 3, 4});
  const std::vector<std::vector<double>> ones = {{1, 1}, {1, 1}};
  CHECK(contract_all(T, ones) == 10.0);
  CHECK(contract_except(T, ones, 0) == std::vector<double>{3, 7});   // row sums
  CHECK(contract_except(T, ones, 1) == std::vector<double>{4, 6});   // column sums
  const std::vector<std::vector<double>> xy = {{1, -1}, {2, 1}};
  // (1,-1) A (2,1)^T with A = [[1,2],[3,4]]: (1·2+2·1) - (3·2+4·1) = 4 - 10
  CHECK(contract_all(T, xy) == -6.0);
  CHECK_THROWS_AS(contract_all(T, {{1, 1}}), ShapeError);
  CHECK_THROWS_AS(contract_all(T, {{1, 1}, {1, 1, 1}}), ShapeError);
  CHECK_THROWS_AS(contract_except(T, ones, 2), ShapeError);

  const ComplexTensor C({2}, {std::complex<double>(1, 1), std::complex<double>(0, 2)});
  const std::complex<double> v =
      contract_all(C, {{std::complex<double>(1, 0), std::complex<double>(0, -1)}});
  CHECK(v == std::complex<double>(3, 1));  // (1+i) + (2i)(-i) = 3 + i
}

TEST_CASE("norms survive extreme magnitudes") {
  const RealTensor T({2}, {1e300, 1e300});
  const double v = flat_norm(T, E(4));
  CHECK(std::isfinite(v));
  CHECK(v == Catch::Approx(1e300 * std::pow(2.0, 0.25)).epsilon(1e-13));
  const RealTensor S({2}, {1e-300, 1e-300});
  CHECK(flat_norm(S, E(2)) == Catch::Approx(1e-300 * std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("tensor json round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mixnorm-tensor-io-test";
  fs::create_directories(dir);

  const RealTensor T({2, 3}, {1, -2, 3.5, 0, 4, -0.25});
  const fs::path rp = dir / "real.json";
  write_tensor_file(rp.string(), T);
  const TensorVariant rr = read_tensor_file(rp.string());
  REQUIRE(std::holds_alternative<RealTensor>(rr));
  CHECK(std::get<RealTensor>(rr).dims() == T.dims());
  CHECK(std::get<RealTensor>(rr).entries() == T.entries());

  const ComplexTensor C({2}, {std::complex<double>(1.5, -2.0), std::complex<double>(0, 3)});
  const fs::path cp = dir / "complex.json";
  write_tensor_file(cp.string(), C);
  const TensorVariant cr = read_tensor_file(cp.string());
  REQUIRE(std::holds_alternative<ComplexTensor>(cr));
  CHECK(std::get<ComplexTensor>(cr).entries() == C.entries());

  CHECK_THROWS_AS(read_tensor_file((dir / "missing.json").string()), IoError);
  CHECK_THROWS_AS(tensor_from_json(nlohmann::json::parse(R"({"dims":[2]})")), IoError);
  CHECK_THROWS_AS(
      tensor_from_json(nlohmann::json::parse(R"({"dims":[2],"field":"octonion","entries":[1,2]})")),
      IoError);
  CHECK_THROWS_AS(
      tensor_from_json(nlohmann::json::parse(R"({"dims":[2],"field":"real","entries":[1,"x"]})")),
      IoError);
  CHECK_THROWS_AS(  // entry count must match dims
      tensor_from_json(nlohmann::json::parse(R"({"dims":[2],"field":"real","entries":[1,2,3]})")),
      ShapeError);

  fs::remove_all(dir);
}

TEST_CASE("mixed norm spec validation") {
  const RealTensor T = ones_matrix(2, 2);
  CHECK_THROWS_AS(mixed_norm(T, make_mixed_spec({1}, {E(2)})), ShapeError);
  CHECK_THROWS_AS(mixed_norm(T, make_mixed_spec({1, 1}, {E(2), E(1)})), DomainError);
  CHECK_THROWS_AS(mixed_norm(T, make_mixed_spec({1, 3}, {E(2), E(1)})), DomainError);
  CHECK_THROWS_AS(mixed_norm(T, make_mixed_spec({1, 2}, {E(2)})), ShapeError);
}
