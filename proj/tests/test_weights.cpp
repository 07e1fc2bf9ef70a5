#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "meinardus/model_io.hpp"
#include "meinardus/weights.hpp"

using meinardus::WeightModel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
WeightModel table1() {
  return WeightModel::table({2.0, 0.0, 1.0, 3.0}, meinardus::PowerTail{1.0, 1.0});
}
}  // namespace

TEST_CASE("factory validation", "[weights]") {
  CHECK_THROWS_AS(WeightModel::constant(0.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::constant(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::power(0.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::power(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::table({}, meinardus::PowerTail{1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::table({1.0, -1.0}, meinardus::PowerTail{1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::table({1.0}, meinardus::PowerTail{0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::table({1.0}, meinardus::PowerTail{1.0, -2.0}),
                  std::invalid_argument);
}

TEST_CASE("pole metadata per model", "[weights]") {
  const auto c1 = WeightModel::constant(1.0);
  CHECK(c1.rho() == 1.0);
  CHECK(c1.residue() == 1.0);
  CHECK_THAT(c1.d0(), WithinAbs(-0.5, 1e-10));
  CHECK_THAT(c1.d0_prime(), WithinAbs(-0.91893853320467274, 1e-10));

  const auto c2 = WeightModel::constant(2.0);
  CHECK(c2.residue() == 2.0);
  CHECK_THAT(c2.d0(), WithinAbs(-1.0, 1e-10));
  CHECK_THAT(c2.d0_prime(), WithinAbs(-1.8378770664093455, 1e-10));

  const auto lin = WeightModel::linear();
  CHECK(lin.rho() == 2.0);
  CHECK(lin.residue() == 1.0);
  CHECK_THAT(lin.d0(), WithinAbs(-0.083333333333333333, 1e-10));
  CHECK_THAT(lin.d0_prime(), WithinAbs(-0.16542114370045093, 1e-10));

  const auto pw = WeightModel::power(1.0, 1.5);
  CHECK(pw.rho() == 1.5);
  CHECK_THAT(pw.d0(), WithinAbs(-0.20788622497735456, 1e-10));
  CHECK_THAT(pw.d0_prime(), WithinAbs(-0.36085433959994761, 1e-10));

  const auto tb = table1();
  CHECK(tb.rho() == 1.0);
  CHECK(tb.residue() == 1.0);
  CHECK_THAT(tb.d0(), WithinAbs(1.5, 1e-10));
  CHECK_THAT(tb.d0_prime(), WithinAbs(-2.9983800748845086, 1e-10));
}

TEST_CASE("certified metadata flag", "[weights]") {
  CHECK(WeightModel::constant(1.0).certified_metadata());
  CHECK(WeightModel::linear().certified_metadata());
  CHECK(WeightModel::power(2.0, 0.5).certified_metadata());
  CHECK_FALSE(table1().certified_metadata());
}

TEST_CASE("weight sequences", "[weights]") {
  const auto lin = WeightModel::linear();
  for (std::uint64_t k = 1; k <= 40; ++k)
    CHECK(lin.weight_at(k) == static_cast<double>(k));

  const auto pw = WeightModel::power(2.0, 1.5);
  CHECK_THAT(pw.weight_at(9), WithinRel(6.0, 1e-14));  // 2 * sqrt(9)

  const auto tb = table1();
  CHECK(tb.weight_at(1) == 2.0);
  CHECK(tb.weight_at(2) == 0.0);
  CHECK(tb.weight_at(3) == 1.0);
  CHECK(tb.weight_at(4) == 3.0);
  CHECK(tb.weight_at(5) == 1.0);  // tail takes over
  CHECK(tb.weight_at(500) == 1.0);
}

TEST_CASE("dirichlet continuation of a table model", "[weights]") {
  const auto tb = table1();
  CHECK_THAT(tb.dirichlet_continuation({3.5, 0.0}).real(),
             WithinAbs(2.0539705196687382, 1e-12));
  const auto z = tb.dirichlet_continuation({2.2, 1.5});
  CHECK_THAT(z.real(), WithinAbs(1.8383910362521636, 1e-12));
  CHECK_THAT(z.imag(), WithinAbs(-0.21124959144014020, 1e-12));
}

TEST_CASE("regularity diagnostics", "[weights]") {
  // exact power families: L_k vanishes identically, the partial-sum
  // ratio is exactly 1 for the constant model
  const auto c1 = WeightModel::constant(1.0);
  for (double L : meinardus::l_sequence(c1, 50)) CHECK_THAT(L, WithinAbs(0.0, 1e-12));
  CHECK_THAT(meinardus::partial_sum_check(c1, 1000), WithinAbs(1.0, 1e-12));

  // table model: prefix sum of b_j is k + 2 once past the table, so
  // L_k = 2/k exactly — decaying well inside the k^{-1/2} envelope
  const auto tb = table1();
  const auto L = meinardus::l_sequence(tb, 60);
  for (std::size_t k = 5; k <= 60; ++k)
    CHECK_THAT(L[k - 1], WithinAbs(2.0 / static_cast<double>(k), 1e-12));
  CHECK_THAT(meinardus::partial_sum_check(tb, 500), WithinAbs(1.0 + 2.0 / 500.0, 1e-12));
}

TEST_CASE("divisor weight sums", "[weights]") {
  const auto c1 = WeightModel::constant(1.0);
  // sigma(12) = 1+2+3+4+6+12
  CHECK_THAT(meinardus::divisor_weight_sum(c1, 12), WithinRel(28.0, 1e-14));
  const auto lin = WeightModel::linear();
  // sum of d^2 over divisors of 12
  CHECK_THAT(meinardus::divisor_weight_sum(lin, 12), WithinRel(210.0, 1e-14));
}

TEST_CASE("json round trip", "[weights][io]") {
  const auto models = {WeightModel::constant(2.5), WeightModel::linear(),
                       WeightModel::power(0.75, 1.25), table1()};
  for (const auto& m : models) {
    const auto j = meinardus::model_to_json(m);
    CHECK(meinardus::model_from_json(j) == m);
  }
}

TEST_CASE("json parsing errors", "[weights][io]") {
  CHECK_THROWS_AS(meinardus::model_from_json_text(R"({"kind":"frobnicate"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(meinardus::model_from_json_text(R"({"kind":"constant"})"),
                  std::invalid_argument);
  // table without a positive tail is not representable
  CHECK_THROWS_AS(meinardus::model_from_json_text(R"({"kind":"table","values":[1,2]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      meinardus::model_from_json_text(R"({"kind":"table","values":[1],"tail":{"C":0,"nu":1}})"),
      std::invalid_argument);
}

TEST_CASE("json parsing accepts the documented shapes", "[weights][io]") {
  CHECK(meinardus::model_from_json_text(R"({"kind":"constant","b":1})") ==
        WeightModel::constant(1.0));
  CHECK(meinardus::model_from_json_text(R"({"kind":"linear"})") == WeightModel::linear());
  CHECK(meinardus::model_from_json_text(R"({"kind":"power","C":1.0,"nu":1.5})") ==
        WeightModel::power(1.0, 1.5));
  CHECK(meinardus::model_from_json_text(
            R"({"kind":"table","values":[2,0,1,3],"tail":{"C":1.0,"nu":1.0}})") == table1());
}
