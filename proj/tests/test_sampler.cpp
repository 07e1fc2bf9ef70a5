#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "meinardus/sampler.hpp"
#include "meinardus/series.hpp"

using meinardus::WeightModel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("splitmix64 reference stream", "[sampler]") {
  std::uint64_t x = 0;
  CHECK(meinardus::splitmix64(x) == 0xE220A8397B1DCDAFull);
  CHECK(meinardus::splitmix64(x) == 0x6E789E6AA1B965F4ull);
  CHECK(meinardus::splitmix64(x) == 0x06C45D188009454Full);
}

TEST_CASE("seeded streams are deterministic and distinct", "[sampler]") {
  auto r1 = meinardus::make_rng(42, 0);
  auto r2 = meinardus::make_rng(42, 0);
  auto r3 = meinardus::make_rng(42, 1);
  auto r4 = meinardus::make_rng(43, 0);
  bool same12 = true, same13 = true, same14 = true;
  for (int i = 0; i < 64; ++i) {
    const auto a = r1(), b = r2(), c = r3(), d = r4();
    same12 = same12 && (a == b);
    same13 = same13 && (a == c);
    same14 = same14 && (a == d);
  }
  CHECK(same12);
  CHECK_FALSE(same13);
  CHECK_FALSE(same14);
}

TEST_CASE("tilted measure tail bound", "[sampler]") {
  const auto c1 = WeightModel::constant(1.0);
  const double v = std::exp(-0.25);
  const double b1 = meinardus::mu_v_tail_bound(c1, v, 100);
  const double b2 = meinardus::mu_v_tail_bound(c1, v, 200);
  CHECK(b2 < b1);
  const auto kc = meinardus::default_k_cut(c1, v);
  CHECK(meinardus::mu_v_tail_bound(c1, v, kc) < 1e-12);
  // a short cut violates the precondition
  CHECK_THROWS_AS(meinardus::sample_mu_v(c1, v, 5, 1), std::domain_error);
}

TEST_CASE("tilted sample has the right mean total", "[sampler]") {
  const auto c1 = WeightModel::constant(1.0);
  const double alpha = 0.2;
  const double v = std::exp(-alpha);
  const double mean_want = 38.665018337872328;  // A(0.2), summed independently
  const double var_want = 398.73351671205661;   // B(0.2)
  auto rng = meinardus::make_rng(20260815);
  const int N = 20000;
  double acc = 0.0;
  const auto kc = meinardus::default_k_cut(c1, v);
  for (int i = 0; i < N; ++i)
    acc += static_cast<double>(meinardus::sample_mu_v(c1, v, kc, rng).total);
  const double mean = acc / N;
  // 4 sigma of the sample mean
  CHECK_THAT(mean, WithinAbs(mean_want, 4.0 * std::sqrt(var_want / N)));
}

TEST_CASE("tilted sample mean for real-valued weights", "[sampler]") {
  const auto pw = WeightModel::power(1.0, 1.5);
  const double alpha = 0.35;
  const double v = std::exp(-alpha);
  const double mean_want = 24.025688970273276;  // A(0.35)
  const double var_want = 174.06410409958361;   // B(0.35)
  auto rng = meinardus::make_rng(7);
  const int N = 20000;
  double acc = 0.0;
  const auto kc = meinardus::default_k_cut(pw, v);
  for (int i = 0; i < N; ++i)
    acc += static_cast<double>(meinardus::sample_mu_v(pw, v, kc, rng).total);
  CHECK_THAT(acc / N, WithinAbs(mean_want, 4.0 * std::sqrt(var_want / N)));
}

TEST_CASE("uniform sampler conditions on the target total", "[sampler]") {
  const auto c1 = WeightModel::constant(1.0);
  meinardus::UniformSampler s(c1, 30);
  auto rng = meinardus::make_rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto part = s.draw(rng, 1000000);
    CHECK(part.total == 30);
    std::uint64_t tot = 0, largest = 0;
    for (const auto& [k, r] : part.multiplicities) {
      tot += k * r;
      largest = std::max(largest, k);
    }
    CHECK(tot == 30);
    CHECK(part.largest_part == largest);
  }
}

TEST_CASE("uniform largest-part law matches the exact pmf", "[sampler]") {
  // chi-square against the exact law on a small support, fixed seed
  const auto c1 = WeightModel::constant(1.0);
  const std::size_t n = 8;
  const auto pmf = meinardus::pmf_largest_part(c1, n, meinardus::CountMode::LogFloat);
  const std::size_t N = 20000;
  const auto emp = meinardus::empirical_largest_part(c1, n, N, 3111);
  double chi2 = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const double expect = static_cast<double>(N) * pmf[m - 1];
    const double diff = static_cast<double>(emp.freq[m - 1]) - expect;
    chi2 += diff * diff / expect;
  }
  const double p = meinardus::sf::chi_square_survival(chi2, static_cast<double>(n - 1));
  CHECK(p > 0.001);
}

TEST_CASE("empirical law passes a KS gate at moderate n", "[sampler]") {
  const auto c1 = WeightModel::constant(1.0);
  const auto emp = meinardus::empirical_largest_part(c1, 20, 20000, 90210);
  CHECK(emp.samples == 20000);
  CHECK(emp.ks < 1.95 / std::sqrt(20000.0));
  CHECK(emp.tries_mean > 1.0);
}

TEST_CASE("empirical run is reproducible for a fixed seed", "[sampler]") {
  const auto lin = WeightModel::linear();
  const auto a = meinardus::empirical_largest_part(lin, 15, 4000, 99);
  const auto b = meinardus::empirical_largest_part(lin, 15, 4000, 99);
  CHECK(a.freq == b.freq);
  CHECK(a.ks == b.ks);
  CHECK(a.tries_mean == b.tries_mean);
  const auto c = meinardus::empirical_largest_part(lin, 15, 4000, 100);
  CHECK(a.freq != c.freq);
}

TEST_CASE("acceptance rate tracks the local limit prediction", "[sampler]") {
  // expected tries ~ sqrt(2 pi B(alpha_n)); allow a factor-of-two band
  const auto c1 = WeightModel::constant(1.0);
  const auto sol = meinardus::solve_saddle(c1, 50);
  const double predict = std::sqrt(2.0 * meinardus::sf::pi * sol.B_value);
  const auto emp = meinardus::empirical_largest_part(c1, 50, 4000, 1234);
  CHECK(emp.tries_mean > predict / 2.0);
  CHECK(emp.tries_mean < predict * 2.0);
}

TEST_CASE("tilt choice does not bias the conditioned law", "[sampler]") {
  // draw at v = e^{-alpha_n} and at the off-saddle v = e^{-2 alpha_n};
  // conditioned on the total, both are the uniform law
  const auto c1 = WeightModel::constant(1.0);
  const std::size_t n = 20;
  const auto sol = meinardus::solve_saddle(c1, n);
  meinardus::UniformSampler s1(c1, n);
  meinardus::UniformSampler s2(c1, n, std::exp(-2.0 * sol.alpha_n));
  auto r1 = meinardus::make_rng(606, 0);
  auto r2 = meinardus::make_rng(606, 1);
  std::vector<std::uint64_t> f1(n, 0), f2(n, 0);
  for (int i = 0; i < 10000; ++i) {
    f1[s1.draw(r1, 1000000).largest_part - 1]++;
    f2[s2.draw(r2, 1000000).largest_part - 1]++;
  }
  CHECK(meinardus::two_sample_ks_pvalue(f1, f2) > 0.001);
}

TEST_CASE("two-sample ks p-value sanity", "[sampler]") {
  std::vector<std::uint64_t> a{100, 200, 300}, b{100, 200, 300};
  CHECK_THAT(meinardus::two_sample_ks_pvalue(a, b), WithinAbs(1.0, 1e-12));
  std::vector<std::uint64_t> c{600, 0, 0};
  CHECK(meinardus::two_sample_ks_pvalue(a, c) < 1e-6);
}

TEST_CASE("rejection budget is enforced", "[sampler]") {
  const auto c1 = WeightModel::constant(1.0);
  CHECK_THROWS_AS(meinardus::sample_uniform(c1, 200, 1, 2), meinardus::convergence_error);
}
