// Prints everything the library knows about one model at one n: pole
// metadata, generating-function values, the saddle point, the count
// estimate against the exact count, and the Gumbel normalization.
//
//   inspect MODEL.json N [ALPHA]

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "meinardus/meinardus.hpp"

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: inspect MODEL.json N [ALPHA]\n");
    return 1;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::fprintf(stderr, "cannot open %s\n", argv[1]);
    return 2;
  }
  const auto model = meinardus::model_from_json(nlohmann::json::parse(in));
  const std::uint64_t n = std::strtoull(argv[2], nullptr, 10);
  const double alpha = argc > 3 ? std::strtod(argv[3], nullptr) : 0.5;

  std::printf("model: rho=%.17g  A=%.17g  D(0)=%.17g  D'(0)=%.17g\n", model.rho(),
              model.residue(), model.d0(), model.d0_prime());
  std::printf("weights b_1..b_8:");
  for (std::uint64_t k = 1; k <= 8; ++k) std::printf(" %.12g", meinardus::weight_at(model, k));
  std::printf("\n");

  std::printf("at alpha=%.17g:\n", alpha);
  std::printf("  F=%.17g  A=%.17g  B=%.17g\n", meinardus::eval_F(model, alpha),
              meinardus::eval_A(model, alpha), meinardus::eval_B(model, alpha));

  const auto sol = meinardus::solve_saddle(model, n);
  std::printf("saddle at n=%llu:\n", static_cast<unsigned long long>(n));
  std::printf("  alpha_n=%.17g  expansion=%.17g  residual=%.3g\n", sol.alpha_n,
              sol.alpha_expansion, sol.residual);
  std::printf("  F=%.17g  B=%.17g  h=%.17g\n", sol.F_value, sol.B_value, sol.h);
  const double est = meinardus::meinardus_log_estimate(sol);
  std::printf("  log-count estimate = %.17g\n", est);
  if (n <= 5000) {
    const auto table =
        meinardus::expand(model, n, std::nullopt, meinardus::CountMode::LogFloat);
    const double ex = table.log_count(n);
    std::printf("  log-count exact    = %.17g  (rel err %.3g)\n", ex, (est - ex) / ex);
  }

  const double s = meinardus::detail::norm_scale(model, n, meinardus::Normalization::ViaAlphaN);
  std::printf("gumbel: scale=%.17g  center=%.17g\n", s,
              meinardus::gumbel_center(model, n, meinardus::Normalization::ViaAlphaN));
  std::printf("  quantiles m(t): ");
  for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0}) {
    try {
      std::printf("m(%g)=%llu ", t,
                  static_cast<unsigned long long>(meinardus::quantile_m(model, n, t)));
    } catch (const std::domain_error&) {
      std::printf("m(%g)=- ", t);  // level below the support at this n
    }
  }
  std::printf("\n");
  std::printf("omega(n)=%.17g  locality delta=%.17g\n", meinardus::omega_slow(n),
              meinardus::locality_delta(model, sol.alpha_n, static_cast<double>(n)));
  return 0;
}
