#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "meinardus/errors.hpp"
#include "meinardus/special_functions.hpp"
#include "meinardus/weights.hpp"

// Saddle-point machinery on the positive axis.  With r = e^{-alpha},
//
//   F(alpha) = -sum_k b_k log(1 - e^{-k alpha})        (log f_b(r))
//   A(alpha) =  sum_k b_k k / (e^{k alpha} - 1)        (r F'(r))
//   B(alpha) =  sum_k b_k k^2 e^{k alpha}/(e^{k alpha}-1)^2,
//
// B = -dA/dalpha.  The saddle alpha_n solves A(alpha) = n; the count
// estimate is  e^{n alpha} f_b(e^{-alpha}) / sqrt(2 pi B).  Series are
// cut at K(alpha) = ceil((rho+40)/alpha): the omitted tail is a factor
// ~ (rho+40)^{rho+2} e^{-rho-40} of the total, i.e. below 1e-13.

namespace meinardus {

struct SaddleSolution {
  std::uint64_t n = 0;
  double alpha_n = 0.0;
  double alpha_expansion = 0.0;  // a(n) + D(0)/((rho+1) n)
  double F_value = 0.0;
  double B_value = 0.0;
  double h = 0.0;  // A Gamma(rho+1) zeta(rho+1)
  double residual = 0.0;
};

namespace detail {

inline std::uint64_t series_cutoff(const WeightModel& m, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("saddle sums: need alpha > 0");
  const double k = std::ceil((m.rho() + 40.0) / alpha);
  if (k > 2e8) throw convergence_error("saddle sums: alpha too small for direct summation");
  return static_cast<std::uint64_t>(k);
}

// compensated accumulation; the saddle residual target (1e-10 relative)
// sits close enough to double roundup over ~1e5 terms to warrant it
class KahanSum {
public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

inline double eval_F(const WeightModel& m, double alpha) {
  const std::uint64_t K = detail::series_cutoff(m, alpha);
  detail::KahanSum s;
  for (std::uint64_t k = 1; k <= K; ++k)
    s.add(-m.weight_at(k) * std::log1p(-std::exp(-static_cast<double>(k) * alpha)));
  return s.value();
}

inline double eval_A(const WeightModel& m, double alpha) {
  const std::uint64_t K = detail::series_cutoff(m, alpha);
  detail::KahanSum s;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    s.add(m.weight_at(k) * kd / std::expm1(kd * alpha));
  }
  return s.value();
}

inline double eval_B(const WeightModel& m, double alpha) {
  const std::uint64_t K = detail::series_cutoff(m, alpha);
  detail::KahanSum s;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    const double em = std::expm1(kd * alpha);
    s.add(m.weight_at(k) * kd * kd * std::exp(kd * alpha) / (em * em));
  }
  return s.value();
}

inline double meinardus_h(const WeightModel& m) {
  return m.residue() * std::tgamma(m.rho() + 1.0) * sf::zeta(m.rho() + 1.0);
}

// leading-order saddle scale a(n) = (h/n)^{1/(rho+1)}
inline double scale_a(const WeightModel& m, double n) {
  if (!(n > 0.0)) throw std::domain_error("scale_a: need n > 0");
  return std::pow(meinardus_h(m) / n, 1.0 / (m.rho() + 1.0));
}

inline SaddleSolution solve_saddle(const WeightModel& m, std::uint64_t n) {
  if (n == 0) throw std::domain_error("solve_saddle: n starts at 1");
  const double nd = static_cast<double>(n);
  const double a = scale_a(m, nd);

  // bracket the root of A(alpha) = n; A is strictly decreasing
  double lo = a / 10.0, hi = a * 10.0;
  for (int i = 0; i < 200 && eval_A(m, lo) < nd; ++i) lo *= 0.5;
  for (int i = 0; i < 200 && eval_A(m, hi) > nd; ++i) hi *= 2.0;
  if (!(eval_A(m, lo) >= nd && eval_A(m, hi) <= nd))
    throw convergence_error("solve_saddle: failed to bracket the saddle point");

  for (int i = 0; i < 90; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (eval_A(m, mid) >= nd) lo = mid;
    else hi = mid;
    if ((hi - lo) < 1e-13 * lo) break;
  }
  double alpha = 0.5 * (lo + hi);
  // Newton polish: d/dalpha A = -B
  for (int i = 0; i < 6; ++i) {
    const double r = eval_A(m, alpha) - nd;
    if (std::abs(r) <= 1e-12 * nd) break;
    alpha += r / eval_B(m, alpha);
  }

  SaddleSolution sol;
  sol.n = n;
  sol.alpha_n = alpha;
  sol.h = meinardus_h(m);
  sol.alpha_expansion = a + m.d0() / ((m.rho() + 1.0) * nd);
  sol.F_value = eval_F(m, alpha);
  sol.B_value = eval_B(m, alpha);
  sol.residual = std::abs(eval_A(m, alpha) - nd) / nd;
  if (!(sol.residual <= 1e-10))
    throw convergence_error("solve_saddle: residual above 1e-10 after Newton polish");
  return sol;
}

// log of the saddle-point count estimate p_b(n) ~ e^{n alpha} f_b(e^{-alpha}) / sqrt(2 pi B)
inline double meinardus_log_estimate(const SaddleSolution& sol) {
  return static_cast<double>(sol.n) * sol.alpha_n + sol.F_value -
         0.5 * std::log(2.0 * sf::pi * sol.B_value);
}

inline double meinardus_log_estimate(const WeightModel& m, std::uint64_t n) {
  return meinardus_log_estimate(solve_saddle(m, n));
}

// Asymptotic form of log f_b(e^{-tau}), tau = alpha + i theta, valid in
// the sector |arg tau| <= pi/4:
//   A Gamma(rho) zeta(rho+1) tau^{-rho} - D(0) log tau + D'(0).
inline std::complex<double> log_gf_asymptotic(const WeightModel& m, double alpha, double theta) {
  if (!(alpha > 0.0)) throw std::domain_error("log_gf_asymptotic: need alpha > 0");
  if (!(std::abs(theta) <= sf::pi)) throw std::domain_error("log_gf_asymptotic: need |theta| <= pi");
  if (std::atan2(std::abs(theta), alpha) > sf::pi / 4.0 + 1e-12)
    throw std::domain_error("log_gf_asymptotic: |arg(alpha + i theta)| must be <= pi/4");
  const std::complex<double> tau(alpha, theta);
  const std::complex<double> ltau = std::log(tau);
  return m.residue() * std::tgamma(m.rho()) * sf::zeta(m.rho() + 1.0) *
             std::exp(-m.rho() * ltau) -
         m.d0() * ltau + m.d0_prime();
}

// f_b(e^{-alpha + i theta}) / f_b(e^{-alpha}) by term-by-term principal
// logs; |x^k| < 1 keeps 1 - x^k in the right half plane, so no branch
// crossings occur.  k_max = 0 means the K(alpha) default.
inline std::complex<double> char_ratio(const WeightModel& m, double alpha, double theta,
                                       std::uint64_t k_max = 0) {
  const std::uint64_t K = (k_max > 0) ? k_max : detail::series_cutoff(m, alpha);
  std::complex<double> s = 0.0;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    const double r = std::exp(-kd * alpha);
    const std::complex<double> xk = std::polar(r, kd * theta);
    s += m.weight_at(k) * (std::log1p(-r) - std::log(1.0 - xk));
  }
  return std::exp(s);
}

// slowly growing cutoff scale used by the locality window
inline double omega_slow(double n) { return std::log(std::log(n + 15.154262241479262)); }

// half-width of the central window: alpha^{1 + rho/3} / omega(n)
inline double locality_delta(const WeightModel& m, double alpha, double n) {
  return std::pow(alpha, 1.0 + m.rho() / 3.0) / omega_slow(n);
}

}  // namespace meinardus
