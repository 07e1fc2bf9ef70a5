#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include "meinardus/errors.hpp"

// Special functions used by the Dirichlet-series and Mellin machinery:
// Riemann/Hurwitz zeta (Euler-Maclaurin continuation plus the functional
// equation far left of the critical strip), log-gamma for complex
// arguments (Lanczos), and the upper incomplete gamma function
// (series / continued fraction split).  Everything is double precision
// with a ~1e-12 relative accuracy target away from poles.

namespace meinardus::sf {

inline constexpr double pi = 3.141592653589793238462643383279502884;

using cdouble = std::complex<double>;

namespace detail {

// B_{2j} / (2j)!  for j = 1..14.  Enough Euler-Maclaurin correction
// terms to continue zeta(s) down to Re(s) > -27.
inline constexpr std::array<double, 14> bern_over_fact = {
    8.3333333333333333e-02,   // B2/2!
    -1.3888888888888889e-03,  // B4/4!
    3.3068783068783069e-05,   // B6/6!
    -8.2671957671957672e-07,  // B8/8!
    2.0876756987868099e-08,   // B10/10!
    -5.2841901386874932e-10,  // B12/12!
    1.3382536530684679e-11,   // B14/14!
    -3.3896802963225829e-13,  // B16/16!
    8.5860620562778446e-15,   // B18/18!
    -2.1748686985580619e-16,  // B20/20!
    5.5090028283602295e-18,   // B22/22!
    -1.3954464685812522e-19,  // B24/24!
    3.5347070396294675e-21,   // B26/26!
    -8.9535174270375469e-23,  // B28/28!
};

// Godfrey's 15-term Lanczos table, g = 607/128.  Good to ~1e-14 in the
// right half plane for double.
inline constexpr double lanczos_g = 607.0 / 128.0;
inline constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
};

inline cdouble lanczos_lgamma_right(cdouble z) {
  // valid for Re(z) >= 0.5
  cdouble zm1 = z - 1.0;
  cdouble s = lanczos_c[0];
  for (std::size_t i = 1; i < lanczos_c.size(); ++i) s += lanczos_c[i] / (zm1 + static_cast<double>(i));
  cdouble t = zm1 + lanczos_g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (zm1 + 0.5) * std::log(t) - t + std::log(s);
}

}  // namespace detail

// log Gamma(z), principal branch of the Lanczos form.  Reflection is used
// for Re(z) < 0.5; intended for moderate |Im z| there (our continuation
// calls sit near the real axis).
inline cdouble log_gamma(cdouble z) {
  if (z.real() >= 0.5) return detail::lanczos_lgamma_right(z);
  // Gamma(z) Gamma(1-z) = pi / sin(pi z)
  cdouble sz = std::sin(pi * z);
  if (std::abs(sz) == 0.0) throw std::domain_error("log_gamma: pole at non-positive integer");
  return std::log(pi / sz) - detail::lanczos_lgamma_right(1.0 - z);
}

inline cdouble gamma(cdouble z) { return std::exp(log_gamma(z)); }

// Hurwitz zeta(s, a) by Euler-Maclaurin.  Continues to Re(s) > -27 with
// the correction terms above; N scales with |Im s| so the tail stays
// geometric on vertical lines.
inline cdouble hurwitz_zeta(cdouble s, double a) {
  if (!(a > 0.0)) throw std::domain_error("hurwitz_zeta: need a > 0");
  if (std::abs(s - 1.0) < 1e-8) throw std::domain_error("hurwitz_zeta: pole at s = 1");
  if (s.real() < -26.0) throw std::domain_error("hurwitz_zeta: Re(s) below continuation range");

  const std::size_t N = static_cast<std::size_t>(std::max(18.0, 1.3 * std::abs(s.imag()) + 12.0));
  cdouble sum = 0.0;
  for (std::size_t k = 0; k < N; ++k) sum += std::exp(-s * std::log(a + static_cast<double>(k)));

  const double w = a + static_cast<double>(N);
  const cdouble lw = std::log(w);
  sum += std::exp((1.0 - s) * lw) / (s - 1.0);
  const cdouble wms = std::exp(-s * lw);  // w^{-s}
  sum += 0.5 * wms;

  // sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * w^{-s-2j+1}
  cdouble poch = s;          // s ... (s+2j-2), built incrementally
  cdouble wpow = wms * w;    // w^{-s-2j+1}, starts at w^{-s+1}... then /w^2 steps
  for (std::size_t j = 1; j <= detail::bern_over_fact.size(); ++j) {
    wpow /= w * w;  // now w^{-s-2j+1}
    sum += detail::bern_over_fact[j - 1] * poch * wpow;
    poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
  }
  return sum;
}

// Riemann zeta.  Euler-Maclaurin near and right of the critical strip;
// the functional equation handles the far left, where the direct
// continuation would need ever more correction terms.
inline cdouble zeta(cdouble s) {
  if (std::abs(s - 1.0) < 1e-8) throw std::domain_error("zeta: pole at s = 1");
  if (s.real() >= -0.5 || std::abs(s) <= 1.5) return hurwitz_zeta(s, 1.0);
  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  cdouble chi = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(pi)) * std::sin(0.5 * pi * s) *
                gamma(1.0 - s);
  return chi * hurwitz_zeta(1.0 - s, 1.0);
}

inline double zeta(double s) { return zeta(cdouble(s, 0.0)).real(); }
inline double hurwitz_zeta(double s, double a) { return hurwitz_zeta(cdouble(s, 0.0), a).real(); }

// zeta'(s) for real s via a complex step: zeta is real on the real axis,
// so Im zeta(s + ih)/h recovers the derivative with no subtractive
// cancellation.  h is far below any scale in the evaluation, making the
// O(h^2) truncation error invisible at double precision.
inline double zeta_deriv(double s) {
  const double h = 1e-40;
  return zeta(cdouble(s, h)).imag() / h;
}

// Upper incomplete gamma Gamma(rho, u), non-normalized, for rho > 0 and
// u > 0.  Series for the lower function below the u = rho + 1 split,
// modified Lentz continued fraction above it.
inline double upper_incomplete_gamma(double rho, double u) {
  if (!(rho > 0.0)) throw std::domain_error("upper_incomplete_gamma: need rho > 0");
  if (!(u > 0.0)) throw std::domain_error("upper_incomplete_gamma: need u > 0");
  const double lg = std::lgamma(rho);
  if (u < rho + 1.0) {
    // gamma(rho, u) = u^rho e^{-u} sum_n u^n / (rho (rho+1) ... (rho+n))
    double ap = rho;
    double term = 1.0 / rho;
    double sum = term;
    for (int i = 0; i < 10000; ++i) {
      ap += 1.0;
      term *= u / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-17)
        return std::exp(lg) - std::exp(-u + rho * std::log(u)) * sum;
    }
    throw convergence_error("upper_incomplete_gamma: series did not converge");
  }
  // Lentz on Gamma(rho, u) = e^{-u} u^rho / (u+1-rho - 1(1-rho)/(u+3-rho - ...))
  const double tiny = 1e-300;
  double b = u + 1.0 - rho;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - rho);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return std::exp(-u + rho * std::log(u)) * h;
  }
  throw convergence_error("upper_incomplete_gamma: continued fraction did not converge");
}

// ---- small statistics helpers shared by the samplers and their tests ----

// Kolmogorov distribution survival Q(x) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 x^2}.
inline double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.18) return 1.0;  // series is slow and the answer is 1 to double accuracy
  double q = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    q += (j % 2 == 1) ? 2.0 * term : -2.0 * term;
    if (term < 1e-18) break;
  }
  return std::min(1.0, std::max(0.0, q));
}

// One-sample KS critical distance at significance level alpha (asymptotic):
// D_crit = sqrt(-log(alpha/2) / 2) / sqrt(n).
inline double ks_critical_value(std::size_t n, double alpha) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

// Chi-square survival P(X > x) with df degrees of freedom.
inline double chi_square_survival(double x, double df) {
  if (x <= 0.0) return 1.0;
  return upper_incomplete_gamma(df / 2.0, x / 2.0) / std::exp(std::lgamma(df / 2.0));
}

}  // namespace meinardus::sf
