#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "meinardus/errors.hpp"
#include "meinardus/saddle.hpp"
#include "meinardus/special_functions.hpp"
#include "meinardus/weights.hpp"

// Numerical checks of the analytic identities behind the saddle-point
// expansion:
//   * Mellin representation  F_{m,b}(e^{-alpha}) =
//       (1/2 pi i) int_{(rho+Delta)} alpha^{-s} Gamma(s) zeta(s+1) D_m(s) ds
//   * the truncated-series continuation
//       D_m(w+rho-1) = A (m+1)^{1-w}/(1-w) + D(w+rho-1) + Omega_m,
//     with Omega_m -> 0 as the truncation grows
//   * the minor-arc lower bound S(u) = sum_k b_k e^{-k alpha} sin^2(pi k u).

namespace meinardus {

enum class ClosedForm { ZetaShift, None };

struct DirichletSpec {
  WeightModel model;
  ClosedForm closed_form = ClosedForm::None;
};

inline DirichletSpec dirichlet_spec(const WeightModel& m) {
  // the pure power families are exactly shifted zetas; tables are not
  return DirichletSpec{m, m.certified_metadata() ? ClosedForm::ZetaShift : ClosedForm::None};
}

inline sf::cdouble dirichlet_D(const DirichletSpec& spec, sf::cdouble s) {
  const WeightModel& m = spec.model;
  if (spec.closed_form == ClosedForm::ZetaShift) {
    if (std::abs(s - sf::cdouble(m.rho(), 0.0)) < 1e-8)
      throw std::domain_error("dirichlet_D: pole at s = rho");
    return m.residue() * sf::zeta(s - (m.rho() - 1.0));
  }
  // summation route: prefix terms, then the power tail completed by its
  // Hurwitz continuation; kept to the absolute-convergence region
  if (!(s.real() > m.rho() + 0.25))
    throw std::domain_error("dirichlet_D: direct summation needs Re(s) > rho + 0.25");
  const std::uint64_t K = std::max<std::uint64_t>(m.table_values().size(), 64);
  sf::cdouble sum = 0.0;
  for (std::uint64_t k = 1; k <= K; ++k)
    sum += m.weight_at(k) * std::exp(-s * std::log(static_cast<double>(k)));
  sum += m.residue() *
         sf::hurwitz_zeta(s - (m.rho() - 1.0), static_cast<double>(K) + 1.0);
  return sum;
}

// partial sum D_m(s) = sum_{k<=m} b_k k^{-s}
inline sf::cdouble dirichlet_partial(const WeightModel& m, std::uint64_t mcut, sf::cdouble s) {
  sf::cdouble sum = 0.0;
  for (std::uint64_t k = 1; k <= mcut; ++k)
    sum += m.weight_at(k) * std::exp(-s * std::log(static_cast<double>(k)));
  return sum;
}

struct MellinCheck {
  double integral = 0.0;   // quadrature value of the contour integral
  double direct = 0.0;     // F_{m,b}(e^{-alpha}) summed directly
  double abs_diff = 0.0;
  bool converged = false;  // step-halving moved the value by <= 1e-6
};

// Trapezoid quadrature of the Mellin inversion on Re(s) = rho + delta.
// The integrand decays like |Gamma| ~ e^{-pi |Im s| / 2}, so modest
// y_max already puts the tail far below the 1e-6 verification target.
// trunc_m empty means the full product, requiring the ZetaShift form.
inline MellinCheck mellin_F_check(const WeightModel& m, double alpha,
                                  std::optional<std::uint64_t> trunc_m, double delta = 1.5,
                                  double y_max = 60.0, double step = 0.004) {
  if (!(alpha > 0.0)) throw std::domain_error("mellin_F_check: need alpha > 0");
  if (!(delta > 0.0)) throw std::domain_error("mellin_F_check: need delta > 0");
  const DirichletSpec spec = dirichlet_spec(m);
  if (!trunc_m && spec.closed_form != ClosedForm::ZetaShift)
    throw std::domain_error("mellin_F_check: untruncated check needs a closed-form D");

  const double c = m.rho() + delta;
  const double lalpha = std::log(alpha);

  const auto integrand = [&](double y) -> sf::cdouble {
    const sf::cdouble s(c, y);
    const sf::cdouble dm = trunc_m ? dirichlet_partial(m, *trunc_m, s) : dirichlet_D(spec, s);
    return std::exp(-s * lalpha) * sf::gamma(s) * sf::zeta(s + 1.0) * dm;
  };

  const auto quad = [&](double hstep) -> double {
    // conjugate symmetry: sum 2 Re over y > 0 plus the y = 0 node
    const std::size_t J = static_cast<std::size_t>(std::ceil(y_max / hstep));
    double acc = 0.5 * integrand(0.0).real();  // half weight, counted twice below
    for (std::size_t j = 1; j < J; ++j) acc += integrand(hstep * static_cast<double>(j)).real();
    acc += 0.5 * integrand(hstep * static_cast<double>(J)).real();
    return 2.0 * acc * hstep / (2.0 * sf::pi);
  };

  MellinCheck out;
  const double coarse = quad(step);
  const double fine = quad(step / 2.0);
  out.integral = fine;
  out.converged = std::abs(fine - coarse) <= 1e-6;

  if (trunc_m) {
    double F = 0.0;
    const std::uint64_t K = std::min<std::uint64_t>(*trunc_m, detail::series_cutoff(m, alpha));
    for (std::uint64_t k = 1; k <= K; ++k)
      F += -m.weight_at(k) * std::log1p(-std::exp(-static_cast<double>(k) * alpha));
    out.direct = F;
  } else {
    out.direct = eval_F(m, alpha);
  }
  out.abs_diff = std::abs(out.integral - out.direct);
  return out;
}

struct PerronCheck {
  sf::cdouble lhs;    // D_m(w + rho - 1), summed
  sf::cdouble rhs;    // A (m+1)^{1-w}/(1-w) + D(w + rho - 1)
  sf::cdouble omega;  // lhs - rhs, the truncation remainder
  double t_used = 0.0;
  double t_max = 0.0;
};

// admissible contour height for the truncated Perron integral at this m
inline double perron_t_max(const WeightModel& m, std::uint64_t mcut, double delta,
                           double c1 = 1.0) {
  const double md = static_cast<double>(mcut);
  return std::pow(md, (m.c0() + m.rho() + delta) / (c1 + 1.0)) / std::log(md);
}

inline PerronCheck perron_truncation_check(const WeightModel& m, sf::cdouble w,
                                           std::uint64_t mcut, double T) {
  const double delta = w.real() - 1.0;
  if (!(delta > 1.0)) throw std::domain_error("perron_truncation_check: need Re(w) > 2");
  if (mcut < 2) throw std::domain_error("perron_truncation_check: need m >= 2");
  const DirichletSpec spec = dirichlet_spec(m);
  if (spec.closed_form != ClosedForm::ZetaShift)
    throw std::domain_error("perron_truncation_check: needs a closed-form D");
  PerronCheck out;
  out.t_max = perron_t_max(m, mcut, delta);
  out.t_used = T;
  if (!(T > 0.0) || T > out.t_max)
    throw std::domain_error("perron_truncation_check: T outside the admissible regime");

  const sf::cdouble s = w + (m.rho() - 1.0);
  out.lhs = dirichlet_partial(m, mcut, s);
  const double mp1 = static_cast<double>(mcut) + 1.0;
  out.rhs = m.residue() * std::exp((1.0 - w) * std::log(mp1)) / (1.0 - w) +
            dirichlet_D(spec, s);
  out.omega = out.lhs - out.rhs;
  return out;
}

struct M3Check {
  double min_S = 0.0;
  double argmin_u = 0.0;
  double ratio_quarter = 0.0;  // min_S * alpha^{1/4}
  double ratio_half = 0.0;     // min_S * alpha^{1/2}
  double ratio_one = 0.0;      // min_S * alpha
};

// grid minimum of S(u) = sum_k b_k e^{-k alpha} sin^2(pi k u) over the
// minor arcs alpha/(2 pi) < u <= 1/2; growth of min_S as alpha -> 0 is
// the quantitative form of the minor-arc condition
inline M3Check check_m3(const WeightModel& m, double alpha, std::size_t u_grid = 10000) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::domain_error("check_m3: need 0 < alpha < 0.5");
  if (u_grid < 2) throw std::domain_error("check_m3: grid too small");
  const std::uint64_t K = detail::series_cutoff(m, alpha);
  std::vector<double> wgt(K);
  for (std::uint64_t k = 1; k <= K; ++k)
    wgt[k - 1] = m.weight_at(k) * std::exp(-static_cast<double>(k) * alpha);

  const double lo = alpha / (2.0 * sf::pi);
  const double hi = 0.5;
  M3Check out;
  out.min_S = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j <= u_grid; ++j) {
    const double u = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(u_grid);
    double S = 0.0;
    for (std::uint64_t k = 1; k <= K; ++k) {
      const double sn = std::sin(sf::pi * static_cast<double>(k) * u);
      S += wgt[k - 1] * sn * sn;
    }
    if (S < out.min_S) {
      out.min_S = S;
      out.argmin_u = u;
    }
  }
  out.ratio_quarter = out.min_S * std::pow(alpha, 0.25);
  out.ratio_half = out.min_S * std::sqrt(alpha);
  out.ratio_one = out.min_S * alpha;
  return out;
}

}  // namespace meinardus
