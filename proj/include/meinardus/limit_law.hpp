#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "meinardus/errors.hpp"
#include "meinardus/saddle.hpp"
#include "meinardus/series.hpp"
#include "meinardus/weights.hpp"

// Gumbel limit of the largest part X_n.  With s_n the saddle scale
// (alpha_n, or its leading form a(n)),
//
//   P(s_n X_n - c_n <= t) -> exp(-e^{-t}),
//   c_n = -rho log s_n + (rho-1) log|log s_n| + (rho-1) log rho + log A,
//
// together with the closed-form finite-n approximation
//   P(X_n <= m) ~ exp(-A alpha_n^{-1} m^{rho-1} e^{-m alpha_n})
// and the cruder truncation ratio exp(F_m - F) at the saddle.

namespace meinardus {

enum class Normalization { ViaAlphaN, ViaAOfN };

inline double gumbel_cdf(double t) { return std::exp(-std::exp(-t)); }

inline double normalizer_a(const WeightModel& m, std::uint64_t n) {
  return scale_a(m, static_cast<double>(n));
}

namespace detail {

inline double norm_scale(const WeightModel& m, std::uint64_t n, Normalization norm) {
  return norm == Normalization::ViaAlphaN ? solve_saddle(m, n).alpha_n
                                          : normalizer_a(m, n);
}

inline double center_from_scale(const WeightModel& m, double s) {
  if (!(s > 0.0 && s < std::exp(-1.0)))
    throw std::domain_error("gumbel centering: saddle scale must lie below 1/e (n too small)");
  const double rho = m.rho();
  return -rho * std::log(s) + (rho - 1.0) * std::log(-std::log(s)) + (rho - 1.0) * std::log(rho) +
         std::log(m.residue());
}

inline std::uint64_t quantile_from_scale(const WeightModel& m, double s, double t) {
  const double x = (center_from_scale(m, s) + t) / s;
  if (!(x >= 0.5)) throw std::domain_error("quantile_m: level maps below m = 1");
  return static_cast<std::uint64_t>(std::llround(x));
}

}  // namespace detail

inline double gumbel_center(const WeightModel& m, std::uint64_t n,
                            Normalization norm = Normalization::ViaAlphaN) {
  return detail::center_from_scale(m, detail::norm_scale(m, n, norm));
}

// integer level whose truncation CDF sits at Gumbel level t
inline std::uint64_t quantile_m(const WeightModel& m, std::uint64_t n, double t,
                                Normalization norm = Normalization::ViaAlphaN) {
  return detail::quantile_from_scale(m, detail::norm_scale(m, n, norm), t);
}

inline double closed_form_cdf_at(const WeightModel& m, double alpha, double mval) {
  return std::exp(-m.residue() / alpha * std::pow(mval, m.rho() - 1.0) * std::exp(-mval * alpha));
}

inline double closed_form_cdf(const WeightModel& m, std::uint64_t n, std::uint64_t mpart) {
  return closed_form_cdf_at(m, solve_saddle(m, n).alpha_n, static_cast<double>(mpart));
}

inline double saddle_cdf_approx_at(const WeightModel& m, double alpha, std::uint64_t mpart) {
  // exp(F_{m,b} - F_b) at the saddle: minus the tail of the F series
  const std::uint64_t K = detail::series_cutoff(m, alpha);
  double tail = 0.0;
  for (std::uint64_t k = mpart + 1; k <= K; ++k)
    tail += -m.weight_at(k) * std::log1p(-std::exp(-static_cast<double>(k) * alpha));
  return std::exp(-tail);
}

inline double saddle_cdf_approx(const WeightModel& m, std::uint64_t n, std::uint64_t mpart) {
  return saddle_cdf_approx_at(m, solve_saddle(m, n).alpha_n, mpart);
}

struct GumbelRow {
  double t = 0.0;
  std::uint64_t m = 0;
  double exact_cdf = 0.0;
  double closed_form_cdf = 0.0;
  double gumbel_cdf = 0.0;
};

struct GumbelDiagnostic {
  std::uint64_t n = 0;
  Normalization normalization = Normalization::ViaAlphaN;
  std::vector<GumbelRow> grid;
  double sup_error = 0.0;  // sup_t |exact - gumbel|
};

// exact finite-n largest-part law against its Gumbel limit on a t-grid
inline GumbelDiagnostic diagnostic(const WeightModel& model, std::uint64_t n,
                                   const std::vector<double>& t_grid,
                                   Normalization norm = Normalization::ViaAlphaN,
                                   CountMode mode = CountMode::LogFloat) {
  GumbelDiagnostic d;
  d.n = n;
  d.normalization = norm;

  const SaddleSolution sol = solve_saddle(model, n);
  const double s = (norm == Normalization::ViaAlphaN) ? sol.alpha_n
                                                      : normalizer_a(model, n);

  const SeriesTable den = expand(model, n, std::nullopt, mode);
  const double lden = den.log_count(n);
  if (lden == neg_inf)
    throw std::domain_error("diagnostic: no partitions of n under this model (zero denominator)");

  std::map<std::uint64_t, double> cdf_cache;
  for (double t : t_grid) {
    GumbelRow row;
    row.t = t;
    row.m = detail::quantile_from_scale(model, s, t);
    const std::uint64_t m_eff = std::min<std::uint64_t>(row.m, n);
    auto it = cdf_cache.find(m_eff);
    if (it == cdf_cache.end()) {
      const SeriesTable num = expand(model, n, m_eff, mode);
      it = cdf_cache.emplace(m_eff, std::exp(num.log_count(n) - lden)).first;
    }
    row.exact_cdf = it->second;
    row.closed_form_cdf = closed_form_cdf_at(model, sol.alpha_n, static_cast<double>(row.m));
    row.gumbel_cdf = gumbel_cdf(t);
    d.sup_error = std::max(d.sup_error, std::abs(row.exact_cdf - row.gumbel_cdf));
    d.grid.push_back(row);
  }
  return d;
}

}  // namespace meinardus
