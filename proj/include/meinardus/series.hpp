#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "meinardus/errors.hpp"
#include "meinardus/weights.hpp"

// Power-series side of the Euler product: coefficient tables of
// f_{m,b}(x) = prod_{k<=m} (1-x^k)^{-b_k}, exact (big rationals) or in
// log space.  Expansion uses the log-derivative recurrence
//
//   n p(n) = sum_{j=1}^{n} c(j) p(n-j),   c(j) = sum_{d|j, d<=m} d b_d,
//
// with the c(j) filled by a divisor sieve.  Ratios of a truncated to the
// full table give the largest-part distribution exactly.

namespace meinardus {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class CountMode { ExactRational, LogFloat };

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

inline bool has_rational_weights(const WeightModel& m) {
  switch (m.kind()) {
    case WeightKind::Constant:
    case WeightKind::Linear: return true;
    case WeightKind::Power:
    case WeightKind::Table: {
      const double nu = m.rho();
      return nu == std::floor(nu);  // C k^{nu-1} stays rational only for integer nu
    }
  }
  return false;
}

inline Rational rational_weight_at(const WeightModel& m, std::uint64_t k) {
  if (!has_rational_weights(m)) throw std::invalid_argument("exact mode requires rational weights");
  switch (m.kind()) {
    case WeightKind::Constant: return Rational(m.constant_b());
    case WeightKind::Linear: return Rational(k);
    case WeightKind::Power:
    case WeightKind::Table: {
      if (m.kind() == WeightKind::Table && k <= m.table_values().size())
        return Rational(m.table_values()[k - 1]);
      const auto e = static_cast<unsigned>(m.rho()) - 1u;
      return Rational(m.residue()) * Rational(boost::multiprecision::pow(BigInt(k), e));
    }
  }
  throw std::logic_error("rational_weight_at: unreachable");
}

struct SeriesTable {
  CountMode mode = CountMode::LogFloat;
  std::size_t n_max = 0;
  std::optional<std::size_t> trunc_m;  // nullopt: untruncated product
  std::vector<Rational> exact;         // ExactRational mode
  std::vector<double> log_value;       // LogFloat mode, natural logs, -inf for 0

  const Rational& count_exact(std::size_t n) const {
    if (mode != CountMode::ExactRational) throw std::domain_error("count_exact: table is not exact");
    return exact.at(n);
  }

  double log_count(std::size_t n) const {
    if (mode == CountMode::LogFloat) return log_value.at(n);
    const Rational& q = exact.at(n);
    if (q == 0) return neg_inf;
    using BF = boost::multiprecision::cpp_bin_float_100;
    return static_cast<double>(boost::multiprecision::log(static_cast<BF>(q)));
  }
};

namespace detail {

// log-sum-exp accumulator; ignores -inf contributions
class LogSum {
public:
  void add(double t) {
    if (t == neg_inf) return;
    if (t > max_) {
      if (max_ != neg_inf) sum_ = sum_ * std::exp(max_ - t) + 1.0;
      else sum_ = 1.0;
      max_ = t;
    } else {
      sum_ += std::exp(t - max_);
    }
  }
  double value() const { return max_ == neg_inf ? neg_inf : max_ + std::log(sum_); }

private:
  double max_ = neg_inf;
  double sum_ = 0.0;
};

}  // namespace detail

inline SeriesTable expand(const WeightModel& model, std::size_t n_max,
                          std::optional<std::size_t> trunc_m, CountMode mode) {
  SeriesTable t;
  t.mode = mode;
  t.n_max = n_max;
  t.trunc_m = trunc_m;
  const std::size_t m_eff = std::min<std::size_t>(trunc_m.value_or(n_max), n_max);

  if (mode == CountMode::ExactRational) {
    if (!has_rational_weights(model)) throw std::invalid_argument("exact mode requires rational weights");
    std::vector<Rational> c(n_max + 1);
    for (std::size_t d = 1; d <= m_eff; ++d) {
      const Rational db = Rational(d) * rational_weight_at(model, d);
      for (std::size_t j = d; j <= n_max; j += d) c[j] += db;
    }
    t.exact.assign(n_max + 1, Rational(0));
    t.exact[0] = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
      Rational acc = 0;
      for (std::size_t j = 1; j <= n; ++j)
        if (c[j] != 0 && t.exact[n - j] != 0) acc += c[j] * t.exact[n - j];
      t.exact[n] = acc / n;
    }
    return t;
  }

  std::vector<double> c(n_max + 1, 0.0);
  for (std::size_t d = 1; d <= m_eff; ++d) {
    const double db = static_cast<double>(d) * model.weight_at(d);
    if (db == 0.0) continue;
    for (std::size_t j = d; j <= n_max; j += d) c[j] += db;
  }
  std::vector<double> lc(n_max + 1, neg_inf);
  for (std::size_t j = 1; j <= n_max; ++j)
    if (c[j] > 0.0) lc[j] = std::log(c[j]);

  t.log_value.assign(n_max + 1, neg_inf);
  t.log_value[0] = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    detail::LogSum acc;
    for (std::size_t j = 1; j <= n; ++j) {
      if (lc[j] == neg_inf) continue;
      const double lp = t.log_value[n - j];
      if (lp == neg_inf) continue;
      acc.add(lc[j] + lp);
    }
    const double v = acc.value();
    t.log_value[n] = (v == neg_inf) ? neg_inf : v - std::log(static_cast<double>(n));
  }
  return t;
}

// P(X_n <= m) for the largest part X_n of a partition drawn uniformly
// from the weighted ensemble: the coefficient ratio of truncated to full
// product.
inline Rational cdf_exact_rational(const WeightModel& model, std::size_t n, std::size_t m) {
  const SeriesTable den = expand(model, n, std::nullopt, CountMode::ExactRational);
  if (den.count_exact(n) == 0)
    throw std::domain_error("cdf: no partitions of n under this model (zero denominator)");
  const SeriesTable num = expand(model, n, m, CountMode::ExactRational);
  return num.count_exact(n) / den.count_exact(n);
}

inline double cdf_exact(const WeightModel& model, std::size_t n, std::size_t m, CountMode mode) {
  if (mode == CountMode::ExactRational)
    return static_cast<double>(cdf_exact_rational(model, n, m));
  const SeriesTable den = expand(model, n, std::nullopt, CountMode::LogFloat);
  if (den.log_count(n) == neg_inf)
    throw std::domain_error("cdf: no partitions of n under this model (zero denominator)");
  const SeriesTable num = expand(model, n, m, CountMode::LogFloat);
  return std::exp(num.log_count(n) - den.log_count(n));
}

// Distribution of the largest part at fixed n, as successive differences
// of truncation CDFs.  O(n^3); meant for the moderate n where exact
// distributions are actually wanted.
inline std::vector<Rational> pmf_largest_part_exact(const WeightModel& model, std::size_t n) {
  if (n == 0) throw std::domain_error("pmf_largest_part: n starts at 1");
  const SeriesTable den = expand(model, n, std::nullopt, CountMode::ExactRational);
  const Rational total = den.count_exact(n);
  if (total == 0)
    throw std::domain_error("pmf: no partitions of n under this model (zero denominator)");
  std::vector<Rational> pmf(n);
  Rational prev = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    const Rational cur =
        (m == n) ? total : expand(model, n, m, CountMode::ExactRational).count_exact(n);
    pmf[m - 1] = (cur - prev) / total;
    prev = cur;
  }
  return pmf;
}

inline std::vector<double> pmf_largest_part(const WeightModel& model, std::size_t n, CountMode mode) {
  if (mode == CountMode::ExactRational) {
    const auto q = pmf_largest_part_exact(model, n);
    std::vector<double> p(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) p[i] = static_cast<double>(q[i]);
    return p;
  }
  if (n == 0) throw std::domain_error("pmf_largest_part: n starts at 1");
  const SeriesTable den = expand(model, n, std::nullopt, CountMode::LogFloat);
  const double ltotal = den.log_count(n);
  if (ltotal == neg_inf)
    throw std::domain_error("pmf: no partitions of n under this model (zero denominator)");
  std::vector<double> pmf(n);
  double prev = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const double cur =
        (m == n) ? 1.0
                 : std::exp(expand(model, n, m, CountMode::LogFloat).log_count(n) - ltotal);
    pmf[m - 1] = cur - prev;
    prev = cur;
  }
  return pmf;
}

}  // namespace meinardus
