#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "meinardus/errors.hpp"
#include "meinardus/special_functions.hpp"

// Weight models b_k for the Euler products f_b(x) = prod_k (1-x^k)^{-b_k}.
// Each model carries the analytic metadata of its Dirichlet series
// D(s) = sum_k b_k k^{-s}: the rightmost pole rho, its residue A, the
// continuation values D(0) and D'(0), and the strip-width parameter c0
// used when reporting expansion errors.
//
// Built-in families:
//   constant b  : D(s) = b zeta(s),        rho = 1,  A = b
//   linear      : D(s) = zeta(s-1),        rho = 2,  A = 1
//   power C,nu  : b_k = C k^{nu-1},        rho = nu, A = C
//   table+tail  : finite prefix, then a power tail; the continuation is
//                 the finite Dirichlet polynomial correction plus the
//                 shifted zeta of the tail.

namespace meinardus {

enum class WeightKind { Constant, Linear, Power, Table };

struct PowerTail {
  double C = 0.0;
  double nu = 0.0;
};

class WeightModel {
public:
  static WeightModel constant(double b) {
    if (!(b > 0.0)) throw std::invalid_argument("weight model: constant b must be > 0");
    WeightModel m;
    m.kind_ = WeightKind::Constant;
    m.C_ = b;
    m.nu_ = 1.0;
    m.finish();
    return m;
  }

  static WeightModel linear() {
    WeightModel m;
    m.kind_ = WeightKind::Linear;
    m.C_ = 1.0;
    m.nu_ = 2.0;
    m.finish();
    return m;
  }

  static WeightModel power(double C, double nu) {
    if (!(C > 0.0) || !(nu > 0.0)) throw std::invalid_argument("weight model: power needs C > 0, nu > 0");
    WeightModel m;
    m.kind_ = WeightKind::Power;
    m.C_ = C;
    m.nu_ = nu;
    m.finish();
    return m;
  }

  // A finite table of weights for k = 1..values.size(), then the power
  // tail C k^{nu-1}.  The tail is mandatory: without it the Dirichlet
  // series has no pole data and none of the asymptotics downstream are
  // defined.
  static WeightModel table(std::vector<double> values, PowerTail tail) {
    if (values.empty()) throw std::invalid_argument("weight model: table needs at least one value");
    if (!(tail.C > 0.0) || !(tail.nu > 0.0))
      throw std::invalid_argument("weight model: table tail must have C > 0, nu > 0 (zero tail unsupported)");
    for (double v : values)
      if (!(v >= 0.0)) throw std::invalid_argument("weight model: table weights must be >= 0");
    WeightModel m;
    m.kind_ = WeightKind::Table;
    m.C_ = tail.C;
    m.nu_ = tail.nu;
    m.values_ = std::move(values);
    m.check_support_lattice();
    m.finish();
    return m;
  }

  WeightKind kind() const { return kind_; }
  double rho() const { return nu_; }
  double residue() const { return C_; }  // A, the residue of D at s = rho
  double d0() const { return d0_; }
  double d0_prime() const { return d0p_; }
  double c0() const { return c0_; }
  const std::vector<double>& table_values() const { return values_; }
  PowerTail tail() const { return {C_, nu_}; }
  double constant_b() const { return C_; }

  // Only the built-in families carry certified pole/continuation
  // metadata; user tables get the same machinery with a warning flag.
  bool certified_metadata() const { return kind_ != WeightKind::Table; }

  WeightModel with_c0(double c0) const {
    if (!(c0 > 0.0)) throw std::invalid_argument("weight model: c0 must be > 0");
    WeightModel m = *this;
    m.c0_ = c0;
    return m;
  }

  double weight_at(std::uint64_t k) const {
    if (k == 0) throw std::domain_error("weight_at: k starts at 1");
    switch (kind_) {
      case WeightKind::Constant: return C_;
      case WeightKind::Linear: return static_cast<double>(k);
      case WeightKind::Power: return C_ * std::pow(static_cast<double>(k), nu_ - 1.0);
      case WeightKind::Table:
        if (k <= values_.size()) return values_[k - 1];
        return C_ * std::pow(static_cast<double>(k), nu_ - 1.0);
    }
    throw std::logic_error("weight_at: unreachable");
  }

  double operator()(std::uint64_t k) const { return weight_at(k); }

  // D(s) through its continuation: shifted zeta for the power families;
  // for tables, the finite correction polynomial plus the tail's zeta.
  sf::cdouble dirichlet_continuation(sf::cdouble s) const {
    sf::cdouble val = C_ * sf::zeta(s - (nu_ - 1.0));
    if (kind_ == WeightKind::Table) {
      for (std::size_t i = 0; i < values_.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        const double corr = values_[i] - C_ * std::pow(k, nu_ - 1.0);
        val += corr * std::exp(-s * std::log(k));
      }
    }
    return val;
  }

  bool operator==(const WeightModel& o) const {
    return kind_ == o.kind_ && C_ == o.C_ && nu_ == o.nu_ && values_ == o.values_ && c0_ == o.c0_;
  }

private:
  WeightModel() = default;

  void check_support_lattice() {
    // Partitions live on the lattice generated by the support of b.  A
    // support with gcd g > 1 only ever hits multiples of g; we reject
    // that rather than silently producing zero counts.  With a positive
    // power tail the support contains consecutive integers, so this can
    // only fire for degenerate inputs.
    std::uint64_t g = 0;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] > 0.0) g = std::gcd(g, static_cast<std::uint64_t>(i + 1));
    g = std::gcd(g, static_cast<std::uint64_t>(values_.size() + 1));
    g = std::gcd(g, static_cast<std::uint64_t>(values_.size() + 2));
    if (g > 1) throw std::invalid_argument("weight model: shifted lattice unsupported (support gcd > 1)");
  }

  void finish() {
    const sf::cdouble at0 = dirichlet_continuation(sf::cdouble(0.0, 0.0));
    d0_ = at0.real();
    // complex step through the whole continuation; it is real-analytic
    // on the real axis, so the imaginary part carries the derivative.
    const double h = 1e-40;
    d0p_ = dirichlet_continuation(sf::cdouble(0.0, h)).imag() / h;
  }

  WeightKind kind_ = WeightKind::Constant;
  double C_ = 1.0;   // A for power-type; tail C for tables; b for constant
  double nu_ = 1.0;  // rho
  std::vector<double> values_;
  double c0_ = 0.5;
  double d0_ = 0.0;
  double d0p_ = 0.0;
};

inline double weight_at(const WeightModel& m, std::uint64_t k) { return m.weight_at(k); }

// sum of d * b_d over divisors d of n; these are the log-derivative
// coefficients of the Euler product.
inline double divisor_weight_sum(const WeightModel& m, std::uint64_t n) {
  if (n == 0) throw std::domain_error("divisor_weight_sum: n starts at 1");
  double s = 0.0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    s += static_cast<double>(d) * m.weight_at(d);
    const std::uint64_t e = n / d;
    if (e != d) s += static_cast<double>(e) * m.weight_at(e);
  }
  return s;
}

// L_k = (1/k) sum_{j<=k} j^{1-rho} b_j - A.  The sequence reconstructs
// the weights through
//   b_k = (L_k - L_{k-1}) k^rho + (A + L_{k-1}) k^{rho-1},
// and L_k -> 0 exactly when the weights have the declared power
// density; the rate of decay is what the strip parameter c0 describes.
inline std::vector<double> l_sequence(const WeightModel& m, std::size_t k_max) {
  std::vector<double> L(k_max);
  const double rho = m.rho();
  double prefix = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    prefix += std::pow(static_cast<double>(k), 1.0 - rho) * m.weight_at(k);
    L[k - 1] = prefix / static_cast<double>(k) - m.residue();
  }
  return L;
}

// Cesaro mean of k^{1-rho} b_k / A; tends to 1 for admissible weights.
inline double partial_sum_check(const WeightModel& m, std::uint64_t n) {
  if (n == 0) throw std::domain_error("partial_sum_check: n starts at 1");
  double prefix = 0.0;
  const double rho = m.rho();
  for (std::uint64_t k = 1; k <= n; ++k)
    prefix += std::pow(static_cast<double>(k), 1.0 - rho) * m.weight_at(k);
  return prefix / (static_cast<double>(n) * m.residue());
}

}  // namespace meinardus
