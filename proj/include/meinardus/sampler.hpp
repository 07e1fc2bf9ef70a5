#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "meinardus/errors.hpp"
#include "meinardus/saddle.hpp"
#include "meinardus/series.hpp"
#include "meinardus/special_functions.hpp"
#include "meinardus/weights.hpp"

// Sampling from the product measure mu_v: independent multiplicities
//   P(r_k = j) = C(b_k + j - 1, j) v^{kj} (1 - v^k)^{b_k},
// i.e. negative binomial NB(b_k, v^k); non-integer b_k goes through the
// gamma-Poisson mixture.  Conditioned on total = n the law is the
// uniform weighted-partition distribution for every v, so rejection at
// the tilt v = e^{-alpha_n} gives exact uniform samples with ~sqrt(2 pi B)
// expected tries.

namespace meinardus {

struct PartitionSample {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> multiplicities;  // (k, r_k), r_k > 0
  std::uint64_t total = 0;
  std::uint64_t largest_part = 0;
};

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// one generator per (seed, stream); streams decorrelate via splitmix
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t x = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(x)), static_cast<std::uint32_t>(splitmix64(x)),
                    static_cast<std::uint32_t>(splitmix64(x)), static_cast<std::uint32_t>(splitmix64(x)),
                    static_cast<std::uint32_t>(splitmix64(x)), static_cast<std::uint32_t>(splitmix64(x))};
  return std::mt19937_64(seq);
}

namespace detail {

// r_k ~ NB(b, v^k) for one k.  p = 1 - v^k may round to 1 when v^k
// underflows double; the draw is then 0 with certainty.
inline std::uint64_t draw_multiplicity(double b, double p, std::mt19937_64& rng) {
  if (b <= 0.0) return 0;
  if (p >= 1.0) return 0;
  if (b == std::floor(b)) {
    if (b == 1.0) return std::geometric_distribution<std::uint64_t>(p)(rng);
    return std::negative_binomial_distribution<std::uint64_t>(
        static_cast<std::uint64_t>(b), p)(rng);
  }
  const double vk = 1.0 - p;
  const double lambda = std::gamma_distribution<double>(b, vk / p)(rng);
  if (!(lambda > 0.0)) return 0;
  return std::poisson_distribution<std::uint64_t>(lambda)(rng);
}

}  // namespace detail

// Tail mass bound sum_{k > K} b_k v^k via the geometric-ratio envelope of
// the power tail; valid once the envelope ratio drops below 1.
inline double mu_v_tail_bound(const WeightModel& m, double v, std::uint64_t k_cut) {
  const double lv = std::log(v);
  const double k1 = static_cast<double>(k_cut + 1);
  const double t1 = m.weight_at(k_cut + 1) * std::exp(k1 * lv);
  const double grow = std::max(m.rho() - 1.0, 0.0);
  const double q = v * std::pow((k1 + 1.0) / k1, grow);
  if (!(q < 1.0)) return std::numeric_limits<double>::infinity();
  return t1 / (1.0 - q);
}

inline std::uint64_t default_k_cut(const WeightModel& m, double v) {
  if (!(v > 0.0 && v < 1.0)) throw std::domain_error("mu_v sampling: need 0 < v < 1");
  std::uint64_t k = std::max<std::uint64_t>(
      m.table_values().size(),
      static_cast<std::uint64_t>(std::ceil((m.rho() + 30.0) / -std::log(v))));
  for (int i = 0; i < 200; ++i) {
    if (mu_v_tail_bound(m, v, k) < 1e-12) return k;
    k = k * 2 + 8;
  }
  throw convergence_error("default_k_cut: no admissible cutoff found");
}

inline PartitionSample sample_mu_v(const WeightModel& m, double v, std::uint64_t k_cut,
                                   std::mt19937_64& rng) {
  if (!(v > 0.0 && v < 1.0)) throw std::domain_error("sample_mu_v: need 0 < v < 1");
  if (!(mu_v_tail_bound(m, v, k_cut) < 1e-12))
    throw std::domain_error("sample_mu_v: k_cut leaves tail mass above 1e-12");
  PartitionSample s;
  const double lv = std::log(v);
  for (std::uint64_t k = 1; k <= k_cut; ++k) {
    const double p = -std::expm1(static_cast<double>(k) * lv);  // 1 - v^k
    const std::uint64_t r = detail::draw_multiplicity(m.weight_at(k), p, rng);
    if (r > 0) {
      s.multiplicities.emplace_back(k, r);
      s.total += k * r;
      s.largest_part = k;
    }
  }
  return s;
}

inline PartitionSample sample_mu_v(const WeightModel& m, double v, std::uint64_t k_cut,
                                   std::uint64_t seed) {
  auto rng = make_rng(seed);
  return sample_mu_v(m, v, k_cut, rng);
}

// Exact uniform sampler over weighted partitions of n.  Multiplicities
// beyond n cannot appear in an accepted sample, so the product measure
// is truncated at k = n without touching the conditional law.
class UniformSampler {
public:
  UniformSampler(const WeightModel& m, std::uint64_t n, double v_override = 0.0)
      : model_(m), n_(n) {
    if (n == 0) throw std::domain_error("uniform sampler: n starts at 1");
    v_ = (v_override > 0.0) ? v_override : std::exp(-solve_saddle(m, n).alpha_n);
    if (!(v_ > 0.0 && v_ < 1.0)) throw std::domain_error("uniform sampler: need 0 < v < 1");
    const double lv = std::log(v_);
    p_.resize(n);
    b_.resize(n);
    for (std::uint64_t k = 1; k <= n; ++k) {
      p_[k - 1] = -std::expm1(static_cast<double>(k) * lv);
      b_[k - 1] = m.weight_at(k);
    }
  }

  double v() const { return v_; }

  // draws until the total hits n; throws after max_tries rejections
  PartitionSample draw(std::mt19937_64& rng, std::uint64_t max_tries,
                       std::uint64_t* tries_out = nullptr) const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> scratch;
    for (std::uint64_t attempt = 1; attempt <= max_tries; ++attempt) {
      scratch.clear();
      std::uint64_t total = 0;
      for (std::uint64_t k = 1; k <= n_; ++k) {
        const std::uint64_t r = detail::draw_multiplicity(b_[k - 1], p_[k - 1], rng);
        if (r == 0) continue;
        total += k * r;
        if (total > n_) break;  // rejected whatever the remaining draws are
        scratch.emplace_back(k, r);
      }
      if (total != n_) continue;
      PartitionSample s;
      s.multiplicities = scratch;
      s.total = total;
      s.largest_part = scratch.empty() ? 0 : scratch.back().first;
      if (tries_out) *tries_out = attempt;
      return s;
    }
    throw convergence_error("sample_uniform: no acceptance after " + std::to_string(max_tries) +
                            " tries");
  }

private:
  WeightModel model_;
  std::uint64_t n_;
  double v_ = 0.0;
  std::vector<double> p_;  // 1 - v^k
  std::vector<double> b_;
};

inline PartitionSample sample_uniform(const WeightModel& m, std::uint64_t n, std::uint64_t seed,
                                      std::uint64_t max_tries = 1000000) {
  UniformSampler s(m, n);
  auto rng = make_rng(seed);
  return s.draw(rng, max_tries);
}

struct EmpiricalLargestPart {
  std::vector<std::uint64_t> freq;  // freq[m-1] counts samples with largest part m
  std::uint64_t samples = 0;
  double ks = 0.0;          // sup_m |empirical cdf - exact cdf|
  double tries_mean = 0.0;  // rejection cost per accepted sample
};

inline EmpiricalLargestPart empirical_largest_part(const WeightModel& m, std::uint64_t n,
                                                   std::uint64_t samples, std::uint64_t seed,
                                                   std::uint64_t max_tries = 1000000) {
  UniformSampler sampler(m, n);
  auto rng = make_rng(seed);
  EmpiricalLargestPart e;
  e.freq.assign(n, 0);
  e.samples = samples;
  std::uint64_t total_tries = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::uint64_t tries = 0;
    const PartitionSample s = sampler.draw(rng, max_tries, &tries);
    total_tries += tries;
    // largest_part >= 1 whenever n >= 1
    e.freq[s.largest_part - 1] += 1;
  }
  e.tries_mean = static_cast<double>(total_tries) / static_cast<double>(samples);

  const std::vector<double> pmf = pmf_largest_part(m, n, CountMode::LogFloat);
  double ecdf = 0.0, cdf = 0.0, ks = 0.0;
  for (std::uint64_t mm = 1; mm <= n; ++mm) {
    ecdf += static_cast<double>(e.freq[mm - 1]) / static_cast<double>(samples);
    cdf += pmf[mm - 1];
    ks = std::max(ks, std::abs(ecdf - cdf));
  }
  e.ks = ks;
  return e;
}

// two-sample KS p-value from largest-part frequency tables (asymptotic
// Kolmogorov formula; conservative for discrete data)
inline double two_sample_ks_pvalue(const std::vector<std::uint64_t>& f1,
                                   const std::vector<std::uint64_t>& f2) {
  std::uint64_t n1 = 0, n2 = 0;
  for (auto c : f1) n1 += c;
  for (auto c : f2) n2 += c;
  if (n1 == 0 || n2 == 0) throw std::domain_error("two_sample_ks: empty sample");
  const std::size_t len = std::max(f1.size(), f2.size());
  double c1 = 0.0, c2 = 0.0, d = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    if (i < f1.size()) c1 += static_cast<double>(f1[i]) / static_cast<double>(n1);
    if (i < f2.size()) c2 += static_cast<double>(f2[i]) / static_cast<double>(n2);
    d = std::max(d, std::abs(c1 - c2));
  }
  const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                    static_cast<double>(n1 + n2);
  return sf::kolmogorov_survival(std::sqrt(ne) * d);
}

}  // namespace meinardus
