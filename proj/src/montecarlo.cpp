#include "gbcfb/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "gbcfb/rng.hpp"

namespace gbcfb {

namespace {

constexpr std::uint64_t kChunkBlocks = 1u << 16;

struct Bivar {
  std::uint64_t n = 0;
  double mean_x = 0.0, mean_y = 0.0;
  double m2x = 0.0, m2y = 0.0, cxy = 0.0;

  void add(double x, double y) {
    ++n;
    const double dn = static_cast<double>(n);
    const double dx = x - mean_x;
    mean_x += dx / dn;
    const double dy = y - mean_y;
    mean_y += dy / dn;
    m2x += dx * (x - mean_x);
    m2y += dy * (y - mean_y);
    cxy += dx * (y - mean_y);
  }

  void merge(const Bivar& b) {
    if (b.n == 0) return;
    if (n == 0) { *this = b; return; }
    const double na = static_cast<double>(n), nb = static_cast<double>(b.n);
    const double nt = na + nb;
    const double dx = b.mean_x - mean_x;
    const double dy = b.mean_y - mean_y;
    mean_x += dx * nb / nt;
    mean_y += dy * nb / nt;
    m2x += b.m2x + dx * dx * na * nb / nt;
    m2y += b.m2y + dy * dy * na * nb / nt;
    cxy += b.cxy + dx * dy * na * nb / nt;
    n += b.n;
  }

  double var_x() const { return n > 1 ? m2x / static_cast<double>(n - 1) : 0.0; }

  double corr() const {
    if (!(m2x > 0.0) || !(m2y > 0.0)) return 0.0;
    return cxy / std::sqrt(m2x * m2y);
  }
};

struct Mean {
  std::uint64_t n = 0;
  double value = 0.0;

  void add(double x) {
    ++n;
    value += (x - value) / static_cast<double>(n);
  }

  void merge(const Mean& b) {
    if (b.n == 0) return;
    if (n == 0) { *this = b; return; }
    const double na = static_cast<double>(n), nb = static_cast<double>(b.n);
    value += (b.value - value) * nb / (na + nb);
    n += b.n;
  }
};

struct Accumulators {
  Bivar r1u, r1v, r2v, r2u; // residuals against both codeword symbols
  Mean power_odd, power_even;

  void merge(const Accumulators& b) {
    r1u.merge(b.r1u);
    r1v.merge(b.r1v);
    r2v.merge(b.r2v);
    r2u.merge(b.r2u);
    power_odd.merge(b.power_odd);
    power_even.merge(b.power_even);
  }
};

SimReport run(const ChannelParams& params, const SchemeParams& scheme,
              double alpha, std::uint64_t n_blocks, std::uint64_t seed) {
  const CounterRng rng(seed);

  const double su = std::sqrt(scheme.theta_prime * params.power);
  const double sv = std::sqrt((1.0 - scheme.theta_prime) * params.power);
  const double s1 = std::sqrt(params.sigma1_sq);
  const double s2 = std::sqrt(params.sigma2_sq);
  const bool fb1 = !no_feedback_link(params.sigma_fb1_sq);
  const bool fb2 = !no_feedback_link(params.sigma_fb2_sq);
  const double sfb1 = fb1 ? std::sqrt(params.sigma_fb1_sq) : 0.0;
  const double sfb2 = fb2 ? std::sqrt(params.sigma_fb2_sq) : 0.0;
  const double c1 =
      fb1 ? params.sigma1_sq / (params.sigma1_sq + params.sigma_fb1_sq) : 0.0;
  const double c2 =
      fb2 ? params.sigma2_sq / (params.sigma2_sq + params.sigma_fb2_sq) : 0.0;
  const double g1 = scheme.gamma1;
  const double g2 = scheme.gamma2;
  const double sqrt_alpha = std::sqrt(alpha);

  Accumulators total;
  for (std::uint64_t chunk_start = 0; chunk_start < n_blocks;
       chunk_start += kChunkBlocks) {
    const std::uint64_t chunk_end =
        std::min(n_blocks, chunk_start + kChunkBlocks);
    Accumulators acc;
    for (std::uint64_t i = chunk_start; i < chunk_end; ++i) {
      const double u = su * rng.normal(i, 0);
      const double v = sv * rng.normal(i, 1);
      const double z1_odd = s1 * rng.normal(i, 2);
      const double z2_odd = s2 * rng.normal(i, 3);
      const double hat_z1 = fb1 ? c1 * (z1_odd + sfb1 * rng.normal(i, 4)) : 0.0;
      const double hat_z2 = fb2 ? c2 * (z2_odd + sfb2 * rng.normal(i, 5)) : 0.0;
      const double z1_even = s1 * rng.normal(i, 6);
      const double z2_even = s2 * rng.normal(i, 7);

      const double x_odd = u + v;
      const double x_even = sqrt_alpha * (u - v + g1 * hat_z1 + g2 * hat_z2);

      const double sum1 = (x_odd + z1_odd) + (x_even + z1_even) / sqrt_alpha;
      const double sum2 = (x_odd + z2_odd) - (x_even + z2_even) / sqrt_alpha;
      const double resid1 = sum1 - 2.0 * u;
      const double resid2 = sum2 - 2.0 * v;

      acc.r1u.add(resid1, u);
      acc.r1v.add(resid1, v);
      acc.r2v.add(resid2, v);
      acc.r2u.add(resid2, u);
      acc.power_odd.add(x_odd * x_odd);
      acc.power_even.add(x_even * x_even);
    }
    total.merge(acc);
  }

  SimReport report;
  report.n_blocks = n_blocks;
  report.seed = seed;
  report.emp_var_s1 = total.r1u.var_x();
  report.emp_var_s2 = total.r2v.var_x();
  report.emp_power_odd = total.power_odd.value;
  report.emp_power_even = total.power_even.value;
  report.emp_cross1 = total.r1u.corr();
  report.emp_cross2 = total.r2v.corr();
  report.emp_zf_cross1 = total.r1v.corr();
  report.emp_zf_cross2 = total.r2u.corr();
  return report;
}

} // namespace

SimReport simulate(const ChannelParams& params, const SchemeParams& scheme,
                   std::uint64_t n_blocks, std::uint64_t seed) {
  const DerivedScheme d = derive_scheme(params, scheme);
  if (n_blocks < 1)
    throw Error(Errc::invalid_argument, "simulate requires n_blocks >= 1");
  return run(params, scheme, d.alpha, n_blocks, seed);
}

SimCheck simulate_vs_analytic(const ChannelParams& params,
                              const SchemeParams& scheme,
                              std::uint64_t n_blocks, std::uint64_t seed,
                              double tolerance_sigmas) {
  if (!(tolerance_sigmas > 0.0))
    throw Error(Errc::invalid_argument, "tolerance_sigmas must be positive");
  const DerivedScheme d = derive_scheme(params, scheme);
  const SimReport rep = simulate(params, scheme, n_blocks, seed);

  const double n = static_cast<double>(n_blocks);
  const double var_se_factor = std::sqrt(2.0 / (n - 1.0));
  const double power_se = params.power * std::sqrt(2.0 / n);
  const double corr_se = 1.0 / std::sqrt(n);

  SimCheck check;
  check.report = rep;
  const auto push = [&](const char* name, double emp, double target,
                        double se) {
    const double sigmas = se > 0.0 ? std::abs(emp - target) / se : 0.0;
    check.items.push_back({name, emp, target, se, sigmas});
  };
  push("emp_var_s1", rep.emp_var_s1, d.eff_var1, d.eff_var1 * var_se_factor);
  push("emp_var_s2", rep.emp_var_s2, d.eff_var2, d.eff_var2 * var_se_factor);
  push("emp_power_odd", rep.emp_power_odd, params.power, power_se);
  push("emp_power_even", rep.emp_power_even, params.power, power_se);
  push("emp_cross1", rep.emp_cross1, 0.0, corr_se);
  push("emp_cross2", rep.emp_cross2, 0.0, corr_se);
  push("emp_zf_cross1", rep.emp_zf_cross1, 0.0, corr_se);
  push("emp_zf_cross2", rep.emp_zf_cross2, 0.0, corr_se);

  check.pass = true;
  for (const SimCheckItem& item : check.items)
    if (item.sigmas > tolerance_sigmas) check.pass = false;
  return check;
}

namespace detail {

SimReport simulate_with_alpha(const ChannelParams& params,
                              const SchemeParams& scheme, double alpha,
                              std::uint64_t n_blocks, std::uint64_t seed) {
  validate(params);
  if (!(alpha > 0.0))
    throw Error(Errc::invalid_argument, "alpha must be positive");
  if (n_blocks < 1)
    throw Error(Errc::invalid_argument, "simulate requires n_blocks >= 1");
  return run(params, scheme, alpha, n_blocks, seed);
}

} // namespace detail

} // namespace gbcfb
