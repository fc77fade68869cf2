#include "gbcfb/zf_scheme.hpp"

#include <cmath>

namespace gbcfb {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;

void validate_scheme(const SchemeParams& scheme) {
  if (!(scheme.theta_prime >= 0.0 && scheme.theta_prime <= 1.0))
    throw Error(Errc::theta_out_of_range, "theta_prime must lie in [0,1]");
  if (!std::isfinite(scheme.gamma1) || !std::isfinite(scheme.gamma2))
    throw Error(Errc::invalid_argument, "gamma1 and gamma2 must be finite");
}

} // namespace

double mmse_variance(double sigma_sq, double sigma_fb_sq) {
  if (!(sigma_sq > 0.0))
    throw Error(Errc::non_positive_variance, "sigma_sq must be positive");
  if (no_feedback_link(sigma_fb_sq)) return 0.0;
  return sigma_sq * sigma_sq / (sigma_sq + sigma_fb_sq);
}

DerivedScheme derive_scheme(const ChannelParams& params,
                            const SchemeParams& scheme) {
  validate(params);
  validate_scheme(scheme);

  const double hs1 = mmse_variance(params.sigma1_sq, params.sigma_fb1_sq);
  const double hs2 = mmse_variance(params.sigma2_sq, params.sigma_fb2_sq);
  const double g1 = scheme.gamma1;
  const double g2 = scheme.gamma2;
  const double p = params.power;

  const double inv_alpha = 1.0 + g1 * g1 * hs1 / p + g2 * g2 * hs2 / p;
  const double eff_var1 =
      params.sigma1_sq * (1.0 + inv_alpha) + (g1 * g1 + 2.0 * g1) * hs1 +
      g2 * g2 * hs2;
  const double eff_var2 =
      params.sigma2_sq * (1.0 + inv_alpha) + (g2 * g2 - 2.0 * g2) * hs2 +
      g1 * g1 * hs1;

  return {1.0 / inv_alpha, hs1,      hs2,
          g1 * hs1 / params.sigma1_sq, g2 * hs2 / params.sigma2_sq,
          eff_var1, eff_var2};
}

RatePair scheme_rates(const ChannelParams& params, const SchemeParams& scheme) {
  const DerivedScheme d = derive_scheme(params, scheme);
  if (!(d.eff_var1 > 0.0) || !(d.eff_var2 > 0.0))
    throw Error(Errc::negative_effective_variance,
                "effective noise variance must be positive");
  const double p = params.power;
  const double r1 =
      0.25 * std::log1p(4.0 * scheme.theta_prime * p / d.eff_var1) / kLn2;
  const double r2 =
      0.25 * std::log1p(4.0 * (1.0 - scheme.theta_prime) * p / d.eff_var2) /
      kLn2;
  return {r1, r2};
}

RatePair bootstrap_rates(const ChannelParams& params, double epsilon,
                         const SchemeParams& scheme) {
  validate(params);
  if (!(epsilon > 0.0 && epsilon <= params.power))
    throw Error(Errc::epsilon_out_of_range, "epsilon must lie in (0, P]");
  ChannelParams inner = params;
  inner.power = epsilon;
  RatePair rates = scheme_rates(inner, scheme);
  rates.r2 += 0.5 *
              std::log1p((params.power - epsilon) /
                         (epsilon + params.sigma2_sq)) /
              kLn2;
  return rates;
}

} // namespace gbcfb
