#pragma once

#include "gbcfb/model.hpp"

namespace gbcfb {

/// Variance of the MMSE estimate of a forward noise sample from its noisy
/// feedback observation: sigma^4/(sigma^2 + sigma_fb^2). Degenerates to 0
/// for an absent link (fb = +inf) and to sigma^2 for perfect feedback.
double mmse_variance(double sigma_sq, double sigma_fb_sq);

/// Quantities derived from (params, scheme): the even-slot power scaling
/// alpha that restores the average power constraint, the MMSE estimate
/// variances, the raw combining weights beta_j = gamma_j*hat_sigma_j^2 /
/// sigma_j^2, and the effective noise variances seen after zero-forcing:
///   eff_var1 = sigma1_sq*(1 + 1/alpha) + (g1^2 + 2 g1)*hs1 + g2^2*hs2
///   eff_var2 = sigma2_sq*(1 + 1/alpha) + (g2^2 - 2 g2)*hs2 + g1^2*hs1
struct DerivedScheme {
  double alpha;
  double hat_sigma1_sq;
  double hat_sigma2_sq;
  double beta1;
  double beta2;
  double eff_var1;
  double eff_var2;
};

DerivedScheme derive_scheme(const ChannelParams& params,
                            const SchemeParams& scheme);

/// Achievable rates of the two-phase zero-forcing scheme, per equivalent
/// point-to-point channel over two slots:
///   r1 = 1/4 log2(1 + 4*theta'*P / eff_var1)
///   r2 = 1/4 log2(1 + 4*(1-theta')*P / eff_var2)
/// Throws NegativeEffectiveVariance if either denominator is nonpositive.
RatePair scheme_rates(const ChannelParams& params, const SchemeParams& scheme);

/// Message-splitting bootstrap: runs the feedback scheme at power epsilon
/// and carries the remaining power P - epsilon on a point-to-point layer to
/// receiver 2, decoded first while treating the rest as noise:
///   r2 += 1/2 log2(1 + (P - epsilon)/(epsilon + sigma2_sq)).
/// Requires 0 < epsilon <= P. Callers comparing against the no-feedback
/// frontier should pass canonical params.
RatePair bootstrap_rates(const ChannelParams& params, double epsilon,
                         const SchemeParams& scheme);

} // namespace gbcfb
