#include "gbcfb/lowpower.hpp"

#include <cmath>

#include "gbcfb/zf_scheme.hpp"

namespace gbcfb {

namespace {

void require_interior_theta(double theta) {
  if (theta == 0.0)
    throw Error(Errc::theta_zero, "theta = 0 leaves mu undefined");
  if (!(theta > 0.0 && theta <= 1.0))
    throw Error(Errc::theta_out_of_range, "theta must lie in (0,1]");
}

// g(x) = gap_coeff(s1, fb1)*x + gap_coeff(s2, fb2)/x - 2/s2.
double gap_coeff(double sigma_sq, double sigma_fb_sq) {
  if (no_feedback_link(sigma_fb_sq)) return 1.0 / sigma_sq;
  return sigma_fb_sq / (sigma_sq * (sigma_sq + sigma_fb_sq));
}

} // namespace

TransformedWeights lowpower_transform(const SchemeParams& scheme,
                                      const ChannelParams& params,
                                      double theta) {
  validate(params);
  require_interior_theta(theta);
  const double hs1 = std::sqrt(mmse_variance(params.sigma1_sq, params.sigma_fb1_sq));
  const double hs2 = std::sqrt(mmse_variance(params.sigma2_sq, params.sigma_fb2_sq));
  const double p = params.power;
  return {-scheme.gamma1 * hs1 / p, scheme.gamma2 * hs2 / p,
          (scheme.theta_prime / theta - 1.0) / p};
}

double lowpower_mu_choice(const ChannelParams& params, double theta, double a1,
                          double a2) {
  validate(params);
  require_interior_theta(theta);
  const double s1 = params.sigma1_sq;
  const double hat_sigma1 = std::sqrt(mmse_variance(s1, params.sigma_fb1_sq));
  return theta / (2.0 * s1) + (a1 * a1 + a2 * a2) / 2.0 - a1 * hat_sigma1 / s1;
}

WeightPair lowpower_weights(const ChannelParams& params, double theta) {
  validate(params);
  require_interior_theta(theta);
  const double a1 = no_feedback_link(params.sigma_fb1_sq)
                        ? 0.0
                        : theta / std::sqrt(params.sigma1_sq + params.sigma_fb1_sq);
  const double a2 = no_feedback_link(params.sigma_fb2_sq)
                        ? 0.0
                        : (1.0 - theta) /
                              std::sqrt(params.sigma2_sq + params.sigma_fb2_sq);
  return {a1, a2};
}

double lowpower_gap(const ChannelParams& params, double x) {
  validate(params);
  if (!(x > 0.0))
    throw Error(Errc::non_positive_x, "gap function requires x > 0");
  return x * gap_coeff(params.sigma1_sq, params.sigma_fb1_sq) +
         gap_coeff(params.sigma2_sq, params.sigma_fb2_sq) / x -
         2.0 / params.sigma2_sq;
}

double lowpower_gap_minimizer(const ChannelParams& params) {
  validate(params);
  const ChannelParams c = canonicalize(params).params;
  const double n1 = no_feedback_link(c.sigma_fb1_sq)
                        ? 1.0
                        : 1.0 + c.sigma1_sq / c.sigma_fb1_sq;
  const double n2 = no_feedback_link(c.sigma_fb2_sq)
                        ? 1.0
                        : 1.0 + c.sigma2_sq / c.sigma_fb2_sq;
  return std::sqrt((n1 / n2) * (c.sigma1_sq / c.sigma2_sq));
}

LowPowerCertificate certify_lowpower(const ChannelParams& params) {
  validate(params);
  const ChannelParams c = canonicalize(params).params;
  const double xs = lowpower_gap_minimizer(c);
  const double theta = xs / (1.0 + xs);
  const WeightPair w = lowpower_weights(c, theta);
  const double mu = lowpower_mu_choice(c, theta, w.a1, w.a2);
  const double gap = lowpower_gap(c, xs);
  return {theta, w.a1, w.a2, mu, gap, xs, gap < 0.0};
}

} // namespace gbcfb
