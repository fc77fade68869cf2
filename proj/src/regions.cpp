#include "gbcfb/regions.hpp"

#include <cmath>

namespace gbcfb {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;

double log2_1p(double x) { return std::log1p(x) / kLn2; }

void require_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw Error(Errc::theta_out_of_range, "theta must lie in [0,1]");
}

// Rates on the canonical (sigma1_sq <= sigma2_sq) superposition boundary.
RatePair canonical_nofb_rates(const ChannelParams& c, double theta) {
  const double p = c.power;
  const double r1 = 0.5 * log2_1p(theta * p / c.sigma1_sq);
  const double r2 = 0.5 * log2_1p((1.0 - theta) * p / (theta * p + c.sigma2_sq));
  return {r1, r2};
}

} // namespace

BoundarySample nofb_point(const ChannelParams& params, double theta) {
  validate(params);
  require_theta(theta);
  const Canonical cano = canonicalize(params);
  RatePair rates = canonical_nofb_rates(cano.params, theta);
  if (cano.swapped) std::swap(rates.r1, rates.r2);
  return {theta, rates};
}

double nofb_frontier_r2(const ChannelParams& params, double r1) {
  validate(params);
  const ChannelParams c = canonicalize(params).params;
  if (r1 < 0.0)
    throw Error(Errc::r1_infeasible, "r1 must be nonnegative");
  // Invert r1 = 1/2 log2(1 + theta*P/sigma1_sq).
  double theta = c.sigma1_sq * std::expm1(2.0 * r1 * kLn2) / c.power;
  if (theta > 1.0) {
    if (theta <= 1.0 + 1e-12)
      theta = 1.0;
    else
      throw Error(Errc::r1_infeasible,
                  "r1 exceeds receiver 1's single-user capacity");
  }
  return 0.5 * log2_1p((1.0 - theta) * c.power / (theta * c.power + c.sigma2_sq));
}

std::optional<double> excess_rate(const ChannelParams& params,
                                  const RatePair& pair) {
  validate(params);
  const Canonical cano = canonicalize(params);
  RatePair p = pair;
  if (cano.swapped) std::swap(p.r1, p.r2);
  try {
    return p.r2 - nofb_frontier_r2(cano.params, p.r1);
  } catch (const Error& e) {
    if (e.code() == Errc::r1_infeasible) return std::nullopt;
    throw;
  }
}

double weakfb_sigma_comb(double sigma1_sq, double sigma2_sq,
                         double sigma_fb2_sq) {
  if (no_feedback_link(sigma_fb2_sq)) return sigma1_sq;
  return sigma1_sq * (sigma2_sq + sigma_fb2_sq) /
         (sigma1_sq + sigma2_sq + sigma_fb2_sq);
}

double weakfb_sigma_comb(const ChannelParams& params) {
  validate(params);
  const ChannelParams c = canonicalize(params).params;
  return weakfb_sigma_comb(c.sigma1_sq, c.sigma2_sq, c.sigma_fb2_sq);
}

BoundarySample weakfb_point(const ChannelParams& params, double theta) {
  validate(params);
  require_theta(theta);
  const Canonical cano = canonicalize(params);
  const ChannelParams& c = cano.params;
  const double comb = weakfb_sigma_comb(c.sigma1_sq, c.sigma2_sq, c.sigma_fb2_sq);
  const double p = c.power;
  RatePair rates{0.5 * log2_1p(theta * p / comb),
                 0.5 * log2_1p((1.0 - theta) * p / (theta * p + c.sigma2_sq))};
  if (cano.swapped) std::swap(rates.r1, rates.r2);
  return {theta, rates};
}

std::vector<BoundarySample> sample_boundary(const ChannelParams& params,
                                            RegionKind kind, int n) {
  validate(params);
  if (n < 2)
    throw Error(Errc::invalid_argument, "sample_boundary requires n >= 2");
  std::vector<BoundarySample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = static_cast<double>(k) / static_cast<double>(n - 1);
    samples.push_back(kind == RegionKind::no_feedback
                          ? nofb_point(params, theta)
                          : weakfb_point(params, theta));
  }
  return samples;
}

} // namespace gbcfb
