#pragma once

#include <optional>
#include <vector>

#include "gbcfb/model.hpp"

namespace gbcfb {

enum class RegionKind { no_feedback, weak_feedback };

/// Superposition-coding boundary point of the no-feedback capacity region:
///   r1 = 1/2 log2(1 + theta*P / sigma1_sq)
///   r2 = 1/2 log2(1 + (1-theta)*P / (theta*P + sigma2_sq))
/// The channel is canonicalized internally; the returned rates follow the
/// caller's receiver indexing.
BoundarySample nofb_point(const ChannelParams& params, double theta);

/// Maximum r2 on the no-feedback frontier at abscissa r1, via the closed-form
/// inversion theta = sigma1_sq*(2^(2 r1) - 1)/P. Throws R1Infeasible when r1
/// exceeds receiver 1's single-user capacity. Expects canonical params.
double nofb_frontier_r2(const ChannelParams& params, double r1);

/// pair.r2 minus the no-feedback frontier value at pair.r1; a strictly
/// positive result certifies that the pair lies outside the no-feedback
/// capacity region. Returns nullopt when pair.r1 is infeasible. The pair's
/// components follow the caller's receiver indexing and are reordered
/// together with the channel during canonicalization.
std::optional<double> excess_rate(const ChannelParams& params,
                                  const RatePair& pair);

/// Effective noise variance at the strong receiver after maximum ratio
/// combining of its own output with the shared feedback signal from the weak
/// receiver: sigma1_sq*(sigma2_sq+fb2)/(sigma1_sq+sigma2_sq+fb2).
/// fb2 = +inf degenerates to sigma1_sq, fb2 = 0 to the harmonic combination.
double weakfb_sigma_comb(double sigma1_sq, double sigma2_sq, double sigma_fb2_sq);
double weakfb_sigma_comb(const ChannelParams& params);

/// Boundary point of the weak-receiver-feedback region: same as nofb_point
/// but with sigma1_sq replaced by sigma_comb in the r1 term.
BoundarySample weakfb_point(const ChannelParams& params, double theta);

/// n boundary samples at theta = k/(n-1), k = 0..n-1. Requires n >= 2.
std::vector<BoundarySample> sample_boundary(const ChannelParams& params,
                                            RegionKind kind, int n);

} // namespace gbcfb
