#pragma once

#include <cstddef>
#include <vector>

#include "gbcfb/model.hpp"

namespace gbcfb {

/// Exact threshold test for capacity enlargement under passive noisy
/// feedback. After canonicalization the margin is
///   (sigma1_sq/fb1 + 1)*(sigma2_sq/fb2 + 1) - sigma2_sq/sigma1_sq,
/// with an infinite feedback variance contributing a factor of exactly 1.
/// Enlarged iff margin > 0; the boundary (margin == 0) counts as unchanged.
/// Margins within a relative band of 1e-13 of zero are snapped to exactly 0
/// so that thresholds computed in closed form classify as boundary points.
Classification classify(const ChannelParams& params);

/// Feedback-noise threshold when only receiver 2 (the weaker one) feeds
/// back: the region is unchanged iff sigma_fb2_sq >= this value. Returns
/// +inf for equal forward variances (feedback always helps there).
double onesided_threshold_from_weak(double sigma1_sq, double sigma2_sq);

/// Same threshold for feedback from receiver 1 (the stronger one) alone.
double onesided_threshold_from_strong(double sigma1_sq, double sigma2_sq);

/// Classifies one cell of the one-sided-feedback regime plane, with
/// x = sigma1_sq/sigma_fb1_sq, y = sigma2_sq/sigma_fb1_sq, and no feedback
/// from receiver 2. Cells on the axes use the exact x -> 0 / y -> 0 limits.
Classification classify_onesided_rx1(double x, double y);

/// Regime map over [0,x_max] x [0,y_max]. verdicts is row-major with y as
/// the row index: verdicts[iy*x_values.size() + ix].
struct SweepGrid {
  std::vector<double> x_values;
  std::vector<double> y_values;
  std::vector<Classification> verdicts;

  const Classification& at(std::size_t iy, std::size_t ix) const {
    return verdicts[iy * x_values.size() + ix];
  }
};

SweepGrid sweep_onesided_rx1(double x_max, double y_max, int resolution);

} // namespace gbcfb
