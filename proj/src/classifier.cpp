#include "gbcfb/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gbcfb {

namespace {

constexpr double kBoundaryBand = 1e-13;

// Margins indistinguishable from zero at double precision collapse to the
// boundary, which the non-strict threshold inequality assigns to unchanged.
Classification classification_from_margin(double enlarged_side,
                                          double unchanged_side) {
  double margin = enlarged_side - unchanged_side;
  const double scale = std::max({1.0, std::abs(enlarged_side),
                                 std::abs(unchanged_side)});
  if (std::abs(margin) <= kBoundaryBand * scale) margin = 0.0;
  return {margin > 0.0 ? Verdict::enlarged : Verdict::unchanged, margin};
}

double feedback_ratio(double sigma_sq, double sigma_fb_sq) {
  return no_feedback_link(sigma_fb_sq) ? 0.0 : sigma_sq / sigma_fb_sq;
}

} // namespace

Classification classify(const ChannelParams& params) {
  validate(params);
  const ChannelParams c = canonicalize(params).params;
  const double lhs =
      (feedback_ratio(c.sigma1_sq, c.sigma_fb1_sq) + 1.0) *
      (feedback_ratio(c.sigma2_sq, c.sigma_fb2_sq) + 1.0);
  const double rhs = c.sigma2_sq / c.sigma1_sq;
  return classification_from_margin(lhs, rhs);
}

double onesided_threshold_from_weak(double sigma1_sq, double sigma2_sq) {
  if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0))
    throw Error(Errc::non_positive_variance, "variances must be positive");
  if (sigma1_sq > sigma2_sq)
    throw Error(Errc::invalid_argument, "requires sigma1_sq <= sigma2_sq");
  if (sigma1_sq == sigma2_sq) return std::numeric_limits<double>::infinity();
  return sigma2_sq / (sigma2_sq / sigma1_sq - 1.0);
}

double onesided_threshold_from_strong(double sigma1_sq, double sigma2_sq) {
  if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0))
    throw Error(Errc::non_positive_variance, "variances must be positive");
  if (sigma1_sq > sigma2_sq)
    throw Error(Errc::invalid_argument, "requires sigma1_sq <= sigma2_sq");
  if (sigma1_sq == sigma2_sq) return std::numeric_limits<double>::infinity();
  return sigma1_sq / (sigma2_sq / sigma1_sq - 1.0);
}

Classification classify_onesided_rx1(double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0))
    throw Error(Errc::invalid_argument, "sweep coordinates must be >= 0");
  if (x == 0.0 || y == 0.0) {
    // Degenerate forward variance: the margin diverges to -inf except at the
    // joint limit along the diagonal, which sits exactly on the boundary.
    if (x == y) return {Verdict::unchanged, 0.0};
    return {Verdict::unchanged, -std::numeric_limits<double>::infinity()};
  }
  // Reconstruct an absolute quadruple by pinning sigma_fb1_sq = 1; only the
  // ratios enter the threshold condition.
  const ChannelParams q{x, y, 1.0, std::numeric_limits<double>::infinity(),
                        1.0};
  return classify(q);
}

SweepGrid sweep_onesided_rx1(double x_max, double y_max, int resolution) {
  if (!(x_max >= 0.0) || !(y_max >= 0.0))
    throw Error(Errc::invalid_argument, "sweep ranges must be nonnegative");
  if (resolution < 2)
    throw Error(Errc::invalid_argument, "sweep resolution must be >= 2");

  SweepGrid grid;
  const auto axis = [resolution](double maxval) {
    std::vector<double> v(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i)
      v[static_cast<std::size_t>(i)] =
          maxval *
          (static_cast<double>(i) / static_cast<double>(resolution - 1));
    return v;
  };
  grid.x_values = axis(x_max);
  grid.y_values = axis(y_max);
  grid.verdicts.reserve(grid.x_values.size() * grid.y_values.size());
  for (double y : grid.y_values)
    for (double x : grid.x_values)
      grid.verdicts.push_back(classify_onesided_rx1(x, y));
  return grid;
}

} // namespace gbcfb
