// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gbcfb/classifier.hpp"
#include "gbcfb/io.hpp"
#include "gbcfb/lowpower.hpp"
#include "gbcfb/montecarlo.hpp"
#include "gbcfb/regions.hpp"
#include "gbcfb/search.hpp"
#include "gbcfb/zf_scheme.hpp"
#include "support/test_support.hpp"

using namespace gbcfb;
using testsup::kInf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int g_failures = 0;

void run_criterion(const char* name, double time_limit_s,
                   const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (elapsed > time_limit_s) {
    outcome.pass = false;
    outcome.detail += " [exceeded time budget]";
  }
  std::printf("[%s] %s: %s (%.2fs of %.0fs budget)\n",
              outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str(),
              elapsed, time_limit_s);
  std::fflush(stdout);
  if (!outcome.pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// AC1: classify agrees with the sign of the minimized gap function on
// 100000 random quadruples (log-uniform variances in [1e-3,1e3], 10% of
// feedback entries infinite, both receiver orderings), excluding exact
// boundary margins.
Outcome criterion1() {
  testsup::QuadrupleSampler sampler(1001, 1e-3, 1e3, 0.10);
  int mismatches = 0, skipped = 0;
  const int total = 100000;
  for (int i = 0; i < total; ++i) {
    const ChannelParams p = sampler.next();
    const Classification c = classify(p);
    if (std::abs(c.margin) < 1e-12) {
      ++skipped;
      continue;
    }
    const LowPowerCertificate cert = certify_lowpower(p);
    const bool enlarged = c.verdict == Verdict::enlarged;
    if (cert.feasible != enlarged) ++mismatches;
    if ((cert.g_at_xstar < 0.0) != (c.margin > 0.0)) ++mismatches;
  }
  return {mismatches == 0,
          fmt("%d quadruples, %d mismatches, %d boundary-skipped", total,
              mismatches, skipped)};
}

// AC2: the verdict flips exactly at the closed-form one-sided thresholds,
// probed at +/- 1e-9 relative; the threshold itself classifies unchanged.
Outcome criterion2() {
  testsup::QuadrupleSampler sampler(2002, 1e-2, 1e2);
  int pairs = 0, bad = 0;
  while (pairs < 1000) {
    double s1 = sampler.log_uniform(0);
    double s2 = sampler.log_uniform(1);
    sampler.advance();
    if (s1 > s2) std::swap(s1, s2);
    if (s2 < s1 * 1.01) continue; // probes need a resolvable threshold
    ++pairs;

    const double tw = onesided_threshold_from_weak(s1, s2);
    const double ts = onesided_threshold_from_strong(s1, s2);
    const ChannelParams below{s1, s2, kInf, tw * (1 - 1e-9), 1};
    const ChannelParams above{s1, s2, kInf, tw * (1 + 1e-9), 1};
    const ChannelParams at{s1, s2, kInf, tw, 1};
    if (classify(below).verdict != Verdict::enlarged) ++bad;
    if (classify(above).verdict != Verdict::unchanged) ++bad;
    if (classify(at).verdict != Verdict::unchanged) ++bad;
    if (classify(at).margin != 0.0) ++bad;

    const ChannelParams below_s{s1, s2, ts * (1 - 1e-9), kInf, 1};
    const ChannelParams above_s{s1, s2, ts * (1 + 1e-9), kInf, 1};
    const ChannelParams at_s{s1, s2, ts, kInf, 1};
    if (classify(below_s).verdict != Verdict::enlarged) ++bad;
    if (classify(above_s).verdict != Verdict::unchanged) ++bad;
    if (classify(at_s).verdict != Verdict::unchanged) ++bad;
  }
  return {bad == 0, fmt("%d pairs probed at both thresholds, %d bad verdicts",
                        pairs, bad)};
}

// AC3: symmetric channel sanity: the zero-weight scheme lands on the
// no-feedback equal-rate point, and the search turns one-sided noisy
// feedback into a verified witness.
Outcome criterion3() {
  const ChannelParams p{1, 1, 1, kInf, 1};
  const RatePair r = scheme_rates(p, {0.5, 0, 0});
  const bool point_ok =
      std::abs(r.r1 - 0.25) <= 1e-12 && std::abs(r.r2 - 0.25) <= 1e-12;
  const SearchResult sr = search_enlargement(p);
  const bool witness_ok = sr.witness.has_value() &&
                          sr.witness->excess > 1e-4 &&
                          verify_witness(p, *sr.witness);
  return {point_ok && witness_ok,
          fmt("rates (%.17g, %.17g), witness excess %.3g", r.r1, r.r2,
              sr.witness ? sr.witness->excess : sr.best_excess)};
}

// AC4: statistical soundness/completeness of the search at default budget.
Outcome criterion4() {
  testsup::QuadrupleSampler sampler(4004, 1e-3, 1e3, 0.10);
  int enlarged_total = 0, enlarged_found = 0, enlarged_unverified = 0;
  int unchanged_total = 0, false_witnesses = 0;
  while (enlarged_total < 500 || unchanged_total < 500) {
    const ChannelParams p = sampler.next();
    const Classification c = classify(p);
    if (c.margin > 0.05 && enlarged_total < 500) {
      ++enlarged_total;
      const SearchResult r = search_enlargement(p);
      if (r.witness) {
        if (verify_witness(p, *r.witness))
          ++enlarged_found;
        else
          ++enlarged_unverified;
      }
    } else if (c.margin < -0.05 && unchanged_total < 500) {
      ++unchanged_total;
      const SearchResult r = search_enlargement(p);
      if (r.witness) ++false_witnesses; // would contradict the converse
    }
  }
  const double rate = 100.0 * enlarged_found / enlarged_total;
  const bool pass = enlarged_found >= 475 && enlarged_unverified == 0 &&
                    false_witnesses == 0;
  return {pass,
          fmt("witnesses on %d/%d enlarged (%.1f%%), %d unverified, "
              "%d false witnesses on %d unchanged",
              enlarged_found, enlarged_total, rate, enlarged_unverified,
              false_witnesses, unchanged_total)};
}

// AC5: Monte Carlo agreement with the closed forms at one million blocks,
// plus bit-identical reproducibility.
Outcome criterion5() {
  testsup::QuadrupleSampler sampler(5005, 0.1, 10.0, 0.15);
  const std::uint64_t blocks = 1000000;
  int checked = 0, stat_failures = 0, power_failures = 0;
  for (int i = 0; i < 20; ++i) {
    const ChannelParams p = sampler.next();
    const double tp = 0.1 + 0.8 * sampler.uniform(7);
    const double g1 = -0.6 + 1.0 * sampler.uniform(8);
    const double g2 = -0.4 + 1.0 * sampler.uniform(9);
    sampler.advance();
    const SchemeParams s{tp, g1, g2};
    const std::uint64_t seed = 50000 + static_cast<std::uint64_t>(i);

    const SimCheck check = simulate_vs_analytic(p, s, blocks, seed, 4.0);
    ++checked;
    for (const SimCheckItem& item : check.items) {
      if (item.name == "emp_power_odd" || item.name == "emp_power_even")
        continue; // power has its own 1% criterion below
      if (item.sigmas > 4.0) ++stat_failures;
    }
    if (std::abs(check.report.emp_power_even - p.power) > 0.01 * p.power)
      ++power_failures;

    if (i == 0) {
      const SimReport again = simulate(p, s, blocks, seed);
      const SimReport& first = check.report;
      const bool identical =
          again.emp_var_s1 == first.emp_var_s1 &&
          again.emp_var_s2 == first.emp_var_s2 &&
          again.emp_power_odd == first.emp_power_odd &&
          again.emp_power_even == first.emp_power_even &&
          again.emp_cross1 == first.emp_cross1 &&
          again.emp_cross2 == first.emp_cross2 &&
          again.emp_zf_cross1 == first.emp_zf_cross1 &&
          again.emp_zf_cross2 == first.emp_zf_cross2;
      if (!identical) ++stat_failures;
    }
  }
  return {stat_failures == 0 && power_failures == 0,
          fmt("%d channel/scheme pairs at 1e6 blocks, %d statistics beyond "
              "4 sigma, %d power deviations beyond 1%%, rerun bit-identical",
              checked, stat_failures, power_failures)};
}

// AC6: the resolution-400 regime sweep matches the closed-form curves
// y = x + x^2 (upper triangle) and y = x/(x+1) (lower triangle), and the
// verdict is invariant under rescaling all four variances.
Outcome criterion6() {
  const int resolution = 400;
  const SweepGrid grid = sweep_onesided_rx1(5.2, 5.2, resolution);
  testsup::QuadrupleSampler sampler(6006);
  int cells = 0, mismatches = 0, scale_checked = 0, scale_mismatches = 0;
  for (std::size_t iy = 0; iy < grid.y_values.size(); ++iy) {
    for (std::size_t ix = 0; ix < grid.x_values.size(); ++ix) {
      const double x = grid.x_values[ix];
      const double y = grid.y_values[iy];
      const Verdict got = grid.at(iy, ix).verdict;
      ++cells;
      Verdict expect;
      if (y >= x)
        expect = y >= x + x * x ? Verdict::unchanged : Verdict::enlarged;
      else
        expect = y <= x / (x + 1.0) ? Verdict::unchanged : Verdict::enlarged;
      if (got != expect) ++mismatches;

      if (x > 0.0 && y > 0.0 && (ix + iy) % 97 == 0) {
        ++scale_checked;
        const double c = 0.01 * std::pow(1e4, sampler.uniform(3));
        sampler.advance();
        const Classification scaled =
            classify({x * c, y * c, c, kInf, 1.0});
        if (scaled.verdict != got) ++scale_mismatches;
      }
    }
  }
  return {mismatches == 0 && scale_mismatches == 0,
          fmt("%d cells, %d curve mismatches; %d rescaled cells, %d verdict "
              "changes",
              cells, mismatches, scale_checked, scale_mismatches)};
}

// AC7: low-power derivative identities and the gap minimizer, against
// independent numerics.
Outcome criterion7() {
  testsup::QuadrupleSampler sampler(7007, 0.1, 10.0, 0.10);
  int eq60_bad = 0, eq61_bad = 0, xstar_bad = 0, deriv_bad = 0;
  const int total = 10000;
  for (int i = 0; i < total; ++i) {
    const ChannelParams p = canonicalize(sampler.next()).params;
    const double theta = 0.02 + 0.96 * sampler.uniform(7);
    sampler.advance();

    const WeightPair w = lowpower_weights(p, theta);
    const double mu = lowpower_mu_choice(p, theta, w.a1, w.a2);
    const double s1 = p.sigma1_sq, s2 = p.sigma2_sq;
    const double hat_sigma1 = std::sqrt(mmse_variance(s1, p.sigma_fb1_sq));
    const double lhs60 = 2.0 * mu * s1;
    const double rhs60 =
        theta + (w.a1 * w.a1 + w.a2 * w.a2) * s1 - 2.0 * w.a1 * hat_sigma1;
    if (std::abs(lhs60 - rhs60) > 1e-12 * std::max(1.0, std::abs(rhs60)))
      ++eq60_bad;

    const double q1 = no_feedback_link(p.sigma_fb1_sq)
                          ? 0.0
                          : theta * theta / (s1 + p.sigma_fb1_sq);
    const double q2 = no_feedback_link(p.sigma_fb2_sq)
                          ? 0.0
                          : (1 - theta) * (1 - theta) / (s2 + p.sigma_fb2_sq);
    const double direct = (w.a1 * w.a1 + w.a2 * w.a2) -
                          (2.0 * q1 + 2.0 * q2 - theta * theta / s1 -
                           (1 - theta) * (1 - 3 * theta) / s2);
    const double via_gap =
        theta * (1 - theta) * lowpower_gap(p, theta / (1 - theta));
    if (std::abs(direct - via_gap) > 1e-10 * std::max(1.0, std::abs(direct)))
      ++eq61_bad;

    const double xs = lowpower_gap_minimizer(p);
    const auto f = [&](double x) { return lowpower_gap(p, x); };
    const double golden = testsup::golden_section_min(f, 1e-6, 1e6);
    if (std::abs(xs - golden) > 1e-9 * std::abs(golden)) ++xstar_bad;
    const double delta = 1e-5;
    const double deriv =
        (f(xs * (1 + delta)) - f(xs * (1 - delta))) / (2 * delta * xs);
    if (std::abs(deriv) >= 1e-6) ++deriv_bad;
  }
  return {eq60_bad == 0 && eq61_bad == 0 && xstar_bad == 0 && deriv_bad == 0,
          fmt("%d quadruples: %d rate-1 equality, %d reduction, %d minimizer, "
              "%d derivative failures",
              total, eq60_bad, eq61_bad, xstar_bad, deriv_bad)};
}

// AC8: the weak-feedback region degenerates to the no-feedback region as
// fb2 -> inf, and sigma_comb hits both of its limits exactly.
Outcome criterion8() {
  testsup::QuadrupleSampler sampler(8008);
  int bad = 0, channels = 0;
  for (int i = 0; i < 200; ++i) {
    ChannelParams p = canonicalize(sampler.next()).params;
    p.sigma_fb2_sq = kInf;
    ++channels;
    for (int k = 0; k <= 100; ++k) {
      const double theta = k / 100.0;
      const RatePair weak = weakfb_point(p, theta).rates;
      const RatePair none = nofb_point(p, theta).rates;
      if (std::abs(weak.r1 - none.r1) > 1e-12) ++bad;
      if (std::abs(weak.r2 - none.r2) > 1e-12) ++bad;
    }
    const double s1 = p.sigma1_sq, s2 = p.sigma2_sq;
    if (weakfb_sigma_comb(s1, s2, kInf) != s1) ++bad;
    if (weakfb_sigma_comb(s1, s2, 0.0) != s1 * s2 / (s1 + s2)) ++bad;
  }
  return {bad == 0, fmt("%d channels x 101 boundary points, %d deviations",
                        channels, bad)};
}

} // namespace

int main() {
  std::printf("acceptance suite\n");
  run_criterion("AC1 threshold-oracle-equivalence", 10.0, criterion1);
  run_criterion("AC2 onesided-thresholds", 1.0, criterion2);
  run_criterion("AC3 equal-variance-enlargement", 5.0, criterion3);
  run_criterion("AC4 witness-soundness-completeness", 1800.0, criterion4);
  run_criterion("AC5 monte-carlo-agreement", 120.0, criterion5);
  run_criterion("AC6 regime-map-reproduction", 5.0, criterion6);
  run_criterion("AC7 lowpower-derivative-identities", 30.0, criterion7);
  run_criterion("AC8 region-consistency", 30.0, criterion8);
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
