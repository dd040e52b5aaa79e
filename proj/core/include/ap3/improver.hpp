#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "ap3/grid.hpp"

namespace ap3 {

struct RangeViolation : Error {
    RangeViolation() : Error("surgery produced a value above 1 (plan invariant breach)") {}
};

/// Inputs for the dilate/translate surgery: the fuzzy region A (where
/// f <= 1-eps), the rest of the support B, and the low-Lambda interval
/// template S whose random affine images carve A.
struct SurgeryPlan {
    IndicatorSet a;
    IndicatorSet b;
    double eps = 0.25;   // in (0, 1/3)
    double beta = 0.0;   // > 0
    IndicatorSet s_template;
    std::uint64_t seed = 1;

    // eps*beta >= p^{-1/2} log p, the regime the proof's probabilities need.
    bool certified() const;
    void validate(const GridFn& f) const;
};

/// T = m.S + t; unspecified m,t are drawn uniformly from all of F_p
/// (m = 0 collapses T to a point and stays in the sample space).
IndicatorSet dilate_translate(const IndicatorSet& s, std::int64_t m, std::int64_t t);
IndicatorSet random_dilate_translate(const IndicatorSet& s, std::mt19937_64& rng);

/// g = f on B, (1-eps)^{-1} f 1_T on A, 0 elsewhere; throws RangeViolation
/// if any value exceeds 1.
GridFn build_g(const GridFn& f, const SurgeryPlan& plan, const IndicatorSet& t);

/// Progression sums of v split by the A/B pattern of (a, a+d, a+2d):
/// index 0 = all three in A (Z_0/W_0, d = 0 included), 1..6 the six mixed
/// patterns in the proof's order, 7 = all in B. Triples leaving the support
/// contribute nothing.
std::array<double, 8> progression_class_sums(const GridFn& v, const SurgeryPlan& plan);

struct ImproveResult {
    GridFn g;
    bool accepted = false;
    std::int64_t tries = 0;
    double lambda_f = 0.0, lambda_g = 0.0;
    double mean_f = 0.0, mean_g = 0.0;
    double w0 = 0.0;
    std::int64_t repaired = 0;  // coordinates raised 0 -> 1 by the fix-up
    bool certified = false;
};

/// Samples surgeries until Lambda(g) <= Lambda(f) - eps^2 W_0 / (4 p^2) and
/// E(g) >= E(f) - 2 beta both hold (verified by direct recomputation), then
/// repairs the density greedily, lowest-G zeros of A first, up to
/// ceil(2 beta p) coordinates. Failure after max_tries is a value.
ImproveResult improve(const GridFn& f, const SurgeryPlan& plan, std::int64_t max_tries,
                      std::mt19937_64& rng);

struct MomentReport {
    std::int64_t samples = 0;
    bool exhaustive = false;        // every (m,t) pair exactly once
    double z0_mean = 0.0, z0_pred = 0.0;
    std::array<double, 6> zi_means{}, zi_preds{};
    double g_mean = 0.0, g_mean_var = 0.0;
    double success_rate = 0.0;
    double cov_sample = 0.0;        // sampled covariance of g at two points of A
    double band = 0.0;              // C * p
    bool z0_upper_ok = false;       // z0 <= (1 - eps^2/2) W0 + band
    bool z0_in_band = false;        // |z0 - (1-eps)^{-3} Lambda(S) W0| <= band (+4 SE)
    std::array<bool, 6> zi_in_band{};
    bool cov_ok = false;
    std::array<double, 8> w{};      // W_0..W_7
};

/// Monte Carlo (or exhaustive, when samples == p^2) estimation of the seven
/// progression-class expectations, the variance of G = sum_A g, and the
/// acceptance probability, compared against predictions with C*p slack.
MomentReport monte_carlo_moments(const GridFn& f, const SurgeryPlan& plan,
                                 std::int64_t samples, std::mt19937_64& rng,
                                 double slack_c = 5.0);

struct GapAuditRow {
    double eps = 0.0;
    std::int64_t region_size = 0;
    double w0 = 0.0;
    double lambda_a = 0.0;
    double rhs = 0.0;          // 8 eps^{-6} p^{-1/2} log p
    bool satisfied = false;    // violation marks the state improvable
};

/// Evaluates the necessary condition extracted from minimality for each eps
/// in the schedule, with explicit constants.
std::vector<GapAuditRow> minimality_gap_audit(const GridFn& f,
                                              const std::vector<double>& eps_schedule);

}  // namespace ap3
