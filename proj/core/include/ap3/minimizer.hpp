#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ap3/lambda.hpp"

namespace ap3 {

struct InfeasibleDensity : Error {
    InfeasibleDensity() : Error("theta * p < 1: no feasible [0,1] function") {}
};
struct EpsOutOfRange : Error {
    EpsOutOfRange() : Error("eps must lie in (0, 1/2)") {}
};

enum class StepRule { full_transfer, line_search };

struct MinimizerConfig {
    double theta = 0.5;           // target density, E(f) = theta
    std::int64_t max_iters = 5000;
    std::int64_t restarts = 8;
    StepRule step_rule = StepRule::line_search;
    double tol_grad = 1e-9;       // pair admissibility gap on G
    double tol_level = 1e-6;      // first-order level tolerance
    std::uint64_t seed = 1;

    void validate() const;
};

struct MinimizerState {
    GridFn f;
    LambdaCache cache;
    std::int64_t iter = 0;
    std::vector<std::pair<std::int64_t, double>> history;  // (iter, Lambda) at accepted moves
    bool converged = false;
    std::int64_t restart_index = 0;
};

/// Constrained descent: mass-conserving two-point transfers from high-G to
/// low-G coordinates, restarted from independent random feasible starts.
/// Accepts only strictly decreasing Lambda; best restart wins.
MinimizerState minimize(const PrimeField& field, const MinimizerConfig& config);

struct FirstOrderCheck {
    bool ok = false;
    double level = 0.0;
    // Witness pair (x, y) violating the ordering when !ok.
    std::int64_t x = -1, y = -1;
};

/// Verifies the level structure of near-minimizers: coordinates at 1 must
/// have the smallest G, coordinates at 0 the largest, and strictly
/// fractional coordinates must sit within tol_level of a common level L.
/// A is exempt (frozen coordinates). Violation is a return value.
FirstOrderCheck check_first_order(const GridFn& h, const IndicatorSet& a, double tol,
                                  double tol_level = 1e-6);

struct Rounding {
    IndicatorSet c;
    double dist = 0.0;  // sum_n |f(n) - C(n)|
};

/// C(n) = f(n) rounded to the nearest integer, ties up.
Rounding round_to_indicator(const GridFn& f);

struct LevelSplit {
    double level = 0.0;
    IndicatorSet s;        // {n : G_r(n) <= level}
    double distance = 0.0; // sum_n |r(n) - S(n)|
};

/// Scans every threshold between consecutive sorted G values (plus the empty
/// set) and returns the split minimizing sum |r - S|, smallest level on ties.
LevelSplit extract_level_set(const GridFn& r);

struct EqualizeResult {
    GridFn r;
    IndicatorSet a;
    bool paired = false;       // false = no qualifying pair, inputs returned
    std::int64_t x = -1, y = -1;
    double lambda_before = 0.0;
    double lambda_after = 0.0;
};

/// One averaging pass at the current level: picks x,y outside A with G near
/// L and r(x) < 1/2 < r(y), replaces both by their mean, and enforces the
/// Lambda(r') <= Lambda(r) + 10/p^2 bound exactly.
EqualizeResult equalize_pass(const GridFn& r, const IndicatorSet& a, double tol);

/// A = {n : f(n) in [eps, 1-eps]}, the obstruction to f being an indicator.
IndicatorSet fuzzy_region(const GridFn& f, double eps);

/// Projects v onto {x in [0,1]^p : mean(x) = theta} (used for feasible starts).
void project_to_density(std::vector<double>& v, double theta);

}  // namespace ap3
