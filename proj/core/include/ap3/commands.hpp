#pragma once

#include <cstdint>
#include <string>

#include "ap3/grid.hpp"
#include "ap3/r3.hpp"
#include "ap3/report.hpp"

namespace ap3 {

struct MinimizeParams {
    std::int64_t p = 97;
    double theta = 0.3;
    std::uint64_t seed = 1;
    std::int64_t restarts = 8;
    std::int64_t max_iters = 5000;
    std::string step_rule = "line_search";  // or "full_transfer"
};

struct MinimizeOutcome {
    RunReport report;
    GridFn f;
};

/// minimize + rounding + level-set extraction + first-order check + the
/// minimality gap audit, all folded into one report.
MinimizeOutcome cmd_minimize(const MinimizeParams& params);

struct VerifyParams {
    std::int64_t p = 13;
    std::string suite = "all";  // identities | varnavides | levelprop | bohr | all
    std::uint64_t seed = 1;
    std::int64_t samples = 20000;  // Monte Carlo fallback when exhaustive is off scale
};

RunReport cmd_verify(const VerifyParams& params);

struct R3Params {
    std::int64_t n = 9;
    std::int64_t budget = kDefaultR3Budget;
    std::string cache_path;  // empty disables persistence
};

struct R3Outcome {
    RunReport report;
    R3Certificate certificate;
};

R3Outcome cmd_r3(const R3Params& params);

struct BehrendParams {
    std::int64_t n = 1000;
    std::int64_t compare_budget = 20'000'000;  // r3 cross-check for small N
};

struct BehrendOutcome {
    RunReport report;
    IntSet set;
};

BehrendOutcome cmd_behrend(const BehrendParams& params);

struct ImproveParams {
    std::int64_t p = 101;
    double theta = 0.3;
    double eps = 0.25;
    std::uint64_t seed = 1;
    std::int64_t max_tries = 10000;
    std::int64_t minimize_iters = 1500;
    std::int64_t minimize_restarts = 4;
};

RunReport cmd_improve(const ImproveParams& params);

struct BohrParams {
    std::int64_t p = 97;
    double theta = 0.4;
    std::uint64_t seed = 1;
    std::int64_t minimize_iters = 1500;
    std::int64_t minimize_restarts = 4;
};

RunReport cmd_bohr(const BohrParams& params);

}  // namespace ap3
