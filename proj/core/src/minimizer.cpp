#include "ap3/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ap3/rng.hpp"

namespace ap3 {

void MinimizerConfig::validate() const {
    if (!(theta > 0.0 && theta <= 1.0)) throw Error("theta must lie in (0,1]");
    if (max_iters < 1) throw Error("max_iters must be >= 1");
    if (restarts < 1) throw Error("restarts must be >= 1");
    if (!(tol_grad > 0.0) || !(tol_level > 0.0)) throw Error("tolerances must be positive");
}

void project_to_density(std::vector<double>& v, double theta) {
    const auto p = static_cast<double>(v.size());
    const double target = theta * p;
    auto shifted_sum = [&](double lam) {
        double s = 0.0;
        for (double x : v) s += std::clamp(x + lam, 0.0, 1.0);
        return s;
    };
    double lo = -1.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (shifted_sum(mid) < target ? lo : hi) = mid;
    }
    const double lam = 0.5 * (lo + hi);
    for (double& x : v) x = std::clamp(x + lam, 0.0, 1.0);
    // Spread any residual over coordinates with headroom.
    for (int pass = 0; pass < 4; ++pass) {
        double residual = target - std::accumulate(v.begin(), v.end(), 0.0);
        if (std::abs(residual) < 1e-14 * p) break;
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if ((residual > 0 && v[i] < 1.0) || (residual < 0 && v[i] > 0.0)) free.push_back(i);
        }
        if (free.empty()) break;
        const double share = residual / static_cast<double>(free.size());
        for (auto i : free) v[i] = std::clamp(v[i] + share, 0.0, 1.0);
    }
}

namespace {

struct Pick {
    std::int64_t idx = -1;
    double g = 0.0;
};

// Uniform choice among exact ties of the extremal G value.
template <typename Admissible, typename Better>
Pick pick_extremal(const LambdaCache& cache, Admissible adm, Better better,
                   std::mt19937_64& rng) {
    Pick best;
    std::int64_t ties = 0;
    for (std::int64_t n = 0; n < cache.p(); ++n) {
        if (!adm(n)) continue;
        const double g = cache.grad[n];
        if (best.idx < 0 || better(g, best.g)) {
            best = {n, g};
            ties = 1;
        } else if (g == best.g) {
            ++ties;
            if (std::uniform_int_distribution<std::int64_t>(0, ties - 1)(rng) == 0) best.idx = n;
        }
    }
    return best;
}

MinimizerState run_descent(const PrimeField& field, const MinimizerConfig& cfg,
                           std::int64_t restart) {
    auto rng = make_stream(cfg.seed, "minimize/restart/" + std::to_string(restart));
    const std::int64_t p = field.p;

    GridFn start(field, 0.0, true);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& x : start.values) x = unit(rng);
    project_to_density(start.values, cfg.theta);

    // A restart that lands exactly on an indicator would stall at a vertex;
    // nudge 0.1 mass between two random coordinates.
    const double tp = cfg.theta * static_cast<double>(p);
    const bool integral_mass = std::abs(tp - std::round(tp)) < 1e-9;
    auto is_indicator = [&] {
        for (double x : start.values)
            if (x > 1e-12 && x < 1.0 - 1e-12) return false;
        return true;
    };
    if (integral_mass && is_indicator()) {
        std::vector<std::int64_t> ones, zeros;
        for (std::int64_t n = 0; n < p; ++n)
            (start.values[static_cast<std::size_t>(n)] > 0.5 ? ones : zeros).push_back(n);
        if (!ones.empty() && !zeros.empty()) {
            auto u = ones[std::uniform_int_distribution<std::size_t>(0, ones.size() - 1)(rng)];
            auto w = zeros[std::uniform_int_distribution<std::size_t>(0, zeros.size() - 1)(rng)];
            start.at(u) -= 0.1;
            start.at(w) += 0.1;
        }
    }

    MinimizerState st;
    st.restart_index = restart;
    st.cache = make_cache(start);
    st.history.emplace_back(0, st.cache.lambda);
    bool fp_stalled = false;

    for (st.iter = 1; st.iter <= cfg.max_iters; ++st.iter) {
        auto& cache = st.cache;
        const auto& h = cache.h;
        const Pick low = pick_extremal(
            cache, [&](std::int64_t n) { return h[n] < 1.0; },
            [](double a, double b) { return a < b; }, rng);
        const Pick high = pick_extremal(
            cache, [&](std::int64_t n) { return h[n] > 0.0; },
            [](double a, double b) { return a > b; }, rng);
        if (low.idx < 0 || high.idx < 0 || low.idx == high.idx ||
            !(low.g < high.g - cfg.tol_grad)) {
            st.converged = true;
            break;
        }
        const std::int64_t x = low.idx, y = high.idx;
        const double hx = h[x], hy = h[y];
        const double eps_full = std::min(1.0 - hx, hy);

        double eps = eps_full;
        const double pm2 = 1.0 / (static_cast<double>(p) * static_cast<double>(p));
        const double a = pm2 * (low.g - high.g);
        const double b = pm2 * (3.0 * (hx + hy) -
                                2.0 * (h[2 * x - y] + h[2 * y - x] + h[field.halve(x + y)]));
        if (cfg.step_rule == StepRule::line_search && b > 0.0)
            eps = std::min(eps_full, -a / (2.0 * b));
        const double predicted = a * eps + b * eps * eps;

        double vx, vy;
        if (eps >= eps_full) {  // saturate one endpoint exactly
            if (1.0 - hx <= hy) {
                vx = 1.0;
                vy = hy - (1.0 - hx);
            } else {
                vx = hx + hy;
                vy = 0.0;
            }
        } else {
            vx = hx + eps;
            vy = hy - eps;
        }
        vx = std::clamp(vx, 0.0, 1.0);
        vy = std::clamp(vy, 0.0, 1.0);

        const double before = cache.lambda;
        LambdaCache trial = two_point_update(cache, x, y, vx, vy);
        if (!(trial.lambda < before)) {
            // Full transfer overshoot, or a descent step whose gain is below
            // fp resolution; the latter counts as converged.
            fp_stalled = predicted > -1e-12 * std::max(1.0, std::abs(before));
            break;
        }
        cache = std::move(trial);
        st.f = cache.h;
        st.history.emplace_back(st.iter, cache.lambda);
    }
    st.f = st.cache.h;
    if (st.iter > cfg.max_iters) st.iter = cfg.max_iters;

    // Converged means no admissible pair is left at working precision.
    if (fp_stalled) {
        st.converged = true;
    } else {
        const auto& h = st.cache.h;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        std::int64_t lo_at = -1, hi_at = -1;
        for (std::int64_t n = 0; n < p; ++n) {
            const double gv = st.cache.grad[n];
            if (h[n] < 1.0 && gv < lo) { lo = gv; lo_at = n; }
            if (h[n] > 0.0 && gv > hi) { hi = gv; hi_at = n; }
        }
        st.converged = !(lo_at >= 0 && hi_at >= 0 && lo_at != hi_at && lo < hi - cfg.tol_grad);
    }
    return st;
}

}  // namespace

MinimizerState minimize(const PrimeField& field, const MinimizerConfig& config) {
    config.validate();
    const std::int64_t p = field.p;
    if (config.theta * static_cast<double>(p) < 1.0 - 1e-12) throw InfeasibleDensity();

    if (config.theta >= 1.0) {  // unique feasible point
        MinimizerState st;
        st.f = GridFn(field, 1.0, true);
        st.cache = make_cache(st.f);
        st.history.emplace_back(0, st.cache.lambda);
        st.converged = true;
        return st;
    }

    MinimizerState best;
    bool have = false;
    for (std::int64_t r = 0; r < config.restarts; ++r) {
        MinimizerState st = run_descent(field, config, r);
        if (!have || st.cache.lambda < best.cache.lambda) {
            best = std::move(st);
            have = true;
        }
    }
    return best;
}

namespace {

struct LevelStats {
    double one_hi = -std::numeric_limits<double>::infinity();   // sup G over h >= 1-tol
    double zero_lo = std::numeric_limits<double>::infinity();   // inf G over h <= tol
    double frac_lo = std::numeric_limits<double>::infinity();
    double frac_hi = -std::numeric_limits<double>::infinity();
    std::int64_t one_hi_at = -1, zero_lo_at = -1, frac_lo_at = -1, frac_hi_at = -1;
    bool any = false;

    double level() const {
        const double hi_anchor = std::max(one_hi, frac_hi);
        const double lo_anchor = std::min(zero_lo, frac_lo);
        if (std::isfinite(hi_anchor) && std::isfinite(lo_anchor))
            return 0.5 * (hi_anchor + lo_anchor);
        if (std::isfinite(hi_anchor)) return hi_anchor;
        if (std::isfinite(lo_anchor)) return lo_anchor;
        return 0.0;
    }
};

LevelStats level_stats(const GridFn& h, const GridFn& g, const IndicatorSet& a, double tol) {
    LevelStats s;
    for (std::int64_t n = 0; n < h.p(); ++n) {
        if (a.contains(n)) continue;
        s.any = true;
        const double hv = h[n], gv = g[n];
        if (hv >= 1.0 - tol) {
            if (gv > s.one_hi) { s.one_hi = gv; s.one_hi_at = n; }
        } else if (hv <= tol) {
            if (gv < s.zero_lo) { s.zero_lo = gv; s.zero_lo_at = n; }
        } else {
            if (gv < s.frac_lo) { s.frac_lo = gv; s.frac_lo_at = n; }
            if (gv > s.frac_hi) { s.frac_hi = gv; s.frac_hi_at = n; }
        }
    }
    return s;
}

}  // namespace

FirstOrderCheck check_first_order(const GridFn& h, const IndicatorSet& a, double tol,
                                  double tol_level) {
    const GridFn g = gradient_field(h);
    const LevelStats s = level_stats(h, g, a, tol);
    FirstOrderCheck out;
    out.level = s.level();
    if (!s.any) {
        out.ok = true;
        return out;
    }
    // Ones must not out-G zeros.
    if (s.one_hi_at >= 0 && s.zero_lo_at >= 0 && s.one_hi > s.zero_lo + tol_level) {
        out.x = s.zero_lo_at;
        out.y = s.one_hi_at;
        return out;
    }
    // A common level within tol_level of every fractional G must separate.
    const double hi_anchor = std::max(s.one_hi, s.frac_hi);
    const double lo_anchor = std::min(s.zero_lo, s.frac_lo);
    if (std::isfinite(hi_anchor) && std::isfinite(lo_anchor) &&
        hi_anchor > lo_anchor + 2.0 * tol_level) {
        out.x = (s.frac_lo <= s.zero_lo) ? s.frac_lo_at : s.zero_lo_at;
        out.y = (s.frac_hi >= s.one_hi) ? s.frac_hi_at : s.one_hi_at;
        return out;
    }
    out.ok = true;
    return out;
}

Rounding round_to_indicator(const GridFn& f) {
    Rounding out;
    out.c = IndicatorSet(f.field);
    double dist = 0.0;
    for (std::int64_t n = 0; n < f.p(); ++n) {
        const double v = f[n];
        if (v >= 0.5) {
            out.c.insert(n);
            dist += std::abs(v - 1.0);
        } else {
            dist += std::abs(v);
        }
    }
    out.dist = dist;
    return out;
}

LevelSplit extract_level_set(const GridFn& r) {
    const std::int64_t p = r.p();
    const GridFn g = gradient_field(r);
    std::vector<std::int64_t> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        return g[a] < g[b];
    });

    // dist(L) = sum_{G<=L} |r-1| + sum_{G>L} |r|; scan thresholds in sorted order.
    double below = 0.0;  // sum |r-1| over prefix
    double above = 0.0;  // sum |r| over suffix
    for (std::int64_t n = 0; n < p; ++n) above += std::abs(r[n]);

    LevelSplit best;
    best.level = g[order.front()] - 1.0;  // empty set candidate
    best.distance = above;
    std::size_t i = 0;
    while (i < order.size()) {
        const double gv = g[order[i]];
        while (i < order.size() && g[order[i]] == gv) {
            below += std::abs(r[order[i]] - 1.0);
            above -= std::abs(r[order[i]]);
            ++i;
        }
        const double dist = below + above;
        if (dist < best.distance || (dist == best.distance && gv < best.level)) {
            best.level = gv;
            best.distance = dist;
        }
    }
    best.s = IndicatorSet(r.field);
    for (std::int64_t n = 0; n < p; ++n)
        if (g[n] <= best.level) best.s.insert(n);
    return best;
}

EqualizeResult equalize_pass(const GridFn& r, const IndicatorSet& a, double tol) {
    EqualizeResult out;
    out.r = r;
    out.a = a;
    const GridFn g = gradient_field(r);
    const LevelStats s = level_stats(r, g, a, 1e-9);
    const double level = s.level();

    std::int64_t x = -1, y = -1;
    for (std::int64_t n = 0; n < r.p(); ++n) {
        if (a.contains(n) || std::abs(g[n] - level) > tol) continue;
        if (x < 0 && r[n] < 0.5) x = n;
        if (y < 0 && r[n] > 0.5) y = n;
        if (x >= 0 && y >= 0) break;
    }
    if (x < 0 || y < 0) return out;  // no qualifying pair

    const double avg = 0.5 * (r[x] + r[y]);
    LambdaCache cache = make_cache(r);
    out.lambda_before = cache.lambda;
    cache.apply_two_point(x, y, avg, avg);
    out.lambda_after = cache.lambda;
    const double p2 = static_cast<double>(r.p()) * static_cast<double>(r.p());
    if (out.lambda_after > out.lambda_before + 10.0 / p2 + 1e-12)
        throw Error("equalize pass exceeded the 10/p^2 growth bound");
    out.r = cache.h;
    out.a.insert(x);
    out.a.insert(y);
    out.paired = true;
    out.x = x;
    out.y = y;
    return out;
}

IndicatorSet fuzzy_region(const GridFn& f, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw EpsOutOfRange();
    IndicatorSet a(f.field);
    for (std::int64_t n = 0; n < f.p(); ++n)
        if (f[n] >= eps && f[n] <= 1.0 - eps) a.insert(n);
    return a;
}

}  // namespace ap3
