#include "ap3/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ap3/bohr.hpp"
#include "ap3/improver.hpp"
#include "ap3/io.hpp"
#include "ap3/lambda.hpp"
#include "ap3/minimizer.hpp"
#include "ap3/rng.hpp"
#include "ap3/varnavides.hpp"

namespace ap3 {
namespace {

GridFn random_density_fn(const PrimeField& field, std::mt19937_64& rng) {
    GridFn f(field, 0.0, true);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& v : f.values) v = unit(rng);
    return f;
}

IndicatorSet random_set(const PrimeField& field, std::int64_t size, std::mt19937_64& rng) {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(field.p));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    IndicatorSet s(field);
    for (std::int64_t i = 0; i < size; ++i) s.insert(idx[static_cast<std::size_t>(i)]);
    return s;
}

StepRule parse_step_rule(const std::string& s) {
    if (s == "full_transfer") return StepRule::full_transfer;
    if (s == "line_search") return StepRule::line_search;
    throw Error("unknown step rule: " + s);
}

}  // namespace

MinimizeOutcome cmd_minimize(const MinimizeParams& params) {
    MinimizeOutcome out;
    RunReport& rep = out.report;
    rep.begin("minimize", params.seed);
    rep.params = {{"p", params.p},
                  {"theta", params.theta},
                  {"restarts", params.restarts},
                  {"max_iters", params.max_iters},
                  {"step_rule", params.step_rule}};

    const PrimeField field = make_field(params.p);
    MinimizerConfig cfg;
    cfg.theta = params.theta;
    cfg.max_iters = params.max_iters;
    cfg.restarts = params.restarts;
    cfg.step_rule = parse_step_rule(params.step_rule);
    cfg.seed = params.seed;

    MinimizerState st = minimize(field, cfg);
    out.f = st.f;
    rep.metrics["lambda"] = st.cache.lambda;
    rep.metrics["density"] = st.f.mean();
    rep.metrics["iterations"] = st.iter;
    rep.metrics["accepted_moves"] = static_cast<std::int64_t>(st.history.size()) - 1;
    rep.metrics["restart_index"] = st.restart_index;
    rep.verdict("converged", st.converged,
                st.converged ? "no admissible pair left" : "iteration budget reached");

    const Rounding rounded = round_to_indicator(st.f);
    rep.metrics["rounding_distance"] = rounded.dist;
    rep.metrics["rounding_distance_per_p"] = rounded.dist / static_cast<double>(params.p);

    const LevelSplit split = extract_level_set(st.f);
    rep.metrics["level"] = split.level;
    rep.metrics["level_set_size"] = split.s.count;
    rep.metrics["level_distance"] = split.distance;
    rep.metrics["level_distance_per_p"] = split.distance / static_cast<double>(params.p);

    const FirstOrderCheck foc = check_first_order(st.f, IndicatorSet(field), 1e-6);
    rep.verdict("first_order", foc.ok,
                foc.ok ? "level " + std::to_string(foc.level)
                       : "witness (" + std::to_string(foc.x) + "," + std::to_string(foc.y) + ")");

    nlohmann::json audit = nlohmann::json::array();
    bool any_violated = false;
    for (const auto& row : minimality_gap_audit(st.f, {0.1, 0.2, 0.3})) {
        audit.push_back({{"eps", row.eps},
                         {"region_size", row.region_size},
                         {"w0", row.w0},
                         {"lambda_a", row.lambda_a},
                         {"rhs", row.rhs},
                         {"satisfied", row.satisfied}});
        any_violated |= !row.satisfied;
    }
    rep.metrics["gap_audit"] = audit;
    rep.verdict("gap_audit", !any_violated,
                any_violated ? "a fuzzy region violates the minimality bound (state improvable)"
                             : "all eps rows satisfied");

    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [it, lam] : st.history) hist.push_back({{"iter", it}, {"lambda", lam}});
    rep.metrics["history"] = hist;
    rep.metrics["values"] = st.f.values;
    rep.end();
    return out;
}

namespace {

void verify_identities(RunReport& rep, const PrimeField& field, std::uint64_t seed) {
    const std::int64_t p = field.p;
    auto rng = make_stream(seed, "verify/identities");
    std::uniform_int_distribution<std::int64_t> anysize(0, p);
    std::uniform_int_distribution<std::int64_t> nonzero(1, p - 1);
    std::uniform_int_distribution<std::int64_t> any(0, p - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Complement identity, exact integer path.
    {
        bool all_zero = true;
        std::int64_t checked = 0;
        if (p <= 13) {
            for (std::uint64_t mask = 0; mask < (1ULL << p); ++mask) {
                IndicatorSet s(field);
                for (std::int64_t i = 0; i < p; ++i)
                    if (mask & (1ULL << i)) s.insert(i);
                all_zero &= complement_identity_residual_scaled(s) == 0;
                ++checked;
            }
        } else {
            for (int i = 0; i < 500; ++i) {
                all_zero &= complement_identity_residual_scaled(
                                random_set(field, anysize(rng), rng)) == 0;
                ++checked;
            }
        }
        rep.verdict("complement_identity", all_zero,
                    std::to_string(checked) + " subsets, residual exactly 0");
    }
    // Spectral vs direct.
    {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const GridFn f = random_density_fn(field, rng);
            worst = std::max(worst, std::abs(lambda_spectral(f) - lambda_direct(f)));
        }
        rep.verdict("spectral_direct", worst <= 1e-9, "max gap " + std::to_string(worst));
    }
    // p^2 Lambda(S) = T3(S) + |S|: float route vs exact counting route.
    {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const IndicatorSet s = random_set(field, anysize(rng), rng);
            const double lhs = lambda_direct(s.as_gridfn()) * static_cast<double>(p * p);
            const double rhs = static_cast<double>(count_t3(s) + s.count);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        rep.verdict("count_bridge", worst <= 1e-6, "max gap " + std::to_string(worst));
    }
    // Lambda is invariant under affine reindexing.
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const GridFn f = random_density_fn(field, rng);
            const GridFn g = affine_reindex(f, nonzero(rng), any(rng));
            worst = std::max(worst, std::abs(lambda_direct(f) - lambda_direct(g)));
        }
        rep.verdict("affine_invariance", worst <= 1e-12, "max gap " + std::to_string(worst));
    }
    // Two-point expansion vs full recomputation.
    {
        GridFn h = random_density_fn(field, rng);
        LambdaCache cache = make_cache(h);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            std::int64_t x = any(rng), y = any(rng);
            if (x == y) y = field.add(y, 1);
            cache.apply_two_point(x, y, unit(rng), unit(rng));
            worst = std::max(worst, std::abs(cache.lambda - lambda_direct(cache.h)));
        }
        rep.verdict("two_point_exact", worst <= 1e-10, "max gap " + std::to_string(worst));
    }
    // Gradient field vs central finite differences at sampled coordinates.
    {
        double worst = 0.0;
        const double fd_eps = 1e-5;
        for (int trial = 0; trial < 2; ++trial) {
            GridFn h = random_density_fn(field, rng);
            for (auto& v : h.values) v = 0.1 + 0.8 * v;  // keep h +- eps inside [0,1]
            const GridFn g = gradient_field(h);
            for (int k = 0; k < 10; ++k) {
                const std::int64_t n = any(rng);
                GridFn hp = h, hm = h;
                hp.at(n) += fd_eps;
                hm.at(n) -= fd_eps;
                const double fd = (lambda_direct(hp) - lambda_direct(hm)) / (2.0 * fd_eps);
                worst = std::max(worst, std::abs(fd - g[n] / static_cast<double>(p * p)));
            }
        }
        rep.verdict("gradient_fd", worst <= 1e-6, "max gap " + std::to_string(worst));
    }
}

void verify_varnavides(RunReport& rep, const PrimeField& field, std::uint64_t seed) {
    const std::int64_t p = field.p;
    auto rng = make_stream(seed, "verify/varnavides");
    std::uniform_int_distribution<std::int64_t> anysize(0, p);
    std::vector<std::int64_t> lens;
    for (std::int64_t n : {3, 4, 5, 7})
        if (n <= p) lens.push_back(n);

    for (auto n : lens) {
        bool ok = true;
        const int trials = p <= 101 ? 100 : 25;
        for (int i = 0; i < trials; ++i) {
            const IndicatorSet s = random_set(field, anysize(rng), rng);
            ok &= averaging_identity_residual(s, n) == 0;
            ok &= slot_count_identity(s, n) == 0;
        }
        rep.verdict("family_identities_N" + std::to_string(n), ok,
                    std::to_string(trials) + " random sets, residuals exactly 0");
    }
}

void verify_levelprop(RunReport& rep, const PrimeField& field, std::uint64_t seed,
                      std::int64_t samples) {
    const std::int64_t p = field.p;
    if (p < 11) {
        rep.verdict("levelprop", false, "needs p >= 11 (exhaustive mode floor)");
        return;
    }
    auto rng = make_stream(seed, "verify/levelprop");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double eps = 0.25;

    for (int instance = 0; instance < 3; ++instance) {
        // Random disjoint A, B and f supported on their union, f <= 1-eps on A.
        std::vector<std::int64_t> idx(static_cast<std::size_t>(p));
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        const std::int64_t asz = std::max<std::int64_t>(2, p / 3), bsz = p / 4;
        SurgeryPlan plan;
        plan.a = IndicatorSet(field);
        plan.b = IndicatorSet(field);
        for (std::int64_t i = 0; i < asz; ++i) plan.a.insert(idx[static_cast<std::size_t>(i)]);
        for (std::int64_t i = asz; i < asz + bsz; ++i)
            plan.b.insert(idx[static_cast<std::size_t>(i)]);
        plan.eps = eps;
        plan.beta = std::max(std::log(static_cast<double>(p)) / std::sqrt(static_cast<double>(p)) / eps, 0.05);
        plan.s_template = interval_lambda_check(1.0 - eps, field).s;
        plan.seed = seed;

        GridFn f(field, 0.0, true);
        for (std::int64_t n : plan.a.elements()) f.at(n) = (1.0 - eps) * unit(rng);
        for (std::int64_t n : plan.b.elements()) f.at(n) = unit(rng);

        const std::int64_t draws = p <= 31 ? p * p : samples;
        MomentReport mr = monte_carlo_moments(f, plan, draws, rng);
        const std::string tag = "levelprop_i" + std::to_string(instance);
        rep.verdict(tag + "_z0_upper", mr.z0_upper_ok,
                    "z0 " + std::to_string(mr.z0_mean) + " vs (1-eps^2/2) W0 + band");
        rep.verdict(tag + "_z0_band", mr.z0_in_band,
                    "pred " + std::to_string(mr.z0_pred));
        bool zi_all = true;
        for (bool b : mr.zi_in_band) zi_all &= b;
        rep.verdict(tag + "_zi_bands", zi_all, "six mixed-pattern classes");
        rep.verdict(tag + "_cov", mr.cov_ok,
                    "sampled covariance " + std::to_string(mr.cov_sample));
    }
}

void verify_bohr(RunReport& rep, const PrimeField& field, std::uint64_t seed) {
    const std::int64_t p = field.p;
    auto rng = make_stream(seed, "verify/bohr");
    std::uniform_int_distribution<std::int64_t> nonzero(1, p - 1);
    std::uniform_int_distribution<int> tsize(1, 3);
    std::uniform_real_distribution<double> epsr(std::max(3.0 / static_cast<double>(p), 0.05), 0.4);

    bool sym_ok = true, size_ok = true, riesz_ok = true;
    for (int i = 0; i < 50; ++i) {
        std::vector<std::int64_t> freqs;
        for (int j = tsize(rng); j > 0; --j) freqs.push_back(nonzero(rng));
        const BohrSet b = bohr_set(freqs, epsr(rng), field);
        for (std::int64_t n = 0; n < p; ++n)
            sym_ok &= b.members.contains(n) == b.members.contains(field.neg(n));
        const auto check = bohr_size_check(b);
        size_ok &= check.ok;
        riesz_ok &= check.riesz_ok;
    }
    rep.verdict("bohr_symmetry", sym_ok, "50 random frequency sets");
    rep.verdict("bohr_size_bound", size_ok, "(eps0 - 2/p)^t p lower bound");
    rep.verdict("bohr_riesz_certificate", riesz_ok, "|B| >= product-kernel mass");

    bool smooth_ok = true, spectral_ok = true, mean_ok = true;
    for (int i = 0; i < 20; ++i) {
        const GridFn f = random_density_fn(field, rng);
        const double eps0 = 0.2;
        const BohrSet b = bohr_set(large_spectrum(f, eps0), eps0, field);
        const GridFn f3 = smooth(f, b);
        mean_ok &= std::abs(f3.mean() - f.mean()) <= 1e-12;
        const auto err = smoothing_lambda_error(f, f3, eps0);
        smooth_ok &= err.ok;
        spectral_ok &= err.spectral_ok;
    }
    rep.verdict("smoothing_mean", mean_ok, "E(f3) = E(f)");
    rep.verdict("smoothing_lambda", smooth_ok, "|Lambda(f3) - Lambda(f)| <= 10 eps0");
    rep.verdict("smoothing_spectral", spectral_ok, "max |f3hat - fhat| <= eps0 p");
}

}  // namespace

RunReport cmd_verify(const VerifyParams& params) {
    RunReport rep;
    rep.begin("verify", params.seed);
    rep.params = {{"p", params.p}, {"suite", params.suite}, {"samples", params.samples}};
    const PrimeField field = make_field(params.p);

    const bool all = params.suite == "all";
    bool known = all;
    if (all || params.suite == "identities") {
        verify_identities(rep, field, params.seed);
        known = true;
    }
    if (all || params.suite == "varnavides") {
        verify_varnavides(rep, field, params.seed);
        known = true;
    }
    if (all || params.suite == "levelprop") {
        verify_levelprop(rep, field, params.seed, params.samples);
        known = true;
    }
    if (all || params.suite == "bohr") {
        verify_bohr(rep, field, params.seed);
        known = true;
    }
    if (!known) throw Error("unknown suite: " + params.suite);
    rep.end();
    return rep;
}

R3Outcome cmd_r3(const R3Params& params) {
    R3Outcome out;
    RunReport& rep = out.report;
    rep.begin("r3", 0);
    rep.params = {{"n", params.n}, {"budget", params.budget}};

    bool cache_hit = false;
    if (!params.cache_path.empty()) {
        const auto cache = load_r3_cache(params.cache_path);
        if (auto it = cache.find(params.n); it != cache.end()) {
            cache_hit = true;
            out.certificate.n = params.n;
            out.certificate.value = it->second.value;
            out.certificate.method = it->second.method;
            out.certificate.certified = true;
        }
    }
    if (!cache_hit) {
        out.certificate = r3_exact(params.n, params.budget);
        if (!params.cache_path.empty()) append_r3_cache(params.cache_path, out.certificate);
    }

    rep.metrics["value"] = out.certificate.value;
    rep.metrics["method"] = to_string(out.certificate.method);
    rep.metrics["nodes"] = out.certificate.nodes;
    rep.metrics["cache_hit"] = cache_hit;
    rep.metrics["witness"] = out.certificate.witness.members;
    if (!cache_hit) {
        out.certificate.witness.validate();
        rep.verdict("witness_ap_free", is_ap_free(out.certificate.witness), "post-verified");
    }
    rep.verdict("certified", out.certificate.certified,
                out.certificate.certified ? "search exhausted"
                                          : "budget ran out; value is a lower bound");
    rep.end();
    return out;
}

BehrendOutcome cmd_behrend(const BehrendParams& params) {
    BehrendOutcome out;
    RunReport& rep = out.report;
    rep.begin("behrend", 0);
    rep.params = {{"n", params.n}};

    const BehrendResult res = behrend_construct(params.n);
    out.set = res.set;
    rep.metrics["size"] = res.set.size();
    rep.metrics["q"] = res.q;
    rep.metrics["k"] = res.k;
    rep.metrics["radius2"] = res.radius2;
    rep.metrics["core_size"] = res.core_size;
    rep.verdict("ap_free", is_ap_free(res.set), "post-verified");

    if (params.n <= 40) {
        const R3Certificate exact = r3_exact(params.n, params.compare_budget);
        rep.metrics["r3_exact"] = exact.value;
        if (exact.certified)
            rep.verdict("within_r3", res.set.size() <= exact.value,
                        std::to_string(res.set.size()) + " <= " + std::to_string(exact.value));
    }
    rep.end();
    return out;
}

RunReport cmd_improve(const ImproveParams& params) {
    RunReport rep;
    rep.begin("improve", params.seed);
    rep.params = {{"p", params.p},
                  {"theta", params.theta},
                  {"eps", params.eps},
                  {"max_tries", params.max_tries}};

    const PrimeField field = make_field(params.p);
    MinimizerConfig cfg;
    cfg.theta = params.theta;
    cfg.seed = params.seed;
    cfg.max_iters = params.minimize_iters;
    cfg.restarts = params.minimize_restarts;
    const GridFn f = minimize(field, cfg).f;

    SurgeryPlan plan;
    plan.a = fuzzy_region(f, params.eps);
    plan.b = IndicatorSet(field);
    for (std::int64_t n = 0; n < params.p; ++n)
        if (f[n] != 0.0 && !plan.a.contains(n)) plan.b.insert(n);
    plan.eps = params.eps;
    plan.beta = std::log(static_cast<double>(params.p)) /
                std::sqrt(static_cast<double>(params.p)) / params.eps;
    plan.s_template = interval_lambda_check(1.0 - params.eps, field).s;
    plan.seed = params.seed;

    auto rng = make_stream(params.seed, "improve");
    const ImproveResult res = improve(f, plan, params.max_tries, rng);
    rep.metrics["lambda_f"] = res.lambda_f;
    rep.metrics["lambda_g"] = res.lambda_g;
    rep.metrics["mean_f"] = res.mean_f;
    rep.metrics["mean_g"] = res.mean_g;
    rep.metrics["w0"] = res.w0;
    rep.metrics["tries"] = res.tries;
    rep.metrics["repaired"] = res.repaired;
    rep.metrics["fuzzy_size"] = plan.a.count;
    rep.verdict("certified_regime", res.certified,
                res.certified ? "eps*beta >= p^{-1/2} log p" : "uncertified parameters");
    rep.verdict("accepted", res.accepted,
                res.accepted ? "surgery found within budget" : "no accepted draw");
    if (res.accepted) {
        rep.verdict("density_restored", res.mean_g >= res.mean_f - 1e-12,
                    "E(g) vs E(f) after fix-up");
    }
    rep.end();
    return rep;
}

RunReport cmd_bohr(const BohrParams& params) {
    RunReport rep;
    rep.begin("bohr", params.seed);
    rep.params = {{"p", params.p}, {"theta", params.theta}};

    const PrimeField field = make_field(params.p);
    MinimizerConfig cfg;
    cfg.theta = params.theta;
    cfg.seed = params.seed;
    cfg.max_iters = params.minimize_iters;
    cfg.restarts = params.minimize_restarts;
    const GridFn f = minimize(field, cfg).f;

    const ThirdBulletReport tb = third_bullet_pipeline(f, f.mean());
    rep.metrics["eps0"] = tb.eps0;
    rep.metrics["eps1"] = tb.eps1;
    rep.metrics["spectrum_size"] = static_cast<std::int64_t>(tb.spectrum.size());
    rep.metrics["bohr_size"] = tb.bohr_size;
    rep.metrics["bohr_lower"] = tb.bohr_lower;
    rep.metrics["regime_unsatisfied"] = tb.regime_unsatisfied;
    rep.metrics["size_above_sqrt_p"] = tb.size_above_sqrt_p;
    rep.metrics["lambda_error"] = tb.lambda_error;
    rep.metrics["spectral_max"] = tb.spectral_max;
    rep.metrics["fuzzy_size"] = tb.fuzzy_size;
    rep.metrics["rounding_distance_per_p"] = tb.rounding_distance_per_p;
    rep.metrics["sumset_metric"] = tb.sumset_metric;
    rep.verdict("lambda_error_bound", tb.lambda_error_ok, "|E| <= 10 eps0");
    rep.verdict("spectral_bound", tb.spectral_ok, "max |f3hat - fhat| <= eps0 p");
    rep.end();
    return rep;
}

}  // namespace ap3
