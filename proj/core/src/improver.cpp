#include "ap3/improver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ap3/lambda.hpp"
#include "ap3/minimizer.hpp"

namespace ap3 {
namespace {

// Pattern bits (a, a+d, a+2d), A = 1, B = 0 -> Z index in the proof's order.
constexpr int kZIndex[8] = {7, 6, 5, 3, 4, 2, 1, 0};

}  // namespace

bool SurgeryPlan::certified() const {
    const double p = static_cast<double>(a.p());
    return eps * beta >= std::log(p) / std::sqrt(p);
}

void SurgeryPlan::validate(const GridFn& f) const {
    if (a.field != f.field || b.field != f.field || s_template.field != f.field)
        throw FieldMismatch();
    if (!(eps > 0.0 && eps < 1.0 / 3.0)) throw Error("eps must lie in (0, 1/3)");
    if (!(beta > 0.0)) throw Error("beta must be positive");
    for (std::int64_t n = 0; n < f.p(); ++n) {
        const bool in_a = a.contains(n), in_b = b.contains(n);
        if (in_a && in_b) throw Error("A and B must be disjoint");
        if (in_a && f[n] > 1.0 - eps + 1e-12)
            throw Error("f must be <= 1 - eps on A");
        if (!in_a && !in_b && f[n] != 0.0)
            throw Error("support(f) must be contained in A union B");
    }
}

IndicatorSet dilate_translate(const IndicatorSet& s, std::int64_t m, std::int64_t t) {
    if (s.count == 0) throw Error("dilating an empty set");
    IndicatorSet out(s.field);
    for (std::int64_t e : s.elements()) out.insert(s.field.add(s.field.mul(m, e), t));
    return out;
}

IndicatorSet random_dilate_translate(const IndicatorSet& s, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> any(0, s.p() - 1);
    const std::int64_t m = any(rng), t = any(rng);
    return dilate_translate(s, m, t);
}

GridFn build_g(const GridFn& f, const SurgeryPlan& plan, const IndicatorSet& t) {
    GridFn g(f.field, 0.0, true);
    const double scale = 1.0 / (1.0 - plan.eps);
    for (std::int64_t n = 0; n < f.p(); ++n) {
        if (plan.b.contains(n)) {
            g.at(n) = f[n];
        } else if (plan.a.contains(n)) {
            const double v = t.contains(n) ? scale * f[n] : 0.0;
            if (v > 1.0 + 1e-12) throw RangeViolation();  // f > 1 - eps on A
            g.at(n) = std::min(v, 1.0);
        }
    }
    return g;
}

std::array<double, 8> progression_class_sums(const GridFn& v, const SurgeryPlan& plan) {
    const std::int64_t p = v.p();
    // 1 = A, 0 = B, 2 = outside the support (triple contributes nothing).
    std::vector<int> cls(static_cast<std::size_t>(p), 2);
    for (std::int64_t n = 0; n < p; ++n) {
        if (plan.a.contains(n)) cls[static_cast<std::size_t>(n)] = 1;
        else if (plan.b.contains(n)) cls[static_cast<std::size_t>(n)] = 0;
    }
    std::array<long double, 8> acc{};
    for (std::int64_t n = 0; n < p; ++n) {
        const int c0 = cls[static_cast<std::size_t>(n)];
        if (c0 == 2) continue;
        const double v0 = v.values[static_cast<std::size_t>(n)];
        if (v0 == 0.0) continue;
        std::int64_t j = n, k = n;
        for (std::int64_t d = 0; d < p; ++d) {
            const int c1 = cls[static_cast<std::size_t>(j)], c2 = cls[static_cast<std::size_t>(k)];
            if (c1 != 2 && c2 != 2) {
                acc[static_cast<std::size_t>(kZIndex[c0 * 4 + c1 * 2 + c2])] +=
                    v0 * v.values[static_cast<std::size_t>(j)] * v.values[static_cast<std::size_t>(k)];
            }
            ++j;
            if (j == p) j = 0;
            k += 2;
            if (k >= p) k -= p;
        }
    }
    std::array<double, 8> out{};
    for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(acc[static_cast<std::size_t>(i)]);
    return out;
}

ImproveResult improve(const GridFn& f, const SurgeryPlan& plan, std::int64_t max_tries,
                      std::mt19937_64& rng) {
    plan.validate(f);
    const std::int64_t p = f.p();
    const double p2 = static_cast<double>(p) * static_cast<double>(p);

    ImproveResult res;
    res.lambda_f = lambda_direct(f);
    res.mean_f = f.mean();
    res.w0 = progression_class_sums(f, plan)[0];
    res.certified = plan.certified();
    const double lambda_target = res.lambda_f - plan.eps * plan.eps * res.w0 / (4.0 * p2);
    const double mean_floor = res.mean_f - 2.0 * plan.beta;

    GridFn best = f;
    double best_lambda = std::numeric_limits<double>::infinity();
    bool found = false;
    for (res.tries = 1; res.tries <= max_tries; ++res.tries) {
        IndicatorSet t = plan.a.count == 0 ? IndicatorSet::full(f.field)
                                           : random_dilate_translate(plan.s_template, rng);
        GridFn g = build_g(f, plan, t);
        // No trust in the sampler: recompute both acceptance quantities.
        const double lg = lambda_direct(g);
        const double mg = g.mean();
        if (lg < best_lambda) {
            best_lambda = lg;
            best = g;
        }
        if (lg <= lambda_target && mg >= mean_floor) {
            res.accepted = true;
            res.g = std::move(g);
            found = true;
            break;
        }
    }
    if (!found) {
        res.g = std::move(best);
        res.lambda_g = best_lambda;
        res.mean_g = res.g.mean();
        return res;
    }

    // Fix-up: raise zeros of A back to 1, lowest gradient first, at most
    // ceil(2 beta p) of them, until the density is restored.
    const auto cap = static_cast<std::int64_t>(std::ceil(2.0 * plan.beta * static_cast<double>(p)));
    double mean_g = res.g.mean();
    if (mean_g < res.mean_f && cap > 0) {
        const GridFn grad = gradient_field(res.g);
        std::vector<std::int64_t> zeros;
        for (std::int64_t n : plan.a.elements())
            if (res.g[n] == 0.0) zeros.push_back(n);
        std::sort(zeros.begin(), zeros.end(), [&](std::int64_t u, std::int64_t v) {
            return grad[u] != grad[v] ? grad[u] < grad[v] : u < v;
        });
        for (std::int64_t n : zeros) {
            if (mean_g >= res.mean_f || res.repaired >= cap) break;
            res.g.at(n) = 1.0;
            ++res.repaired;
            mean_g += 1.0 / static_cast<double>(p);
        }
    }
    res.lambda_g = lambda_direct(res.g);
    res.mean_g = res.g.mean();
    return res;
}

MomentReport monte_carlo_moments(const GridFn& f, const SurgeryPlan& plan,
                                 std::int64_t samples, std::mt19937_64& rng, double slack_c) {
    plan.validate(f);
    if (samples < 100) throw Error("moment estimation needs samples >= 100");
    const std::int64_t p = f.p();
    const double p2 = static_cast<double>(p) * static_cast<double>(p);

    MomentReport rep;
    rep.samples = samples;
    rep.exhaustive = samples == p * p;
    rep.band = slack_c * static_cast<double>(p);
    rep.w = progression_class_sums(f, plan);

    const double lambda_f = lambda_direct(f);
    const double mean_f = f.mean();
    const double lambda_gate = lambda_f - plan.eps * plan.eps * rep.w[0] / (4.0 * p2);
    const double mean_gate = mean_f - 2.0 * plan.beta;

    // Covariance probe: the two smallest elements of A (when |A| >= 2).
    std::int64_t ca = -1, cb = -1;
    for (std::int64_t n = 0; n < p && cb < 0; ++n) {
        if (!plan.a.contains(n)) continue;
        (ca < 0 ? ca : cb) = n;
    }

    std::array<long double, 8> zsum{};
    long double gsum = 0.0L, gsq = 0.0L;
    long double prod_ab = 0.0L, sum_a = 0.0L, sum_b = 0.0L, prod_sq = 0.0L;
    std::int64_t successes = 0;

    std::uniform_int_distribution<std::int64_t> any(0, p - 1);
    std::int64_t draws = 0;
    auto one_draw = [&](std::int64_t m, std::int64_t t) {
        const IndicatorSet tset = dilate_translate(plan.s_template, m, t);
        const GridFn g = build_g(f, plan, tset);
        const auto z = progression_class_sums(g, plan);
        for (int i = 0; i < 8; ++i) zsum[static_cast<std::size_t>(i)] += z[static_cast<std::size_t>(i)];
        double gtot = 0.0;
        for (std::int64_t n : plan.a.elements()) gtot += g[n];
        gsum += gtot;
        gsq += static_cast<long double>(gtot) * gtot;
        if (ca >= 0 && cb >= 0) {
            const double va = g[ca], vb = g[cb];
            prod_ab += va * vb;
            prod_sq += static_cast<long double>(va) * va * vb * vb;
            sum_a += va;
            sum_b += vb;
        }
        double lambda_g = 0.0;
        for (int i = 0; i < 8; ++i) lambda_g += z[static_cast<std::size_t>(i)];
        lambda_g /= p2;
        if (lambda_g <= lambda_gate && g.mean() >= mean_gate) ++successes;
        ++draws;
    };

    if (rep.exhaustive) {
        for (std::int64_t m = 0; m < p; ++m)
            for (std::int64_t t = 0; t < p; ++t) one_draw(m, t);
    } else {
        for (std::int64_t i = 0; i < samples; ++i) one_draw(any(rng), any(rng));
    }

    const double ns = static_cast<double>(draws);
    rep.z0_mean = static_cast<double>(zsum[0] / ns);
    for (int i = 0; i < 6; ++i) {
        rep.zi_means[static_cast<std::size_t>(i)] =
            static_cast<double>(zsum[static_cast<std::size_t>(i + 1)] / ns);
        rep.zi_preds[static_cast<std::size_t>(i)] = rep.w[static_cast<std::size_t>(i + 1)];
    }
    rep.g_mean = static_cast<double>(gsum / ns);
    rep.g_mean_var = static_cast<double>(gsq / ns) - rep.g_mean * rep.g_mean;
    rep.success_rate = static_cast<double>(successes) / ns;

    const double lambda_s =
        static_cast<double>(lambda_count(plan.s_template)) / p2;
    const double scale3 = std::pow(1.0 - plan.eps, -3.0);
    rep.z0_pred = scale3 * lambda_s * rep.w[0];

    // Standard errors vanish in exhaustive mode (the mean is the expectation).
    auto se_allowance = [&](double second_moment_mean, double mean) {
        if (rep.exhaustive) return 0.0;
        const double var = std::max(0.0, second_moment_mean - mean * mean);
        return 4.0 * std::sqrt(var / ns);
    };

    rep.z0_upper_ok =
        rep.z0_mean <= (1.0 - plan.eps * plan.eps / 2.0) * rep.w[0] + rep.band;
    rep.z0_in_band = std::abs(rep.z0_mean - rep.z0_pred) <= rep.band;
    for (int i = 0; i < 6; ++i)
        rep.zi_in_band[static_cast<std::size_t>(i)] =
            std::abs(rep.zi_means[static_cast<std::size_t>(i)] -
                     rep.zi_preds[static_cast<std::size_t>(i)]) <= rep.band;

    if (ca >= 0 && cb >= 0) {
        const double mean_prod = static_cast<double>(prod_ab / ns);
        rep.cov_sample =
            mean_prod - static_cast<double>(sum_a / ns) * static_cast<double>(sum_b / ns);
        const double se = se_allowance(static_cast<double>(prod_sq / ns), mean_prod);
        rep.cov_ok = std::abs(rep.cov_sample) <= slack_c / static_cast<double>(p) + se;
    } else {
        rep.cov_ok = true;  // fewer than two points in A
    }
    return rep;
}

std::vector<GapAuditRow> minimality_gap_audit(const GridFn& f,
                                              const std::vector<double>& eps_schedule) {
    const std::int64_t p = f.p();
    const double p2 = static_cast<double>(p) * static_cast<double>(p);
    std::vector<GapAuditRow> rows;
    rows.reserve(eps_schedule.size());
    for (double eps : eps_schedule) {
        GapAuditRow row;
        row.eps = eps;
        const IndicatorSet a = fuzzy_region(f, eps);
        row.region_size = a.count;
        // W0 over triples inside A, diagonal included.
        long double w0 = 0.0L;
        for (std::int64_t n = 0; n < p; ++n) {
            if (!a.contains(n)) continue;
            std::int64_t j = n, k = n;
            for (std::int64_t d = 0; d < p; ++d) {
                if (a.contains(j) && a.contains(k))
                    w0 += static_cast<long double>(f[n]) * f[j] * f[k];
                ++j;
                if (j == p) j = 0;
                k += 2;
                if (k >= p) k -= p;
            }
        }
        row.w0 = static_cast<double>(w0);
        row.lambda_a = static_cast<double>(lambda_count(a)) / p2;
        row.rhs = 8.0 * std::pow(eps, -6.0) * std::log(static_cast<double>(p)) /
                  std::sqrt(static_cast<double>(p));
        row.satisfied = row.lambda_a <= row.rhs;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ap3
