#include "ap3/bohr.hpp"

#include <algorithm>
#include <cmath>

#include "ap3/convolve.hpp"
#include "ap3/dft.hpp"
#include "ap3/lambda.hpp"
#include "ap3/minimizer.hpp"

namespace ap3 {
namespace {

// ||b n / p|| as a rational comparison: min(r, p-r) < eps * p with r = b n mod p.
bool within_band(const PrimeField& field, std::int64_t b, std::int64_t n, double eps) {
    const std::int64_t r = field.mul(b, n);
    const double dist = static_cast<double>(std::min(r, field.p - r));
    return dist < eps * static_cast<double>(field.p);
}

}  // namespace

std::vector<std::int64_t> large_spectrum(const GridFn& f, double eps0) {
    if (!(eps0 > 0.0 && eps0 < 1.0)) throw Error("eps0 must lie in (0,1)");
    const std::int64_t p = f.p();
    const Spectrum s = dft(f);
    const double gate = eps0 * static_cast<double>(p);
    std::vector<std::int64_t> out;
    for (std::int64_t b = 0; b < p; ++b)
        if (std::abs(s.coeffs[static_cast<std::size_t>(b)]) > gate) out.push_back(b);

    double e_f2 = 0.0;
    for (double v : f.values) e_f2 += v * v;
    e_f2 /= static_cast<double>(p);
    if (static_cast<double>(out.size()) > e_f2 / (eps0 * eps0) + 1e-9)
        throw Error("large spectrum exceeds the Parseval cardinality bound");
    return out;
}

BohrSet bohr_set(const std::vector<std::int64_t>& freqs, double eps0,
                 const PrimeField& field) {
    if (!(eps0 > 0.0 && eps0 <= 0.5)) throw Error("eps0 must lie in (0, 1/2]");
    BohrSet b;
    b.freqs = freqs;
    b.eps0 = eps0;
    b.members = IndicatorSet(field);
    for (std::int64_t n = 0; n < field.p; ++n) {
        bool in = true;
        for (auto bi : freqs) {
            if (!within_band(field, bi, n, eps0)) {
                in = false;
                break;
            }
        }
        if (in) b.members.insert(n);
    }
    return b;
}

BohrSizeCheck bohr_size_check(const BohrSet& b) {
    const PrimeField field = b.members.field;
    const std::int64_t p = field.p;
    const auto t = static_cast<double>(b.freqs.size());

    BohrSizeCheck out;
    const double base = std::max(b.eps0 - 2.0 / static_cast<double>(p), 0.0);
    out.lower = std::pow(base, t) * static_cast<double>(p);
    out.ok = static_cast<double>(b.size()) >= out.lower - 1e-9;

    // Riesz certificate: beta = prod_i (1_{D_i} * 1_{D_i}) / (eps0 p + 1) with
    // D_i the half-width window; beta maps into [0,1], is supported in B, so
    // its mass lower-bounds |B|. b_i = 0 gives the all-of-F_p window and no
    // constraint; skip it.
    std::vector<double> beta(static_cast<std::size_t>(p), 1.0);
    const double norm = b.eps0 * static_cast<double>(p) + 1.0;
    for (auto bi : b.freqs) {
        if (field.reduce(bi) == 0) continue;
        IndicatorSet window(field);
        for (std::int64_t n = 0; n < p; ++n)
            if (within_band(field, bi, n, b.eps0 / 2.0)) window.insert(n);
        const auto conv = convolve_indicator(window, window);
        for (std::int64_t n = 0; n < p; ++n)
            beta[static_cast<std::size_t>(n)] *= static_cast<double>(conv[static_cast<std::size_t>(n)]) / norm;
    }
    bool supported = true;
    double mass = 0.0;
    for (std::int64_t n = 0; n < p; ++n) {
        const double v = beta[static_cast<std::size_t>(n)];
        mass += v;
        if (v > 1e-12 && !b.members.contains(n)) supported = false;
        if (v > 1.0 + 1e-9) supported = false;
    }
    out.riesz_mass = mass;
    out.riesz_ok = supported && static_cast<double>(b.size()) >= mass - 1e-9;
    return out;
}

GridFn smooth(const GridFn& f, const BohrSet& b) {
    if (b.size() < 1) throw EmptyBohrSet();
    const std::int64_t p = f.p();
    GridFn mu(f.field);
    const double w = 1.0 / static_cast<double>(b.size());
    for (std::int64_t n : b.members.elements()) mu.at(n) = w;
    GridFn f3 = convolve(f, mu);
    f3.density = f.density;
    const auto [lo_it, hi_it] = std::minmax_element(f.values.begin(), f.values.end());
    for (double& v : f3.values) v = std::clamp(v, *lo_it, *hi_it);
    return f3;
}

SmoothingError smoothing_lambda_error(const GridFn& f, const GridFn& f3, double eps0,
                                      double tol) {
    SmoothingError out;
    out.e = lambda_direct(f3) - lambda_direct(f);
    out.ok = std::abs(out.e) <= 10.0 * eps0;
    const Spectrum sf = dft(f), s3 = dft(f3);
    for (std::size_t i = 0; i < sf.coeffs.size(); ++i)
        out.spectral_max = std::max(out.spectral_max, std::abs(s3.coeffs[i] - sf.coeffs[i]));
    out.spectral_ok = out.spectral_max <= eps0 * static_cast<double>(f.p()) + tol;
    return out;
}

double sumset_approx_metric(const IndicatorSet& a, const IndicatorSet& b,
                            const IndicatorSet& c) {
    if (b.count < 1) throw Error("sumset metric needs |B| >= 1");
    if (a.field != b.field || a.field != c.field) throw FieldMismatch();
    const std::int64_t p = a.p();
    const auto conv = convolve_indicator(a, b);
    double total = 0.0;
    for (std::int64_t n = 0; n < p; ++n) {
        const double target = c.contains(n) ? static_cast<double>(b.count) : 0.0;
        total += std::abs(static_cast<double>(conv[static_cast<std::size_t>(n)]) - target);
    }
    return total / (static_cast<double>(p) * static_cast<double>(b.count));
}

ThirdBulletReport third_bullet_pipeline(const GridFn& f, double theta) {
    const std::int64_t p = f.p();
    if (p < 29) throw Error("paper-parameter pipeline refuses p < 29");

    ThirdBulletReport rep;
    rep.theta = theta;
    const double logp = std::log(static_cast<double>(p));
    const double loglogp = std::max(std::log(logp), 1.0);  // floored below p = 16
    rep.eps0 = std::min(std::sqrt(theta * loglogp / logp), 0.5);
    rep.eps1 = std::pow(loglogp, -2.0 / 3.0);

    rep.spectrum = large_spectrum(f, rep.eps0);
    const BohrSet b = bohr_set(rep.spectrum, rep.eps0, f.field);
    rep.bohr_size = b.size();
    const auto size_check = bohr_size_check(b);
    rep.bohr_lower = size_check.lower;
    const double sqrt_p = std::sqrt(static_cast<double>(p));
    rep.regime_unsatisfied = size_check.lower < sqrt_p;
    rep.size_above_sqrt_p = static_cast<double>(rep.bohr_size) > sqrt_p;

    const GridFn f3 = smooth(f, b);
    const auto err = smoothing_lambda_error(f, f3, rep.eps0);
    rep.lambda_error = err.e;
    rep.lambda_error_ok = err.ok;
    rep.spectral_max = err.spectral_max;
    rep.spectral_ok = err.spectral_ok;

    // Fuzzy region of f3 at eps1; empty outright once eps1 >= 1/2, which is
    // the usual desk-scale regime.
    for (std::int64_t n = 0; n < p; ++n)
        if (f3[n] >= rep.eps1 && f3[n] <= 1.0 - rep.eps1) ++rep.fuzzy_size;

    const Rounding rounded = round_to_indicator(f3);
    rep.rounding_distance = rounded.dist;
    rep.rounding_distance_per_p = rounded.dist / static_cast<double>(p);
    rep.sumset_metric = sumset_approx_metric(rounded.c, b.members, rounded.c);
    return rep;
}

}  // namespace ap3
