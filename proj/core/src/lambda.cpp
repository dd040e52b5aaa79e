#include "ap3/lambda.hpp"

#include <cmath>

namespace ap3 {

double lambda_direct(const GridFn& f) {
    const std::int64_t p = f.p();
    const auto& v = f.values;
    long double acc = 0.0L;
    for (std::int64_t n = 0; n < p; ++n) {
        const double fn = v[static_cast<std::size_t>(n)];
        if (fn == 0.0) continue;
        std::int64_t b = n, c = n;  // b = n+d, c = n+2d
        long double row = 0.0L;
        for (std::int64_t d = 0; d < p; ++d) {
            row += static_cast<long double>(v[static_cast<std::size_t>(b)]) *
                   v[static_cast<std::size_t>(c)];
            ++b;
            if (b == p) b = 0;
            c += 2;
            if (c >= p) c -= p;
        }
        acc += fn * row;
    }
    const long double pp = static_cast<long double>(p) * p;
    return static_cast<double>(acc / pp);
}

double lambda_spectral(const GridFn& f, double tol) {
    const std::int64_t p = f.p();
    const Spectrum s = dft(f);
    std::complex<long double> acc(0.0L, 0.0L);
    for (std::int64_t a = 0; a < p; ++a) {
        const auto fa = s.coeffs[static_cast<std::size_t>(a)];
        const auto fm2a = s.coeffs[static_cast<std::size_t>(f.field.reduce(-2 * a))];
        const std::complex<long double> term =
            std::complex<long double>(fa) * std::complex<long double>(fa) *
            std::complex<long double>(fm2a);
        acc += term;
    }
    const long double ppp = static_cast<long double>(p) * p * p;
    const double re = static_cast<double>(acc.real() / ppp);
    const double im = static_cast<double>(acc.imag() / ppp);
    if (std::abs(im) > tol) throw NonRealResult(im);
    return re;
}

std::int64_t lambda_count(const IndicatorSet& s) {
    // sum_{x+y=2z, x,y,z in S} 1 = sum_{z in S} (1_S * 1_S)(2z)
    const std::int64_t p = s.p();
    const auto conv = convolve_indicator(s, s);
    std::int64_t total = 0;
    for (std::int64_t z = 0; z < p; ++z)
        if (s.member[static_cast<std::size_t>(z)])
            total += conv[static_cast<std::size_t>(s.field.reduce(2 * z))];
    return total;
}

std::int64_t count_t3(const IndicatorSet& s) { return lambda_count(s) - s.count; }

namespace {

GridFn gradient_from_convs(const GridFn& conv_hh, const GridFn& conv_hh2, double cross_coef) {
    const auto& fld = conv_hh.field;
    GridFn g(fld);
    for (std::int64_t n = 0; n < fld.p; ++n) {
        g.values[static_cast<std::size_t>(n)] =
            conv_hh[fld.reduce(2 * n)] + cross_coef * conv_hh2[fld.neg(n)];
    }
    return g;
}

}  // namespace

GridFn gradient_field(const GridFn& h) {
    return gradient_from_convs(convolve(h, h), convolve(h, half_reflect(h)), 2.0);
}

GridFn gradient_field_literal(const GridFn& h) {
    return gradient_from_convs(convolve(h, h), convolve(h, half_reflect(h)), 1.0);
}

void LambdaCache::rebuild() {
    conv_hh = convolve(h, h);
    conv_hh2 = convolve(h, half_reflect(h));
    grad = gradient_from_convs(conv_hh, conv_hh2, 2.0);
    // Lambda p^2 = sum_z h(z) (h*h)(2z)
    long double acc = 0.0L;
    for (std::int64_t z = 0; z < p(); ++z)
        acc += static_cast<long double>(h[z]) * conv_hh[h.field.reduce(2 * z)];
    lambda = static_cast<double>(acc / (static_cast<long double>(p()) * p()));
}

LambdaCache make_cache(const GridFn& h) {
    LambdaCache c;
    c.h = h;
    c.rebuild();
    return c;
}

void LambdaCache::apply_two_point(std::int64_t x, std::int64_t y, double vx, double vy) {
    const auto& fld = h.field;
    x = fld.reduce(x);
    y = fld.reduce(y);
    if (x == y) throw Error("two-point update requires x != y");
    if (!(vx >= 0.0 && vx <= 1.0 && vy >= 0.0 && vy <= 1.0)) throw OutOfRange();

    const std::int64_t pp = p();
    const double pm2 = 1.0 / (static_cast<double>(pp) * static_cast<double>(pp));
    const double hx = h[x], hy = h[y];
    const double dx = vx - hx, dy = vy - hy;

    // First-order terms plus the nine surviving corrections.
    lambda += pm2 * (dx * grad[x] + dy * grad[y]);
    lambda += pm2 * 3.0 * (dx * dx * hx + dy * dy * hy);
    lambda += pm2 * 2.0 * dx * dy *
              (h[fld.reduce(2 * x - y)] + h[fld.reduce(2 * y - x)] + h[fld.halve(x + y)]);
    lambda += pm2 * (dx * dx * dx + dy * dy * dy);

    // conv_hh(m) += 2 dx h(m-x) + 2 dy h(m-y), plus the delta-pair spikes.
    // conv_hh2(m) += dx h2(m-x) + dy h2(m-y) + dx h(m+2x) + dy h(m+2y) + spikes,
    // where h2(k) = h(-k/2); all lookups use h before mutation.
    for (std::int64_t m = 0; m < pp; ++m) {
        auto& chh = conv_hh.values[static_cast<std::size_t>(m)];
        chh += 2.0 * (dx * h[m - x] + dy * h[m - y]);
        auto& chh2 = conv_hh2.values[static_cast<std::size_t>(m)];
        chh2 += dx * h[fld.halve(x - m)] + dy * h[fld.halve(y - m)] +
                dx * h[m + 2 * x] + dy * h[m + 2 * y];
    }
    conv_hh.at(2 * x) += dx * dx;
    conv_hh.at(2 * y) += dy * dy;
    conv_hh.at(x + y) += 2.0 * dx * dy;
    conv_hh2.at(-x) += dx * dx;
    conv_hh2.at(-y) += dy * dy;
    conv_hh2.at(x - 2 * y) += dx * dy;
    conv_hh2.at(y - 2 * x) += dx * dy;

    h.at(x) = vx;
    h.at(y) = vy;
    for (std::int64_t n = 0; n < pp; ++n) {
        grad.values[static_cast<std::size_t>(n)] =
            conv_hh[fld.reduce(2 * n)] + 2.0 * conv_hh2[fld.neg(n)];
    }
}

double LambdaCache::validate() const {
    double worst = std::abs(lambda - lambda_direct(h));
    const GridFn fresh = gradient_field(h);
    for (std::int64_t n = 0; n < p(); ++n)
        worst = std::max(worst, std::abs(grad[n] - fresh[n]));
    return worst;
}

LambdaCache two_point_update(const LambdaCache& cache, std::int64_t x, std::int64_t y,
                             double vx, double vy) {
    LambdaCache out = cache;
    out.apply_two_point(x, y, vx, vy);
    return out;
}

std::int64_t complement_identity_residual_scaled(const IndicatorSet& s) {
    const std::int64_t p = s.p();
    const std::int64_t ns = lambda_count(s);
    const std::int64_t nt = lambda_count(s.complement());
    const std::int64_t k = s.count;
    // p^3 (Lambda(S)+Lambda(T)) - p^3 (1 - 3a + 3a^2), a = k/p
    return p * (ns + nt) - (p * p * p - 3 * k * p * p + 3 * k * k * p);
}

double complement_identity_residual(const IndicatorSet& s) {
    const double p = static_cast<double>(s.p());
    return static_cast<double>(complement_identity_residual_scaled(s)) / (p * p * p);
}

IntervalCheck interval_lambda_check(double alpha, const PrimeField& field, double c_t,
                                    double c_s) {
    if (!(alpha > 2.0 / 3.0 && alpha <= 1.0)) throw AlphaOutOfRange();
    const std::int64_t p = field.p;
    const auto m = static_cast<std::int64_t>(std::floor(alpha * static_cast<double>(p) + 1e-9));

    IntervalCheck out;
    out.s = IndicatorSet::interval(field, m);
    const double p2 = static_cast<double>(p) * static_cast<double>(p);
    out.lambda_s = static_cast<double>(lambda_count(out.s)) / p2;
    out.lambda_t = static_cast<double>(lambda_count(out.s.complement())) / p2;
    out.beta = 1.0 - static_cast<double>(m) / static_cast<double>(p);
    out.err_t = std::abs(out.lambda_t - out.beta * out.beta / 2.0);
    out.bound_s = alpha * alpha * alpha * (1.0 - (1.0 - alpha) * (1.0 - alpha) / 2.0) +
                  c_s / static_cast<double>(p);
    out.ok = out.err_t <= c_t / static_cast<double>(p) && out.lambda_s <= out.bound_s;
    return out;
}

}  // namespace ap3
