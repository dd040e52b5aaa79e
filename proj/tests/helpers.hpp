#pragma once

// Test-side oracles: plain restatements of the definitions, kept independent
// of the library's evaluation paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "ap3/grid.hpp"

namespace oracle {

// Lambda(f) = p^{-2} sum_{n,d} f(n) f(n+d) f(n+2d), d = 0 included.
inline double lambda(const ap3::GridFn& f) {
    const std::int64_t p = f.p();
    long double acc = 0.0L;
    for (std::int64_t n = 0; n < p; ++n)
        for (std::int64_t d = 0; d < p; ++d)
            acc += static_cast<long double>(f[n]) * f[(n + d) % p] * f[(n + 2 * d) % p];
    return static_cast<double>(acc / (static_cast<long double>(p) * p));
}

// Ordered (a,d) pairs, d != 0, with a, a+d, a+2d in S.
inline std::int64_t t3(const ap3::IndicatorSet& s) {
    const std::int64_t p = s.p();
    std::int64_t count = 0;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t d = 1; d < p; ++d)
            if (s.contains(a) && s.contains((a + d) % p) && s.contains((a + 2 * d) % p))
                ++count;
    return count;
}

// fhat(a) = sum_n f(n) exp(2 pi i a n / p), one term at a time.
inline std::vector<std::complex<double>> dft(const ap3::GridFn& f) {
    const std::int64_t p = f.p();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(p));
    for (std::int64_t a = 0; a < p; ++a) {
        std::complex<double> acc{0.0, 0.0};
        for (std::int64_t n = 0; n < p; ++n) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(a) *
                               static_cast<double>(n) / static_cast<double>(p);
            acc += f[n] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[static_cast<std::size_t>(a)] = acc;
    }
    return out;
}

// (f*g)(n) = sum_m f(m) g(n-m).
inline ap3::GridFn convolve(const ap3::GridFn& f, const ap3::GridFn& g) {
    const std::int64_t p = f.p();
    ap3::GridFn out(f.field);
    for (std::int64_t n = 0; n < p; ++n) {
        double acc = 0.0;
        for (std::int64_t m = 0; m < p; ++m) acc += f[m] * g[((n - m) % p + p) % p];
        out.at(n) = acc;
    }
    return out;
}

inline ap3::GridFn random_density_fn(const ap3::PrimeField& field, std::mt19937_64& rng) {
    ap3::GridFn f(field, 0.0, true);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& v : f.values) v = unit(rng);
    return f;
}

inline ap3::IndicatorSet random_set(const ap3::PrimeField& field, std::int64_t size,
                                    std::mt19937_64& rng) {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(field.p));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::int64_t>(i);
    std::shuffle(idx.begin(), idx.end(), rng);
    ap3::IndicatorSet s(field);
    for (std::int64_t i = 0; i < size; ++i) s.insert(idx[static_cast<std::size_t>(i)]);
    return s;
}

}  // namespace oracle
