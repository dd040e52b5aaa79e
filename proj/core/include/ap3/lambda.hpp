#pragma once

#include <cstdint>

#include "ap3/convolve.hpp"
#include "ap3/grid.hpp"

namespace ap3 {

struct NonRealResult : Error {
    explicit NonRealResult(double imag)
        : Error("spectral progression sum has imaginary residue " + std::to_string(imag)) {}
};
struct OutOfRange : Error {
    OutOfRange() : Error("perturbed values must lie in [0,1]") {}
};
struct AlphaOutOfRange : Error {
    AlphaOutOfRange() : Error("alpha must lie in (2/3, 1]") {}
};

/// Lambda(f) = p^{-2} sum_{n,d} f(n) f(n+d) f(n+2d), d = 0 included.
double lambda_direct(const GridFn& f);

/// Lambda via p^{-3} sum_a fhat(a)^2 fhat(-2a). Throws NonRealResult when the
/// imaginary residue exceeds tol (a transform bug, not a data condition).
double lambda_spectral(const GridFn& f, double tol = 1e-9);

/// Exact number of ordered pairs (a,d), d != 0, with a, a+d, a+2d all in S.
std::int64_t count_t3(const IndicatorSet& s);

/// Exact p^2 * Lambda(S) = count_t3(S) + |S| (the d = 0 terms are the |S| diagonal).
std::int64_t lambda_count(const IndicatorSet& s);

/// Gradient field G_h(n) = (h*h)(2n) + 2 (h*h2)(-n), h2(n) = h(-n/2).
/// Satisfies p^2 dLambda/dh(n) = G_h(n).
GridFn gradient_field(const GridFn& h);

/// The coefficient-1 variant (h*h)(2n) + (h*h2)(-n), kept for comparison;
/// it is not the derivative of Lambda.
GridFn gradient_field_literal(const GridFn& h);

/// Lambda plus its gradient field, maintained exactly under two-point
/// perturbations via the closed-form expansion (first-order terms plus the
/// nine quadratic/cubic corrections; the six remaining mixed terms vanish).
struct LambdaCache {
    GridFn h;
    double lambda = 0.0;
    GridFn conv_hh;    // h*h
    GridFn conv_hh2;   // h*h2
    GridFn grad;       // G_h

    std::int64_t p() const { return h.p(); }
    double grad_at(std::int64_t n) const { return grad[n]; }

    // In-place perturbation h(x) <- vx, h(y) <- vy; O(p) bookkeeping.
    void apply_two_point(std::int64_t x, std::int64_t y, double vx, double vy);

    // Recompute everything from h; used when incremental bookkeeping is off.
    void rebuild();

    // Distance of cached lambda/grad from a fresh recomputation.
    double validate() const;
};

LambdaCache make_cache(const GridFn& h);

/// Functional update returning the cache for h3 (= h off {x,y}, vx at x, vy at y).
LambdaCache two_point_update(const LambdaCache& cache, std::int64_t x, std::int64_t y,
                             double vx, double vy);

/// Lambda(S) + Lambda(T) - (1 - 3a + 3a^2), T the complement, a = |S|/p.
/// The integer path is exact: the double is 0 precisely when the identity holds.
double complement_identity_residual(const IndicatorSet& s);
std::int64_t complement_identity_residual_scaled(const IndicatorSet& s);  // residual * p^3

struct IntervalCheck {
    IndicatorSet s;
    double lambda_s = 0.0;
    bool ok = false;
    double lambda_t = 0.0;
    double beta = 0.0;
    double bound_s = 0.0;   // alpha^3 (1 - (1-alpha)^2/2) + C_S/p
    double err_t = 0.0;     // |lambda_t - beta^2/2|
};

/// Builds S = {0,...,floor(alpha p)-1} and checks the interval progression
/// bounds with explicit constants in place of the O(1/p) slack.
IntervalCheck interval_lambda_check(double alpha, const PrimeField& field,
                                    double c_t = 10.0, double c_s = 10.0);

}  // namespace ap3
