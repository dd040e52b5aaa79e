#pragma once

#include <cstdint>
#include <vector>

#include "ap3/grid.hpp"

namespace ap3 {

struct EmptyBohrSet : Error {
    EmptyBohrSet() : Error("smoothing kernel needs a nonempty Bohr set") {}
};

/// B = {n : ||b_i n / p|| < eps0 for all i}, ||x|| the distance of x to the
/// nearest integer. Always contains 0 and is symmetric under negation.
struct BohrSet {
    std::vector<std::int64_t> freqs;
    double eps0 = 0.0;
    IndicatorSet members;

    std::int64_t size() const { return members.count; }
};

/// All b (0 included when it qualifies) with |fhat(b)| > eps0 * p, ascending.
/// Enforces the Parseval cardinality bound t <= E(f^2) eps0^{-2}.
std::vector<std::int64_t> large_spectrum(const GridFn& f, double eps0);

BohrSet bohr_set(const std::vector<std::int64_t>& freqs, double eps0, const PrimeField& field);

struct BohrSizeCheck {
    double lower = 0.0;       // (eps0 - 2/p)^t p, clamped at 0
    bool ok = false;          // |B| >= lower
    double riesz_mass = 0.0;  // total mass of the normalized window-square product
    bool riesz_ok = false;    // |B| >= riesz_mass and the product is supported in B
};

/// Size lower bound with explicit -2/p slack, plus the Riesz-product
/// certificate: the normalized product of window-square kernels is a [0,1]
/// function supported inside B, so its mass lower-bounds |B|.
BohrSizeCheck bohr_size_check(const BohrSet& b);

/// f3 = f * mu with mu uniform on B; preserves the mean and never expands
/// the range.
GridFn smooth(const GridFn& f, const BohrSet& b);

struct SmoothingError {
    double e = 0.0;            // Lambda(f3) - Lambda(f)
    bool ok = false;           // |e| <= 10 eps0
    double spectral_max = 0.0; // max_a |f3hat(a) - fhat(a)|
    bool spectral_ok = false;  // spectral_max <= eps0 p + tol
};

SmoothingError smoothing_lambda_error(const GridFn& f, const GridFn& f3, double eps0,
                                      double tol = 1e-9);

/// (p |B|)^{-1} sum_n |(1_A * 1_B)(n) - |B| 1_C(n)|.
double sumset_approx_metric(const IndicatorSet& a, const IndicatorSet& b,
                            const IndicatorSet& c);

struct ThirdBulletReport {
    double theta = 0.0;
    double eps0 = 0.0, eps1 = 0.0;
    std::vector<std::int64_t> spectrum;
    std::int64_t bohr_size = 0;
    double bohr_lower = 0.0;
    bool regime_unsatisfied = false;  // (eps0 - 2/p)^t p < sqrt(p)
    bool size_above_sqrt_p = false;
    double lambda_error = 0.0;
    bool lambda_error_ok = false;
    double spectral_max = 0.0;
    bool spectral_ok = false;
    std::int64_t fuzzy_size = 0;      // fuzzy region of f3 at eps1
    double rounding_distance = 0.0;   // sum |f3 - C|
    double rounding_distance_per_p = 0.0;
    double sumset_metric = 0.0;       // A = C, B = Bohr set, vs C
};

/// The full spectrum -> Bohr -> smoothing -> rounding chain at the paper's
/// parameter choices eps0 = sqrt(theta log log p / log p),
/// eps1 = (log log p)^{-2/3}; log log p is floored at 1 below p = 16 and the
/// chain refuses p < 29 outright.
ThirdBulletReport third_bullet_pipeline(const GridFn& f, double theta);

}  // namespace ap3
