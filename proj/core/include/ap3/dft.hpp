#pragma once

#include <complex>
#include <vector>

#include "ap3/grid.hpp"

namespace ap3 {

/// Fourier coefficients with the convention
///   coeffs[a] = sum_n f(n) exp(+2*pi*i*a*n/p),
/// so that coeffs[0] = sum_n f(n) and dft(f*g) = dft(f)*dft(g) pointwise.
struct Spectrum {
    PrimeField field;
    std::vector<std::complex<double>> coeffs;

    std::int64_t p() const { return field.p; }
};

/// Transform size at and below which the direct O(p^2) summation is used;
/// larger primes go through the chirp reduction to a power-of-two FFT.
inline constexpr std::int64_t kDirectDftThreshold = 2048;

Spectrum dft(const GridFn& f);
GridFn idft(const Spectrum& s);

// Complex-input transform (same convention); idft divides by p.
std::vector<std::complex<double>> dft_complex(const PrimeField& field,
                                              const std::vector<std::complex<double>>& x);
std::vector<std::complex<double>> idft_complex(const PrimeField& field,
                                               const std::vector<std::complex<double>>& x);

}  // namespace ap3
