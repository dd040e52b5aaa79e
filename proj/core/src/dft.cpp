#include "ap3/dft.hpp"

#include <cmath>
#include <numbers>

namespace ap3 {
namespace {

using cplx = std::complex<double>;

// Iterative radix-2 FFT, n a power of two. sign = -1 forward, +1 inverse
// (unnormalized); only used internally by the chirp path.
void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<cplx> direct_transform(const PrimeField& field, const std::vector<cplx>& x) {
    const std::int64_t p = field.p;
    std::vector<cplx> out(static_cast<std::size_t>(p));
    // Roots of unity tabulated once; exponents reduced mod p.
    std::vector<cplx> w(static_cast<std::size_t>(p));
    for (std::int64_t k = 0; k < p; ++k) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
        w[static_cast<std::size_t>(k)] = cplx(std::cos(ang), std::sin(ang));
    }
    for (std::int64_t a = 0; a < p; ++a) {
        cplx acc(0.0, 0.0);
        std::int64_t e = 0;  // a*n mod p, updated additively
        for (std::int64_t n = 0; n < p; ++n) {
            acc += x[static_cast<std::size_t>(n)] * w[static_cast<std::size_t>(e)];
            e += a;
            if (e >= p) e -= p;
        }
        out[static_cast<std::size_t>(a)] = acc;
    }
    return out;
}

// Bluestein: a*n = inv2*(a^2 + n^2 - (a-n)^2) mod p turns the prime-length
// transform into one linear convolution of length 2p-1, done at the next
// power of two.
std::vector<cplx> chirp_transform(const PrimeField& field, const std::vector<cplx>& x) {
    const std::int64_t p = field.p;
    const auto up = static_cast<std::size_t>(p);
    std::vector<cplx> chirp(up);  // chirp[k] = exp(+2 pi i (inv2 k^2 mod p)/p)
    for (std::int64_t k = 0; k < p; ++k) {
        std::int64_t e = field.mul(field.mul(k, k), field.inv2);
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(p);
        chirp[static_cast<std::size_t>(k)] = cplx(std::cos(ang), std::sin(ang));
    }
    std::size_t m = 1;
    while (m < 2 * up - 1) m <<= 1;
    std::vector<cplx> u(m, cplx(0, 0)), v(m, cplx(0, 0));
    for (std::size_t n = 0; n < up; ++n) u[n] = x[n] * chirp[n];
    // Kernel conj(chirp[|d|]) for lags d in (-p, p), wrapped cyclically.
    for (std::size_t d = 0; d < up; ++d) {
        v[d] = std::conj(chirp[d]);
        if (d > 0) v[m - d] = std::conj(chirp[d]);
    }
    fft_pow2(u, -1);
    fft_pow2(v, -1);
    for (std::size_t i = 0; i < m; ++i) u[i] *= v[i];
    fft_pow2(u, +1);
    const double scale = 1.0 / static_cast<double>(m);
    std::vector<cplx> out(up);
    for (std::size_t a = 0; a < up; ++a) out[a] = chirp[a] * u[a] * scale;
    return out;
}

}  // namespace

std::vector<cplx> dft_complex(const PrimeField& field, const std::vector<cplx>& x) {
    if (static_cast<std::int64_t>(x.size()) != field.p)
        throw Error("transform input length mismatch");
    if (field.p <= kDirectDftThreshold) return direct_transform(field, x);
    return chirp_transform(field, x);
}

std::vector<cplx> idft_complex(const PrimeField& field, const std::vector<cplx>& x) {
    std::vector<cplx> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = std::conj(x[i]);
    auto y = dft_complex(field, c);
    const double scale = 1.0 / static_cast<double>(field.p);
    for (auto& v : y) v = std::conj(v) * scale;
    return y;
}

Spectrum dft(const GridFn& f) {
    std::vector<cplx> x(f.values.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = cplx(f.values[i], 0.0);
    return Spectrum{f.field, dft_complex(f.field, x)};
}

GridFn idft(const Spectrum& s) {
    auto y = idft_complex(s.field, s.coeffs);
    GridFn f(s.field);
    for (std::size_t i = 0; i < y.size(); ++i) f.values[i] = y[i].real();
    return f;
}

}  // namespace ap3
