#pragma once

#include "ap3/dft.hpp"
#include "ap3/grid.hpp"

namespace ap3 {

/// Cyclic convolution (f*g)(n) = sum_m f(m) g(n-m), unnormalized.
/// Direct O(p^2) summation below the transform threshold, spectral above.
GridFn convolve(const GridFn& f, const GridFn& g);

// Always-direct variant (oracle path and small sizes).
GridFn convolve_direct(const GridFn& f, const GridFn& g);

/// Exact integer convolution of indicator sets:
/// out[n] = #{(i,j) : i in A, j in B, i+j = n}.
std::vector<std::int64_t> convolve_indicator(const IndicatorSet& a, const IndicatorSet& b);

/// n |-> f(a*n + b); a must be nonzero (a bijection of F_p).
GridFn affine_reindex(const GridFn& f, std::int64_t a, std::int64_t b);

/// h2(n) = h(-n/2), the reindex used by the gradient field cross term.
GridFn half_reflect(const GridFn& h);

}  // namespace ap3
