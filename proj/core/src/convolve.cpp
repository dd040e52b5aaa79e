#include "ap3/convolve.hpp"

namespace ap3 {

GridFn convolve_direct(const GridFn& f, const GridFn& g) {
    if (f.field != g.field) throw FieldMismatch();
    const std::int64_t p = f.p();
    GridFn out(f.field);
    for (std::int64_t m = 0; m < p; ++m) {
        const double fm = f.values[static_cast<std::size_t>(m)];
        if (fm == 0.0) continue;
        std::int64_t n = m;
        for (std::int64_t k = 0; k < p; ++k) {
            out.values[static_cast<std::size_t>(n)] += fm * g.values[static_cast<std::size_t>(k)];
            ++n;
            if (n == p) n = 0;
        }
    }
    return out;
}

GridFn convolve(const GridFn& f, const GridFn& g) {
    if (f.field != g.field) throw FieldMismatch();
    if (f.p() <= kDirectDftThreshold) return convolve_direct(f, g);
    auto fa = dft(f), ga = dft(g);
    Spectrum prod{f.field, fa.coeffs};
    for (std::size_t i = 0; i < prod.coeffs.size(); ++i) prod.coeffs[i] *= ga.coeffs[i];
    return idft(prod);
}

std::vector<std::int64_t> convolve_indicator(const IndicatorSet& a, const IndicatorSet& b) {
    if (a.field != b.field) throw FieldMismatch();
    const std::int64_t p = a.p();
    std::vector<std::int64_t> out(static_cast<std::size_t>(p), 0);
    const auto elems = a.elements();
    for (std::int64_t i : elems) {
        std::int64_t n = i;
        for (std::int64_t j = 0; j < p; ++j) {
            out[static_cast<std::size_t>(n)] += b.member[static_cast<std::size_t>(j)];
            ++n;
            if (n == p) n = 0;
        }
    }
    return out;
}

GridFn affine_reindex(const GridFn& f, std::int64_t a, std::int64_t b) {
    const auto& fld = f.field;
    if (fld.reduce(a) == 0) throw ZeroDilation();
    GridFn out(fld, 0.0, f.density);
    for (std::int64_t n = 0; n < fld.p; ++n) {
        std::int64_t src = fld.add(fld.mul(a, n), b);
        out.values[static_cast<std::size_t>(n)] = f.values[static_cast<std::size_t>(src)];
    }
    return out;
}

GridFn half_reflect(const GridFn& h) {
    return affine_reindex(h, h.field.neg(h.field.inv2), 0);
}

}  // namespace ap3
