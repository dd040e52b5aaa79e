#include "ap3/grid.hpp"

namespace ap3 {

void GridFn::validate() const {
    if (values.size() != static_cast<std::size_t>(field.p))
        throw Error("GridFn length does not match field size");
    if (density) {
        for (double v : values)
            if (!(v >= 0.0 && v <= 1.0))
                throw Error("density GridFn has a value outside [0,1]");
    }
}

IndicatorSet IndicatorSet::complement() const {
    IndicatorSet c(field);
    for (std::size_t i = 0; i < member.size(); ++i) c.member[i] = member[i] ? 0 : 1;
    c.count = field.p - count;
    return c;
}

std::vector<std::int64_t> IndicatorSet::elements() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < member.size(); ++i)
        if (member[i]) out.push_back(static_cast<std::int64_t>(i));
    return out;
}

GridFn IndicatorSet::as_gridfn() const {
    GridFn g(field, 0.0, true);
    for (std::size_t i = 0; i < member.size(); ++i)
        if (member[i]) g.values[i] = 1.0;
    return g;
}

IndicatorSet IndicatorSet::from_elements(PrimeField f, const std::vector<std::int64_t>& elems) {
    IndicatorSet s(f);
    for (auto e : elems) s.insert(e);
    return s;
}

IndicatorSet IndicatorSet::interval(PrimeField f, std::int64_t len) {
    if (len < 0 || len > f.p) throw Error("interval length out of range");
    IndicatorSet s(f);
    for (std::int64_t n = 0; n < len; ++n) s.insert(n);
    return s;
}

IndicatorSet IndicatorSet::full(PrimeField f) { return interval(f, f.p); }

}  // namespace ap3
