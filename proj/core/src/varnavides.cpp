#include "ap3/varnavides.hpp"

#include <algorithm>

#include "ap3/lambda.hpp"
#include "ap3/rng.hpp"

namespace ap3 {
namespace {

void check_scale(const PrimeField& field, std::int64_t n, std::int64_t p_cap) {
    if (n < 3 || n > field.p) throw BadLength(n);
    if (field.p > p_cap)
        throw Error("full-family enumeration capped at p <= " + std::to_string(p_cap));
}

// Number of (a,d) members of A_N containing {x, x+e, x+2e} as a subset:
// z is in the member (a,d) iff its position (z-a)/d lies in [0, N-1].
std::int64_t containment_of(const PrimeField& field, std::int64_t n, std::int64_t x,
                            std::int64_t e) {
    const std::int64_t p = field.p;
    const std::int64_t z1 = field.reduce(x);
    const std::int64_t z2 = field.add(z1, e);
    const std::int64_t z3 = field.add(z2, e);
    std::int64_t total = 0;
    for (std::int64_t d = 1; d < p; ++d) {
        const std::int64_t dinv = field.inverse(d);
        for (std::int64_t a = 0; a < p; ++a) {
            if (field.mul(z1 - a, dinv) < n && field.mul(z2 - a, dinv) < n &&
                field.mul(z3 - a, dinv) < n)
                ++total;
        }
    }
    return total;
}

}  // namespace

std::int64_t containment_count(std::int64_t n, const PrimeField& field, std::int64_t p_cap) {
    check_scale(field, n, p_cap);
    const std::int64_t base = containment_of(field, n, 0, 1);
    auto rng = make_stream(7, "varnavides/containment");
    std::uniform_int_distribution<std::int64_t> any(0, field.p - 1);
    std::uniform_int_distribution<std::int64_t> step(1, field.p - 1);
    for (int i = 0; i < 10; ++i) {
        if (containment_of(field, n, any(rng), step(rng)) != base)
            throw Error("containment count depends on the base 3-AP");
    }
    if (std::abs(2 * base - n * n) > 4 * n)  // |P - N^2/2| <= 2N
        throw Error("containment count drifted from N^2/2 by more than 2N");
    return base;
}

namespace {

// T3 of a small subset given via its element list; membership via stamps.
std::int64_t t3_of_subset(const PrimeField& field, const std::vector<std::int64_t>& elems,
                          std::vector<std::int64_t>& stamp, std::int64_t tick) {
    for (auto e : elems) stamp[static_cast<std::size_t>(e)] = tick;
    std::int64_t count = 0;
    for (auto x : elems)
        for (auto y : elems) {
            if (x == y) continue;
            const std::int64_t mid = field.halve(x + y);
            if (stamp[static_cast<std::size_t>(mid)] == tick) ++count;
        }
    return count;
}

}  // namespace

std::int64_t averaging_identity_residual(const IndicatorSet& s, std::int64_t n,
                                         std::int64_t p_cap) {
    check_scale(s.field, n, p_cap);
    const PrimeField field = s.field;
    const std::int64_t p = field.p;
    const std::int64_t pcount = containment_count(n, field, p_cap);

    std::vector<std::int64_t> stamp(static_cast<std::size_t>(p), -1);
    std::vector<std::int64_t> inter;
    inter.reserve(static_cast<std::size_t>(n));
    std::int64_t lhs = 0, tick = 0;
    for (std::int64_t a = 0; a < p; ++a) {
        for (std::int64_t d = 1; d < p; ++d) {
            inter.clear();
            std::int64_t x = a;
            for (std::int64_t j = 0; j < n; ++j) {
                if (s.member[static_cast<std::size_t>(x)]) inter.push_back(x);
                x += d;
                if (x >= p) x -= p;
            }
            if (inter.size() >= 3) lhs += t3_of_subset(field, inter, stamp, tick++);
        }
    }
    return lhs - pcount * count_t3(s);
}

std::int64_t slot_count_identity(const IndicatorSet& s, std::int64_t n, std::int64_t p_cap) {
    check_scale(s.field, n, p_cap);
    const std::int64_t p = s.p();
    std::int64_t lhs = 0;
    for (std::int64_t a = 0; a < p; ++a) {
        for (std::int64_t d = 1; d < p; ++d) {
            std::int64_t x = a;
            for (std::int64_t j = 0; j < n; ++j) {
                lhs += s.member[static_cast<std::size_t>(x)];
                x += d;
                if (x >= p) x -= p;
            }
        }
    }
    return lhs - (p - 1) * n * s.count;
}

VarnavidesVerdict varnavides_bound_check(const IndicatorSet& s, std::int64_t n,
                                         std::int64_t r3_value, std::int64_t p_cap) {
    check_scale(s.field, n, p_cap);
    const std::int64_t p = s.p();
    VarnavidesVerdict v;
    v.hypothesis_met = n * s.count >= 2 * r3_value * p;
    v.p_count = containment_count(n, s.field, p_cap);
    v.t3 = count_t3(s);

    for (std::int64_t a = 0; a < p; ++a) {
        for (std::int64_t d = 1; d < p; ++d) {
            std::int64_t hits = 0, x = a;
            for (std::int64_t j = 0; j < n; ++j) {
                hits += s.member[static_cast<std::size_t>(x)];
                x += d;
                if (x >= p) x -= p;
            }
            if (hits > r3_value) ++v.y;
        }
    }
    v.y_bound_ok = n * v.y >= n * (p - 1) * s.count - p * (p - 1) * r3_value;
    v.lower_bound = static_cast<double>(v.y) / static_cast<double>(v.p_count);
    v.t3_meets_bound = v.p_count * v.t3 >= v.y;
    return v;
}

}  // namespace ap3
