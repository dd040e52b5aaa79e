#pragma once

#include <cstdint>
#include <vector>

#include "ap3/grid.hpp"

namespace ap3 {

struct BadLength : Error {
    explicit BadLength(std::int64_t n)
        : Error("progression length " + std::to_string(n) + " out of range") {}
};

/// The family A_N of length-N arithmetic progressions in F_p, indexed by
/// (start a, step d != 0); |A_N| = p(p-1) exactly. Members are double
/// counted as sequences (a,d) and (a+(N-1)d, -d).
struct APFamily {
    PrimeField field;
    std::int64_t n = 0;

    APFamily(PrimeField f, std::int64_t len) : field(f), n(len) {
        if (len < 2 || len > f.p) throw BadLength(len);
    }
    std::int64_t size() const { return field.p * (field.p - 1); }
    std::vector<std::int64_t> member(std::int64_t a, std::int64_t d) const {
        std::vector<std::int64_t> out(static_cast<std::size_t>(n));
        std::int64_t x = field.reduce(a);
        for (auto& e : out) {
            e = x;
            x = field.add(x, d);
        }
        return out;
    }
};

// Full-family enumerations are O(p^2 N); keep them at desk scale by default.
inline constexpr std::int64_t kFamilyEnumCap = 512;

/// Exact number P of members of A_N containing a fixed nondegenerate 3-AP as
/// a subset. Independence of the base 3-AP is asserted on 10 samples, as is
/// |P - N^2/2| <= 2N.
std::int64_t containment_count(std::int64_t n, const PrimeField& field,
                               std::int64_t p_cap = kFamilyEnumCap);

/// sum_{A in A_N} T3(A cap S) - P * T3(S); identically 0.
/// T3 counts nondegenerate 3-APs of F_p inside the intersection as a set.
std::int64_t averaging_identity_residual(const IndicatorSet& s, std::int64_t n,
                                         std::int64_t p_cap = kFamilyEnumCap);

/// sum_{A in A_N} |A cap S| - (p-1) N |S|; identically 0.
std::int64_t slot_count_identity(const IndicatorSet& s, std::int64_t n,
                                 std::int64_t p_cap = kFamilyEnumCap);

struct VarnavidesVerdict {
    bool hypothesis_met = false;  // N |S| >= 2 r3 p
    std::int64_t y = 0;           // #{A : |A cap S| > r3}
    std::int64_t p_count = 0;     // containment count P
    std::int64_t t3 = 0;          // T3(S)
    bool y_bound_ok = false;      // N Y >= N (p-1)|S| - p(p-1) r3
    double lower_bound = 0.0;     // Y / P
    bool t3_meets_bound = false;  // P * T3(S) >= Y
};

/// Checks the exact-constant counting chain behind the averaging argument.
/// An unmet density hypothesis is reported, not thrown; the unconditional
/// chain values are still filled in.
VarnavidesVerdict varnavides_bound_check(const IndicatorSet& s, std::int64_t n,
                                         std::int64_t r3_value,
                                         std::int64_t p_cap = kFamilyEnumCap);

}  // namespace ap3
