#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ap3/field.hpp"

namespace ap3 {

struct RangeTooSmall : Error {
    explicit RangeTooSmall(std::int64_t n)
        : Error("construction needs N >= 8, got " + std::to_string(n)) {}
};

/// Subset of [1, N] in the integers (no wraparound), kept sorted.
struct IntSet {
    std::int64_t n = 0;
    std::vector<std::int64_t> members;

    std::int64_t size() const { return static_cast<std::int64_t>(members.size()); }
    void validate() const;
};

/// True iff no x, y, z in S with x != y and x + y = 2z (integer arithmetic).
bool is_ap_free(const IntSet& s);

enum class R3Method { exhaustive, branch_and_bound };

struct R3Certificate {
    std::int64_t n = 0;
    std::int64_t value = 0;
    IntSet witness;
    R3Method method = R3Method::branch_and_bound;
    bool certified = true;   // false when the node budget ran out
    std::int64_t nodes = 0;  // search nodes expanded
};

inline constexpr std::int64_t kDefaultR3Budget = 100'000'000;

/// Exact r3([N]) by depth-first branch and bound over 1..N with incremental
/// forbidden-midpoint counts. On budget exhaustion the certificate carries
/// the best-so-far lower bound, flagged uncertified.
R3Certificate r3_exact(std::int64_t n, std::int64_t budget = kDefaultR3Budget);

/// Exact r3([N]) by plain enumeration of all 2^N subsets (oracle route; N <= 26).
R3Certificate r3_exhaustive(std::int64_t n);

struct BehrendResult {
    IntSet set;
    std::int64_t q = 0, k = 0;      // chosen base and dimension
    std::int64_t radius2 = 0;       // squared radius of the digit sphere
    std::int64_t core_size = 0;     // sphere-class size before completion
};

/// Digit-sphere construction: base-q digits below q/2 on the most populous
/// Euclidean sphere, swept over q in [3,12], k in [2,6] with q^k <= N, then
/// completed greedily; the result is verified AP-free before returning.
BehrendResult behrend_construct(std::int64_t n);

const char* to_string(R3Method m);

}  // namespace ap3
