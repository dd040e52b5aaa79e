#pragma once

#include <cstdint>
#include <vector>

#include "ap3/field.hpp"

namespace ap3 {

/// Real-valued function on F_p. `density` marks functions constrained to
/// [0,1] (the f/h/r objects); intermediates such as convolutions leave it
/// unset and may take any real values.
struct GridFn {
    PrimeField field;
    std::vector<double> values;
    bool density = false;

    GridFn() = default;
    GridFn(PrimeField f, double fill = 0.0, bool density_flag = false)
        : field(f), values(static_cast<std::size_t>(f.p), fill), density(density_flag) {}

    std::int64_t p() const { return field.p; }
    double operator[](std::int64_t n) const { return values[static_cast<std::size_t>(field.reduce(n))]; }
    double& at(std::int64_t n) { return values[static_cast<std::size_t>(field.reduce(n))]; }

    double sum() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    // E(f) = p^{-1} sum_n f(n).
    double mean() const { return sum() / static_cast<double>(field.p); }

    // Checks the density invariant (values in [0,1]); throws Error on breach.
    void validate() const;
};

/// Subset of F_p, one byte per element plus a cached cardinality.
/// Used for S, T, A, B, C; all counting paths on indicators are exact.
struct IndicatorSet {
    PrimeField field;
    std::vector<std::uint8_t> member;
    std::int64_t count = 0;

    IndicatorSet() = default;
    explicit IndicatorSet(PrimeField f)
        : field(f), member(static_cast<std::size_t>(f.p), 0), count(0) {}

    std::int64_t p() const { return field.p; }
    bool contains(std::int64_t n) const {
        return member[static_cast<std::size_t>(field.reduce(n))] != 0;
    }
    void insert(std::int64_t n) {
        auto i = static_cast<std::size_t>(field.reduce(n));
        if (!member[i]) { member[i] = 1; ++count; }
    }
    void erase(std::int64_t n) {
        auto i = static_cast<std::size_t>(field.reduce(n));
        if (member[i]) { member[i] = 0; --count; }
    }

    IndicatorSet complement() const;
    std::vector<std::int64_t> elements() const;
    GridFn as_gridfn() const;  // {0,1}-valued density GridFn

    bool operator==(const IndicatorSet& o) const {
        return field == o.field && member == o.member;
    }

    static IndicatorSet from_elements(PrimeField f, const std::vector<std::int64_t>& elems);
    // {0, 1, ..., len-1}
    static IndicatorSet interval(PrimeField f, std::int64_t len);
    static IndicatorSet full(PrimeField f);
};

}  // namespace ap3
