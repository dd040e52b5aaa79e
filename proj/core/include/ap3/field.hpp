#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ap3 {

// Base for all domain errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CompositeModulus : Error {
    explicit CompositeModulus(std::int64_t p)
        : Error("modulus " + std::to_string(p) + " is not prime") {}
};
struct EvenModulus : Error {
    EvenModulus() : Error("p = 2 has no usable inverse of 2") {}
};
struct FieldMismatch : Error {
    FieldMismatch() : Error("operands live over different prime fields") {}
};
struct ZeroDilation : Error {
    ZeroDilation() : Error("affine reindex requires a != 0") {}
};

/// Odd prime modulus with the precomputed inverse of 2.
/// All grid functions and sets carry one of these; p >= 3 and primality
/// are checked at construction.
struct PrimeField {
    std::int64_t p = 0;
    std::int64_t inv2 = 0;

    bool operator==(const PrimeField& o) const { return p == o.p; }
    bool operator!=(const PrimeField& o) const { return p != o.p; }

    // Reduce any 64-bit integer into [0, p).
    std::int64_t reduce(std::int64_t x) const {
        std::int64_t r = x % p;
        return r < 0 ? r + p : r;
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const {
        return reduce(reduce(a) * reduce(b));
    }
    std::int64_t neg(std::int64_t a) const { return reduce(-a); }
    // a / 2 mod p (the bijection behind h2(n) = h(-n/2)).
    std::int64_t halve(std::int64_t a) const { return mul(a, inv2); }
    std::int64_t pow(std::int64_t base, std::int64_t e) const;
    std::int64_t inverse(std::int64_t a) const;  // a != 0
};

bool is_prime(std::int64_t n);

/// Construct a PrimeField, verifying primality and p >= 3.
/// Throws EvenModulus for p = 2 and CompositeModulus otherwise when not prime.
PrimeField make_field(std::int64_t p);

}  // namespace ap3
