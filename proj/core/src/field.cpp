#include "ap3/field.hpp"

namespace ap3 {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeField make_field(std::int64_t p) {
    if (p == 2) throw EvenModulus();
    if (!is_prime(p)) throw CompositeModulus(p);
    PrimeField f;
    f.p = p;
    f.inv2 = (p + 1) / 2;
    return f;
}

std::int64_t PrimeField::pow(std::int64_t base, std::int64_t e) const {
    std::int64_t b = reduce(base), r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::int64_t PrimeField::inverse(std::int64_t a) const {
    a = reduce(a);
    if (a == 0) throw Error("0 has no inverse");
    return pow(a, p - 2);
}

}  // namespace ap3
