#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "ap3/convolve.hpp"
#include "ap3/dft.hpp"
#include "ap3/field.hpp"
#include "ap3/io.hpp"
#include "ap3/rng.hpp"
#include "helpers.hpp"

using namespace ap3;

TEST_CASE("make_field computes inv2 and rejects bad moduli") {
    CHECK(make_field(5).inv2 == 3);
    CHECK(make_field(7).inv2 == 4);
    CHECK_THROWS_AS(make_field(9), CompositeModulus);
    CHECK_THROWS_AS(make_field(2), EvenModulus);
    CHECK_THROWS_AS(make_field(1), CompositeModulus);
    for (std::int64_t p : {3, 97, 997, 9973})
        CHECK(make_field(p).mul(2, make_field(p).inv2) == 1);
}

TEST_CASE("dft of constants and deltas") {
    const PrimeField f5 = make_field(5);
    GridFn ones(f5, 1.0, true);
    const Spectrum s = dft(ones);
    CHECK(s.coeffs[0].real() == doctest::Approx(5.0).epsilon(1e-12));
    for (int a = 1; a < 5; ++a) CHECK(std::abs(s.coeffs[static_cast<std::size_t>(a)]) < 1e-12);

    GridFn delta(f5);
    delta.at(0) = 1.0;
    const Spectrum sd = dft(delta);
    for (int a = 0; a < 5; ++a)
        CHECK(std::abs(sd.coeffs[static_cast<std::size_t>(a)] - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("dft agrees with the term-by-term oracle at p=97") {
    const PrimeField field = make_field(97);
    auto rng = make_stream(11, "test/dft");
    const GridFn f = oracle::random_density_fn(field, rng);
    const auto expect = oracle::dft(f);
    const Spectrum got = dft(f);
    for (std::size_t a = 0; a < expect.size(); ++a)
        CHECK(std::abs(expect[a] - got.coeffs[a]) <= 1e-9);
}

TEST_CASE("conjugate symmetry and Parseval for real input") {
    const PrimeField field = make_field(499);
    auto rng = make_stream(12, "test/parseval");
    const GridFn f = oracle::random_density_fn(field, rng);
    const Spectrum s = dft(f);
    for (std::int64_t a = 1; a < 499; ++a)
        CHECK(std::abs(s.coeffs[static_cast<std::size_t>(a)] -
                       std::conj(s.coeffs[static_cast<std::size_t>(499 - a)])) < 1e-8);
    double lhs = 0.0, rhs = 0.0;
    for (const auto& c : s.coeffs) lhs += std::norm(c);
    for (double v : f.values) rhs += v * v;
    rhs *= 499.0;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("round trip over the direct and chirp paths") {
    auto rng = make_stream(13, "test/roundtrip");
    for (std::int64_t p : {5, 97, 499, 2053, 4099, 9973}) {
        const PrimeField field = make_field(p);
        const GridFn f = oracle::random_density_fn(field, rng);
        const GridFn back = idft(dft(f));
        double worst = 0.0;
        for (std::int64_t n = 0; n < p; ++n) worst = std::max(worst, std::abs(back[n] - f[n]));
        CHECK_MESSAGE(worst <= 1e-10, "p=", p, " worst=", worst);
    }
}

TEST_CASE("convolution identities and the spectral route") {
    const PrimeField field = make_field(101);
    auto rng = make_stream(14, "test/conv");
    const GridFn f = oracle::random_density_fn(field, rng);
    const GridFn g = oracle::random_density_fn(field, rng);
    const GridFn h = oracle::random_density_fn(field, rng);

    GridFn delta(field);
    delta.at(0) = 1.0;
    const GridFn fd = convolve(f, delta);
    for (std::int64_t n = 0; n < 101; ++n) CHECK(fd[n] == doctest::Approx(f[n]).epsilon(1e-12));

    GridFn ones(field, 1.0);
    const GridFn oo = convolve(ones, ones);
    for (std::int64_t n = 0; n < 101; ++n) CHECK(oo[n] == doctest::Approx(101.0).epsilon(1e-12));

    const GridFn expect = oracle::convolve(f, g);
    const GridFn got = convolve(f, g);
    for (std::int64_t n = 0; n < 101; ++n) CHECK(std::abs(expect[n] - got[n]) <= 1e-9);

    // dft(f*g) = dft(f) dft(g)
    const Spectrum prod = dft(got), sf = dft(f), sg = dft(g);
    for (std::size_t a = 0; a < 101; ++a)
        CHECK(std::abs(prod.coeffs[a] - sf.coeffs[a] * sg.coeffs[a]) <= 1e-7);

    // commutes and associates
    const GridFn gf = convolve(g, f);
    for (std::int64_t n = 0; n < 101; ++n) CHECK(std::abs(gf[n] - got[n]) <= 1e-9);
    const GridFn left = convolve(convolve(f, g), h);
    const GridFn right = convolve(f, convolve(g, h));
    for (std::int64_t n = 0; n < 101; ++n) CHECK(std::abs(left[n] - right[n]) <= 1e-9);

    CHECK_THROWS_AS(convolve(f, oracle::random_density_fn(make_field(103), rng)), FieldMismatch);
}

TEST_CASE("indicator convolution counts representations exactly") {
    const PrimeField field = make_field(97);
    auto rng = make_stream(15, "test/indconv");
    const IndicatorSet a = oracle::random_set(field, 40, rng);
    const IndicatorSet b = oracle::random_set(field, 23, rng);
    const auto conv = convolve_indicator(a, b);
    for (std::int64_t n = 0; n < 97; ++n) {
        std::int64_t direct = 0;
        for (std::int64_t i = 0; i < 97; ++i)
            if (a.contains(i) && b.contains(n - i)) ++direct;
        CHECK(conv[static_cast<std::size_t>(n)] == direct);
    }
}

TEST_CASE("affine reindex: examples, inverse, multiset") {
    const PrimeField f5 = make_field(5);
    GridFn delta1(f5);
    delta1.at(1) = 1.0;
    const GridFn moved = affine_reindex(delta1, f5.neg(f5.inv2), 0);  // n -> f(-n/2)
    for (std::int64_t n = 0; n < 5; ++n) CHECK(moved[n] == (n == 3 ? 1.0 : 0.0));

    const PrimeField field = make_field(101);
    auto rng = make_stream(16, "test/affine");
    const GridFn f = oracle::random_density_fn(field, rng);
    CHECK_THROWS_AS(affine_reindex(f, 0, 3), ZeroDilation);

    const GridFn same = affine_reindex(f, 1, 0);
    CHECK(same.values == f.values);

    const std::int64_t a = 17, b = 42;
    const std::int64_t ainv = field.inverse(a);
    const GridFn there = affine_reindex(f, a, b);
    const GridFn back = affine_reindex(there, ainv, field.neg(field.mul(ainv, b)));
    CHECK(back.values == f.values);  // exact

    auto sorted_f = f.values, sorted_t = there.values;
    std::sort(sorted_f.begin(), sorted_f.end());
    std::sort(sorted_t.begin(), sorted_t.end());
    CHECK(sorted_f == sorted_t);  // exact multiset equality
}

TEST_CASE("GridFn and IndicatorSet CSV round trips") {
    const PrimeField field = make_field(53);
    auto rng = make_stream(17, "test/io");
    const GridFn f = oracle::random_density_fn(field, rng);
    std::stringstream ss;
    write_gridfn_csv(ss, f);
    const GridFn back = read_gridfn_csv(ss);
    CHECK(back.values == f.values);  // 17 significant digits round-trip doubles exactly

    const IndicatorSet s = oracle::random_set(field, 20, rng);
    std::stringstream si;
    write_indicator_csv(si, s);
    const IndicatorSet sback = read_indicator_csv(si, field);
    CHECK(sback == s);  // bit-exact requirement
    CHECK(sback.count == 20);
}

TEST_CASE("indicator invariants") {
    const PrimeField field = make_field(11);
    auto rng = make_stream(18, "test/ind");
    const IndicatorSet s = oracle::random_set(field, 4, rng);
    const GridFn g = s.as_gridfn();
    for (std::int64_t n = 0; n < 11; ++n) CHECK((g[n] == 0.0 || g[n] == 1.0));
    CHECK(s.complement().count == 7);
    CHECK(s.complement().complement() == s);
}
