#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ap3/lambda.hpp"
#include "ap3/rng.hpp"
#include "helpers.hpp"

using namespace ap3;

TEST_CASE("lambda_direct on constants and indicators") {
    const PrimeField f5 = make_field(5);
    CHECK(lambda_direct(GridFn(f5, 1.0, true)) == doctest::Approx(1.0).epsilon(1e-12));

    GridFn single(f5, 0.0, true);
    single.at(2) = 1.0;
    CHECK(lambda_direct(single) == doctest::Approx(1.0 / 25.0).epsilon(1e-12));

    const IndicatorSet s01 = IndicatorSet::from_elements(f5, {0, 1});
    CHECK(lambda_direct(s01.as_gridfn()) == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(oracle::lambda(s01.as_gridfn()) == doctest::Approx(0.08).epsilon(1e-12));
}

TEST_CASE("lambda_spectral matches the examples and the direct route") {
    const PrimeField f5 = make_field(5);
    CHECK(lambda_spectral(GridFn(f5, 1.0, true)) == doctest::Approx(1.0).epsilon(1e-12));

    const IndicatorSet s = IndicatorSet::from_elements(f5, {2, 3, 4});
    CHECK(lambda_spectral(s.as_gridfn()) == doctest::Approx(0.2).epsilon(1e-10));

    auto rng = make_stream(21, "test/lambda");
    for (std::int64_t p : {5, 7, 97, 499, 997}) {
        const PrimeField field = make_field(p);
        for (int i = 0; i < 10; ++i) {
            const GridFn f = oracle::random_density_fn(field, rng);
            CHECK(std::abs(lambda_spectral(f) - lambda_direct(f)) <= 1e-9);
        }
    }
}

TEST_CASE("count_t3 examples and the diagonal bridge") {
    const PrimeField f5 = make_field(5);
    CHECK(count_t3(IndicatorSet::full(f5)) == 20);
    CHECK(count_t3(IndicatorSet::from_elements(f5, {3})) == 0);
    CHECK(count_t3(IndicatorSet::from_elements(f5, {2, 3, 4})) == 2);

    auto rng = make_stream(22, "test/t3");
    const PrimeField field = make_field(53);
    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<std::int64_t> size(0, 53);
        const IndicatorSet s = oracle::random_set(field, size(rng), rng);
        CHECK(count_t3(s) == oracle::t3(s));
        // p^2 Lambda(S) = T3(S) + |S|
        const double p2lambda = lambda_direct(s.as_gridfn()) * 53.0 * 53.0;
        CHECK(p2lambda == doctest::Approx(static_cast<double>(count_t3(s) + s.count)).epsilon(1e-9));
    }
}

TEST_CASE("gradient field: closed forms and finite differences") {
    const PrimeField f7 = make_field(7);
    const GridFn ones(f7, 1.0, true);
    const GridFn g1 = gradient_field(ones);
    for (std::int64_t n = 0; n < 7; ++n) CHECK(g1[n] == doctest::Approx(21.0).epsilon(1e-12));

    GridFn delta(f7, 0.0, true);
    delta.at(0) = 1.0;
    const GridFn gd = gradient_field(delta);
    CHECK(gd[0] == doctest::Approx(3.0).epsilon(1e-12));
    for (std::int64_t n = 1; n < 7; ++n) CHECK(gd[n] == doctest::Approx(0.0).epsilon(1e-12));

    // The literal coefficient-1 field differs from the derivative.
    const GridFn glit = gradient_field_literal(ones);
    for (std::int64_t n = 0; n < 7; ++n) CHECK(glit[n] == doctest::Approx(14.0).epsilon(1e-12));

    const PrimeField field = make_field(53);
    auto rng = make_stream(23, "test/grad");
    GridFn h = oracle::random_density_fn(field, rng);
    for (auto& v : h.values) v = 0.1 + 0.8 * v;
    const GridFn g = gradient_field(h);
    const double eps = 1e-5;
    double worst = 0.0;
    for (std::int64_t n = 0; n < 53; ++n) {
        GridFn hp = h, hm = h;
        hp.at(n) += eps;
        hm.at(n) -= eps;
        const double fd = (oracle::lambda(hp) - oracle::lambda(hm)) / (2.0 * eps);
        worst = std::max(worst, std::abs(fd - g[n] / (53.0 * 53.0)));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("two_point_update: exact expansion") {
    const PrimeField f5 = make_field(5);
    GridFn delta(f5, 0.0, true);
    delta.at(0) = 1.0;
    LambdaCache cache = make_cache(delta);
    const LambdaCache zeroed = two_point_update(cache, 0, 1, 0.0, 0.0);
    CHECK(zeroed.lambda == doctest::Approx(0.0).epsilon(1e-15));

    // No-op update leaves Lambda unchanged exactly.
    const LambdaCache same = two_point_update(cache, 0, 1, delta[0], delta[1]);
    CHECK(same.lambda == cache.lambda);

    CHECK_THROWS_AS(two_point_update(cache, 0, 1, 1.5, 0.0), OutOfRange);
    CHECK_THROWS_AS(two_point_update(cache, 2, 2, 0.5, 0.5), Error);

    const PrimeField field = make_field(53);
    auto rng = make_stream(24, "test/twopoint");
    std::uniform_int_distribution<std::int64_t> any(0, 52);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    LambdaCache c = make_cache(oracle::random_density_fn(field, rng));
    double worst = 0.0, worst_grad = 0.0;
    for (int i = 0; i < 1000; ++i) {
        std::int64_t x = any(rng), y = any(rng);
        if (x == y) y = field.add(y, 1);
        c.apply_two_point(x, y, unit(rng), unit(rng));
        worst = std::max(worst, std::abs(c.lambda - oracle::lambda(c.h)));
    }
    const GridFn fresh = gradient_field(c.h);
    for (std::int64_t n = 0; n < 53; ++n)
        worst_grad = std::max(worst_grad, std::abs(c.grad[n] - fresh[n]));
    CHECK(worst <= 1e-10);
    CHECK(worst_grad <= 1e-8);
    CHECK(c.validate() <= 1e-8);
}

TEST_CASE("complement identity is exactly zero on the integer path") {
    const PrimeField f5 = make_field(5);
    CHECK(complement_identity_residual(IndicatorSet(f5)) == 0.0);
    CHECK(complement_identity_residual(IndicatorSet::full(f5)) == 0.0);
    CHECK(complement_identity_residual(IndicatorSet::from_elements(f5, {0, 1})) == 0.0);

    for (std::uint64_t mask = 0; mask < 32; ++mask) {
        IndicatorSet s(f5);
        for (std::int64_t i = 0; i < 5; ++i)
            if (mask & (1ULL << i)) s.insert(i);
        CHECK(complement_identity_residual_scaled(s) == 0);
    }

    const PrimeField field = make_field(97);
    auto rng = make_stream(25, "test/complement");
    std::uniform_int_distribution<std::int64_t> size(0, 97);
    for (int i = 0; i < 100; ++i)
        CHECK(complement_identity_residual_scaled(oracle::random_set(field, size(rng), rng)) == 0);
}

TEST_CASE("lambda is invariant under affine reindexing, exactly for indicators") {
    const PrimeField field = make_field(53);
    auto rng = make_stream(26, "test/lam-affine");
    std::uniform_int_distribution<std::int64_t> any(0, 52), nonzero(1, 52), size(0, 53);
    for (int i = 0; i < 20; ++i) {
        const GridFn f = oracle::random_density_fn(field, rng);
        const GridFn g = affine_reindex(f, nonzero(rng), any(rng));
        CHECK(std::abs(lambda_direct(f) - lambda_direct(g)) <= 1e-12);

        const IndicatorSet s = oracle::random_set(field, size(rng), rng);
        IndicatorSet moved(field);
        const std::int64_t a = nonzero(rng), b = any(rng);
        for (auto e : s.elements()) moved.insert(field.add(field.mul(a, e), b));
        CHECK(lambda_count(moved) == lambda_count(s));  // exact integer path
    }
}

TEST_CASE("interval_lambda_check: parity count pinned by enumeration") {
    const PrimeField f101 = make_field(101);
    // alpha = 0.8: T = {80..100}, 21 elements, 11 even and 10 odd. The exact
    // progression count of T (d = 0 included) is the number of same-parity
    // ordered pairs, 11^2 + 10^2 = 221; the enumeration oracle confirms.
    const IndicatorSet s = IndicatorSet::interval(f101, 80);
    const IndicatorSet t = s.complement();
    CHECK(t.count == 21);
    CHECK(oracle::t3(t) + t.count == 221);
    CHECK(lambda_count(t) == 221);

    const IntervalCheck chk = interval_lambda_check(0.8, f101);
    CHECK(chk.s.count == 80);
    CHECK(chk.lambda_t == doctest::Approx(221.0 / (101.0 * 101.0)).epsilon(1e-12));
    CHECK(chk.ok);

    const IntervalCheck chk7 = interval_lambda_check(0.7, f101);
    CHECK(chk7.ok);

    const PrimeField f5 = make_field(5);
    const IntervalCheck full = interval_lambda_check(1.0, f5);
    CHECK(full.lambda_s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(full.ok);

    CHECK_THROWS_AS(interval_lambda_check(0.5, f101), AlphaOutOfRange);
}

TEST_CASE("spectral path flags a non-real progression sum") {
    // Hand-broken spectrum check: lambda_spectral on honest data never throws;
    // drive the tolerance to zero to see the guard trip.
    const PrimeField field = make_field(97);
    auto rng = make_stream(27, "test/nonreal");
    const GridFn f = oracle::random_density_fn(field, rng);
    CHECK_NOTHROW(lambda_spectral(f));
    CHECK_THROWS_AS(lambda_spectral(f, 0.0), NonRealResult);
}
