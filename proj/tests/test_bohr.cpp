#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ap3/bohr.hpp"
#include "ap3/lambda.hpp"
#include "ap3/minimizer.hpp"
#include "ap3/rng.hpp"
#include "helpers.hpp"

using namespace ap3;

TEST_CASE("large_spectrum on constants and deltas") {
    const PrimeField field = make_field(97);
    const double theta = 0.4;
    const auto spec = large_spectrum(GridFn(field, theta, true), 0.2);
    REQUIRE(spec.size() == 1);
    CHECK(spec[0] == 0);
    CHECK(large_spectrum(GridFn(field, theta, true), 0.5).empty());

    GridFn delta(field, 0.0, true);
    delta.at(0) = 1.0;
    CHECK(large_spectrum(delta, 0.1).empty());  // |fhat| = 1 < eps0 p
}

TEST_CASE("large_spectrum equals a brute scan on an interval indicator") {
    const PrimeField field = make_field(97);
    const GridFn f = IndicatorSet::interval(field, 48).as_gridfn();
    const auto spec = large_spectrum(f, 0.1);
    const auto coeffs = oracle::dft(f);
    std::vector<std::int64_t> brute;
    for (std::int64_t b = 0; b < 97; ++b)
        if (std::abs(coeffs[static_cast<std::size_t>(b)]) > 0.1 * 97.0) brute.push_back(b);
    CHECK(spec == brute);
    CHECK(std::is_sorted(spec.begin(), spec.end()));
}

TEST_CASE("bohr_set membership bands") {
    const PrimeField field = make_field(97);
    const BohrSet all = bohr_set({}, 0.3, field);
    CHECK(all.size() == 97);  // empty conjunction

    const BohrSet zero = bohr_set({0}, 0.1, field);
    CHECK(zero.size() == 97);  // ||0|| = 0 imposes nothing

    const BohrSet b = bohr_set({1}, 0.1, field);
    CHECK(b.size() == 19);
    for (std::int64_t n = 0; n <= 9; ++n) CHECK(b.members.contains(n));
    for (std::int64_t n = 88; n <= 96; ++n) CHECK(b.members.contains(n));
    CHECK_FALSE(b.members.contains(10));
    CHECK(b.members.contains(0));
}

TEST_CASE("bohr sets are symmetric and contain 0") {
    const PrimeField field = make_field(499);
    auto rng = make_stream(61, "test/bohr-sym");
    std::uniform_int_distribution<std::int64_t> freq(1, 498);
    std::uniform_real_distribution<double> eps(0.02, 0.45);
    for (int i = 0; i < 25; ++i) {
        const BohrSet b = bohr_set({freq(rng), freq(rng), freq(rng)}, eps(rng), field);
        CHECK(b.members.contains(0));
        for (std::int64_t n = 0; n < 499; ++n)
            CHECK(b.members.contains(n) == b.members.contains(field.neg(n)));
    }
}

TEST_CASE("bohr_size_check: explicit slack bound and Riesz certificate") {
    const PrimeField field = make_field(97);
    const BohrSet b = bohr_set({1}, 0.1, field);
    const BohrSizeCheck chk = bohr_size_check(b);
    CHECK(chk.lower == doctest::Approx((0.1 - 2.0 / 97.0) * 97.0).epsilon(1e-12));
    CHECK(chk.ok);  // 19 >= 7.7
    CHECK(chk.riesz_ok);
    CHECK(chk.riesz_mass <= 19.0 + 1e-9);

    const BohrSet empty_freqs = bohr_set({}, 0.2, field);
    const BohrSizeCheck chk0 = bohr_size_check(empty_freqs);
    CHECK(chk0.lower == doctest::Approx(97.0));
    CHECK(chk0.ok);
    CHECK(chk0.riesz_ok);

    auto rng = make_stream(62, "test/bohr-size");
    std::uniform_int_distribution<std::int64_t> freq(1, 96);
    const PrimeField f499 = make_field(499);
    std::uniform_int_distribution<std::int64_t> freq499(1, 498);
    std::uniform_real_distribution<double> eps(3.0 / 499.0, 0.4);
    for (int i = 0; i < 25; ++i) {
        const BohrSet rb = bohr_set({freq499(rng), freq499(rng), freq499(rng)}, eps(rng), f499);
        const BohrSizeCheck rchk = bohr_size_check(rb);
        CHECK(rchk.ok);
        CHECK(rchk.riesz_ok);
    }
}

TEST_CASE("smooth: full averaging, delta kernel, mean preservation") {
    const PrimeField field = make_field(97);
    auto rng = make_stream(63, "test/smooth");
    const GridFn f = oracle::random_density_fn(field, rng);

    const BohrSet full = bohr_set({}, 0.3, field);
    const GridFn avg = smooth(f, full);
    for (std::int64_t n = 0; n < 97; ++n)
        CHECK(avg[n] == doctest::Approx(f.mean()).epsilon(1e-12));

    BohrSet delta;
    delta.eps0 = 0.01;
    delta.members = IndicatorSet::from_elements(field, {0});
    const GridFn same = smooth(f, delta);
    for (std::int64_t n = 0; n < 97; ++n) CHECK(same[n] == doctest::Approx(f[n]).epsilon(1e-12));

    const BohrSet b = bohr_set({1}, 0.1, field);
    const GridFn f3 = smooth(f, b);
    CHECK(f3.mean() == doctest::Approx(f.mean()).epsilon(1e-13));
    const auto [mn, mx] = std::minmax_element(f.values.begin(), f.values.end());
    for (double v : f3.values) {
        CHECK(v >= *mn - 1e-12);
        CHECK(v <= *mx + 1e-12);
    }

    // Direct averaging ties out with the convolution route.
    for (std::int64_t n = 0; n < 97; ++n) {
        double acc = 0.0;
        for (auto e : b.members.elements()) acc += f[field.sub(n, e)];
        CHECK(f3[n] == doctest::Approx(acc / static_cast<double>(b.size())).epsilon(1e-9));
    }

    BohrSet empty;
    empty.members = IndicatorSet(field);
    CHECK_THROWS_AS(smooth(f, empty), EmptyBohrSet);
}

TEST_CASE("smoothing error: degenerate kernels give E = 0") {
    const PrimeField field = make_field(97);
    auto rng = make_stream(64, "test/smooth-err");
    const GridFn f = oracle::random_density_fn(field, rng);

    BohrSet delta;
    delta.eps0 = 0.1;
    delta.members = IndicatorSet::from_elements(field, {0});
    const GridFn same = smooth(f, delta);
    const SmoothingError e0 = smoothing_lambda_error(f, same, 0.1);
    CHECK(std::abs(e0.e) <= 1e-9);
    CHECK(e0.ok);

    const GridFn constant(field, 0.37, true);
    const BohrSet full = bohr_set({0}, 0.2, field);
    const GridFn c3 = smooth(constant, full);
    const SmoothingError e1 = smoothing_lambda_error(constant, c3, 0.2);
    CHECK(std::abs(e1.e) <= 1e-9);
    CHECK(e1.spectral_ok);
}

TEST_CASE("smoothing bounds hold on random indicators at p = 499") {
    const PrimeField field = make_field(499);
    auto rng = make_stream(65, "test/smooth-499");
    for (int i = 0; i < 10; ++i) {
        const IndicatorSet s = oracle::random_set(field, 200, rng);
        const GridFn f = s.as_gridfn();
        const double eps0 = 0.2;
        const BohrSet b = bohr_set(large_spectrum(f, eps0), eps0, field);
        const GridFn f3 = smooth(f, b);
        const SmoothingError err = smoothing_lambda_error(f, f3, eps0);
        CHECK(err.ok);
        CHECK(err.spectral_ok);
    }
}

TEST_CASE("sumset metric: delta kernel and empty sets vanish; structure wins") {
    const PrimeField field = make_field(97);
    const IndicatorSet c = IndicatorSet::interval(field, 48);
    const IndicatorSet b0 = IndicatorSet::from_elements(field, {0});
    CHECK(sumset_approx_metric(c, b0, c) == doctest::Approx(0.0));

    const IndicatorSet empty(field);
    CHECK(sumset_approx_metric(empty, b0, empty) == doctest::Approx(0.0));
    CHECK_THROWS_AS(sumset_approx_metric(c, empty, c), Error);

    // Against the Bohr kernel, the structured interval scores strictly lower
    // than random sets of the same size, trial by trial.
    const BohrSet bohr = bohr_set({1}, 0.1, field);
    const double structured = sumset_approx_metric(c, bohr.members, c);
    auto rng = make_stream(66, "test/sumset");
    for (int i = 0; i < 20; ++i) {
        const IndicatorSet rnd = oracle::random_set(field, 48, rng);
        CHECK(sumset_approx_metric(rnd, bohr.members, c) > structured);
    }
}

TEST_CASE("third bullet pipeline: guards and degenerate runs") {
    CHECK_THROWS_AS(third_bullet_pipeline(GridFn(make_field(13), 0.4, true), 0.4), Error);

    const PrimeField field = make_field(97);
    const GridFn constant(field, 0.4, true);
    const ThirdBulletReport rep = third_bullet_pipeline(constant, 0.4);
    CHECK(rep.spectrum == std::vector<std::int64_t>{0});
    CHECK(rep.bohr_size == 97);
    CHECK(rep.lambda_error_ok);
    CHECK(rep.spectral_ok);
    // f3 stays constant: rounding distance is p * min(theta, 1-theta).
    CHECK(rep.rounding_distance == doctest::Approx(97.0 * 0.4).epsilon(1e-9));

    MinimizerConfig cfg;
    cfg.theta = 0.3;
    cfg.seed = 9;
    cfg.max_iters = 2000;
    cfg.restarts = 4;
    const MinimizerState st = minimize(field, cfg);
    const ThirdBulletReport conv = third_bullet_pipeline(st.f, st.f.mean());
    CHECK(conv.lambda_error_ok);
    CHECK(conv.spectral_ok);
}
