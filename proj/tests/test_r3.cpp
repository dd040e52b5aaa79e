#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ap3/io.hpp"
#include "ap3/r3.hpp"

using namespace ap3;

TEST_CASE("is_ap_free examples") {
    CHECK(is_ap_free(IntSet{2, {1, 2}}));
    CHECK_FALSE(is_ap_free(IntSet{3, {1, 2, 3}}));
    CHECK(is_ap_free(IntSet{5, {1, 2, 4, 5}}));
    CHECK_FALSE(is_ap_free(IntSet{10, {2, 5, 8}}));
    CHECK(is_ap_free(IntSet{1, {}}));
}

TEST_CASE("r3 trivial values") {
    CHECK(r3_exact(1).value == 1);
    CHECK(r3_exact(2).value == 2);
    CHECK(r3_exhaustive(1).value == 1);
    CHECK(r3_exhaustive(2).value == 2);
}

TEST_CASE("branch-and-bound equals the subset sweep up to N = 20") {
    std::int64_t prev = 0;
    for (std::int64_t n = 1; n <= 20; ++n) {
        const R3Certificate bb = r3_exact(n);
        const R3Certificate sweep = r3_exhaustive(n);
        CHECK_MESSAGE(bb.value == sweep.value, "N=", n);
        CHECK(bb.certified);
        CHECK(is_ap_free(bb.witness));
        CHECK(static_cast<std::int64_t>(bb.witness.members.size()) == bb.value);
        bb.witness.validate();
        // Monotone, with unit steps.
        CHECK(bb.value >= prev);
        CHECK(bb.value <= prev + 1);
        prev = bb.value;
    }
}

TEST_CASE("spot values from the sweep oracle") {
    CHECK(r3_exhaustive(5).value == 4);
    CHECK(r3_exhaustive(9).value == 5);
    CHECK(r3_exact(5).value == 4);
    CHECK(r3_exact(9).value == 5);
}

TEST_CASE("budget exhaustion is flagged, value stays a lower bound") {
    const R3Certificate cert = r3_exact(40, 50);
    CHECK_FALSE(cert.certified);
    CHECK(cert.value >= 1);
    CHECK(is_ap_free(cert.witness));
    const R3Certificate full = r3_exact(40);
    CHECK(full.certified);
    CHECK(cert.value <= full.value);
}

TEST_CASE("behrend construction: verified, sized, within r3") {
    CHECK_THROWS_AS(behrend_construct(7), RangeTooSmall);

    const BehrendResult b10 = behrend_construct(10);
    CHECK(is_ap_free(b10.set));
    CHECK(b10.set.size() >= 4);
    CHECK(b10.set.size() <= r3_exact(10).value);

    for (std::int64_t n : {20, 40}) {
        const BehrendResult b = behrend_construct(n);
        CHECK(is_ap_free(b.set));
        b.set.validate();
        CHECK(b.set.size() <= r3_exact(n).value);
    }

    const BehrendResult big = behrend_construct(1000);
    CHECK(is_ap_free(big.set));
    CHECK(big.core_size >= 3);
    CHECK(big.set.size() >= big.core_size);
    CHECK(big.q >= 3);
}

TEST_CASE("certificate cache CSV round trip and provenance guard") {
    const std::string path = "/tmp/ap3_test_r3_cache.csv";
    std::remove(path.c_str());

    append_r3_cache(path, r3_exact(9));
    append_r3_cache(path, r3_exact(12));
    append_r3_cache(path, r3_exact(9));  // idempotent
    const auto cache = load_r3_cache(path);
    CHECK(cache.size() == 2);
    CHECK(cache.at(9).value == 5);
    CHECK(cache.at(12).value == 6);

    // Uncertified results must not be persisted.
    append_r3_cache(path, r3_exact(40, 50));
    CHECK(load_r3_cache(path).size() == 2);

    // Imported literature values (foreign method strings) are rejected.
    {
        std::ofstream os(path, std::ios::app);
        os << "99,31,literature\n";
    }
    CHECK_THROWS_AS(load_r3_cache(path), Error);
    std::remove(path.c_str());
}
