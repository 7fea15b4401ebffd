#include <doctest.h>

#include <cmath>
#include <random>

#include "coop2mac/model.hpp"

using namespace coop2mac;

TEST_CASE("gains_from_exponents evaluates snr^beta") {
    const ChannelGains g = gains_from_exponents({1.0, 0.5, 0.75, 0.0, 100.0});
    CHECK(g.h_max_sq == doctest::Approx(100.0));
    CHECK(g.h_min_sq == doctest::Approx(10.0));
    CHECK(g.h_1_sq == doctest::Approx(31.6227766));
    CHECK(g.h_2_sq == doctest::Approx(1.0));
}

TEST_CASE("zero exponents give unit gains") {
    const ChannelGains g = gains_from_exponents({0.0, 0.0, 0.0, 0.0, 10.0});
    CHECK(g.h_max_sq == 1.0);
    CHECK(g.h_min_sq == 1.0);
    CHECK(g.h_1_sq == 1.0);
    CHECK(g.h_2_sq == 1.0);
}

TEST_CASE("large-exponent evaluation stays exact in double range") {
    const ChannelGains g = gains_from_exponents({2.0, 0.5, 1.5, 1.0, 1e6});
    CHECK(g.h_max_sq == doctest::Approx(1e12));
    CHECK(g.h_min_sq == doctest::Approx(1e3));
    CHECK(g.h_1_sq == doctest::Approx(1e9));
    CHECK(g.h_2_sq == doctest::Approx(1e6));
}

TEST_CASE("gains_from_exponents rejects bad inputs") {
    CHECK_THROWS_AS(gains_from_exponents({1.0, 0.5, 0.5, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(gains_from_exponents({1.0, 0.5, 0.5, 0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(gains_from_exponents({1.0, -0.1, 0.5, 0.0, 10.0}), std::invalid_argument);
    CHECK_THROWS_AS(gains_from_exponents({0.5, 1.0, 0.5, 0.0, 10.0}), std::invalid_argument);
}

TEST_CASE("normalize_gains relabels so the strong user is first") {
    SUBCASE("swap needed") {
        // Cross gains relabel together with the users: the link into the old
        // first user becomes the link into the new second user.
        const auto [g, swapped] = normalize_gains({4.0, 100.0, 10.0, 25.0});
        CHECK(swapped);
        CHECK(g.h_max_sq == 100.0);
        CHECK(g.h_min_sq == 4.0);
        CHECK(g.h_1_sq == 25.0);
        CHECK(g.h_2_sq == 10.0);
    }
    SUBCASE("already ordered") {
        const auto [g, swapped] = normalize_gains({100.0, 4.0, 25.0, 10.0});
        CHECK_FALSE(swapped);
        CHECK(g.h_max_sq == 100.0);
        CHECK(g.h_1_sq == 25.0);
    }
    SUBCASE("tie keeps original labels") {
        const auto [g, swapped] = normalize_gains({7.0, 7.0, 25.0, 10.0});
        CHECK_FALSE(swapped);
        CHECK(g.h_1_sq == 25.0);
    }
}

TEST_CASE("exponents round-trip through gains") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> beta(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        GdofExponents e{beta(rng), beta(rng), beta(rng), beta(rng), 1e4};
        if (e.beta_max < e.beta_min) std::swap(e.beta_max, e.beta_min);
        const ChannelGains g = gains_from_exponents(e);
        const GdofExponents back = exponents_from(g, e.snr);
        CHECK(back.beta_max == doctest::Approx(e.beta_max).epsilon(1e-12));
        CHECK(back.beta_min == doctest::Approx(e.beta_min).epsilon(1e-12));
        CHECK(back.beta_1 == doctest::Approx(e.beta_1).epsilon(1e-12));
        CHECK(back.beta_2 == doctest::Approx(e.beta_2).epsilon(1e-12));
    }
}

TEST_CASE("validate_gains rejects negatives and non-finite values") {
    CHECK_THROWS_AS(validate_gains({-1.0, 0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_gains({1.0, std::nan(""), 0.0, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(validate_gains({1.0, 0.0, 0.0, 0.0}));
}
