#include <doctest.h>

#include <array>
#include <random>

#include "coop2mac/lda.hpp"

using namespace coop2mac;

namespace {

BitVec bits(std::initializer_list<int> v) {
    BitVec out;
    for (int b : v) out.push_back(static_cast<std::uint8_t>(b));
    return out;
}

}  // namespace

TEST_CASE("down-shift moves levels and zero-fills the top") {
    CHECK(shift_down(bits({1, 0, 0, 0}), 1) == bits({0, 1, 0, 0}));
    CHECK(shift_down(bits({1, 1, 0, 0}), 3) == bits({0, 0, 0, 1}));
    CHECK(shift_down(bits({1, 1, 1, 1}), 4) == bits({0, 0, 0, 0}));
    CHECK(shift_down(bits({1, 0, 1}), 0) == bits({1, 0, 1}));
}

TEST_CASE("worked transmission example") {
    const LdaChannel ch{4, 1, 3};
    const auto [y1, y3] = lda_transmit(ch, bits({1, 0, 0, 0}), bits({1, 1, 0, 0}));
    CHECK(y1 == bits({0, 1, 1, 0}));
    CHECK(y3 == bits({1, 0, 0, 1}));
}

TEST_CASE("transmission degenerate cases") {
    const LdaChannel ch{4, 1, 3};
    const BitVec zero(4, 0);
    const BitVec x1 = bits({1, 0, 1, 1});
    const auto [y1, y3] = lda_transmit(ch, x1, zero);
    CHECK(y1 == zero);
    CHECK(y3 == shift_down(x1, 0));

    const LdaChannel deaf{4, 1, 0};
    const auto [y1d, y3d] = lda_transmit(deaf, x1, bits({1, 1, 1, 1}));
    CHECK(y1d == zero);

    CHECK_THROWS_AS(lda_transmit(ch, bits({1, 0}), zero), std::invalid_argument);
}

TEST_CASE("transmission is linear over GF(2)") {
    const LdaChannel ch{6, 2, 4};
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        BitVec x1(6), x2(6), u1(6), u2(6);
        for (int i = 0; i < 6; ++i) {
            x1[i] = rng() & 1;
            x2[i] = rng() & 1;
            u1[i] = rng() & 1;
            u2[i] = rng() & 1;
        }
        BitVec sx1(6), sx2(6);
        for (int i = 0; i < 6; ++i) {
            sx1[i] = x1[i] ^ u1[i];
            sx2[i] = x2[i] ^ u2[i];
        }
        const auto [ya1, ya3] = lda_transmit(ch, x1, x2);
        const auto [yb1, yb3] = lda_transmit(ch, u1, u2);
        const auto [ys1, ys3] = lda_transmit(ch, sx1, sx2);
        for (int i = 0; i < 6; ++i) {
            CHECK(ys1[i] == (ya1[i] ^ yb1[i]));
            CHECK(ys3[i] == (ya3[i] ^ yb3[i]));
        }
    }
}

TEST_CASE("pipeline achieves the asserted rate pair") {
    const LdaResult r = lda_scheme_run({5, 2, 4}, 200, 1);
    CHECK(r.decode_errors == 0);
    CHECK(r.r1_steady == doctest::Approx(1.0));
    CHECK(r.r2_steady == doctest::Approx(4.0));
    // Total throughput loses only the one-slot pipeline fill.
    CHECK(r.r1_total == doctest::Approx(1.0));
    CHECK(r.r2_total == doctest::Approx(4.0 - 2.0 / 200.0));
}

TEST_CASE("pure-relaying endpoint") {
    const LdaResult r = lda_scheme_run({4, 1, 4}, 50, 2);
    CHECK(r.decode_errors == 0);
    CHECK(r.r1_steady == doctest::Approx(0.0));
    CHECK(r.r2_steady == doctest::Approx(4.0));
}

TEST_CASE("pipeline preconditions") {
    CHECK_THROWS_AS(lda_scheme_run({4, 2, 2}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(lda_scheme_run({4, 1, 5}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(lda_scheme_run({4, 1, 3}, 1, 1), std::invalid_argument);
}

TEST_CASE("corner points for a generic exponent triple") {
    const GdofCornerSet c = gdof_corners({2.0, 0.5, 1.5, 0.0, 0.0});
    CHECK(c.v[1].r1 == doctest::Approx(2.0));
    CHECK(c.v[2].r1 == doctest::Approx(1.5));
    CHECK(c.v[2].r2 == doctest::Approx(0.5));
    CHECK(c.v[3].r1 == doctest::Approx(0.5));
    CHECK(c.v[3].r2 == doctest::Approx(1.5));
    CHECK(c.v[5].r2 == doctest::Approx(1.5));
    CHECK(c.v[6].r2 == doctest::Approx(1.1));
    CHECK(c.v[7].r2 == doctest::Approx(0.5));
}

TEST_CASE("corner coincidences at the regime boundaries") {
    // Cooperation link no stronger than the weak direct link.
    const GdofCornerSet low = gdof_corners({2.0, 0.5, 0.4, 0.0, 0.0});
    CHECK(low.v[3].r1 == low.v[2].r1);
    CHECK(low.v[3].r2 == low.v[2].r2);
    CHECK(low.v[6].r1 == low.v[7].r1);
    CHECK(low.v[6].r2 == low.v[7].r2);

    // Cooperation link at least as strong as the strong direct link.
    const GdofCornerSet high = gdof_corners({2.0, 0.5, 2.5, 0.0, 0.0});
    CHECK(high.v[3].r1 == high.v[4].r1);
    CHECK(high.v[3].r2 == high.v[4].r2);
}

TEST_CASE("relay corner is monotone in the cooperation exponent") {
    double prev = 0.0;
    for (double b1 = 0.6; b1 <= 40.0; b1 += 0.7) {
        const GdofCornerSet c = gdof_corners({2.0, 0.5, b1, 0.0, 0.0});
        CHECK(c.v[6].r2 >= prev - 1e-12);
        prev = c.v[6].r2;
    }
    CHECK(prev < 2.0);
    CHECK(prev > 1.9);  // approaches beta_max from below
}

TEST_CASE("mode regions nest: FD contains HD contains no cooperation") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        double bmax = u(rng), bmin = u(rng);
        if (bmax < bmin) std::swap(bmax, bmin);
        const GdofCornerSet c = gdof_corners({bmax, bmin, u(rng), 0.0, 0.0});
        const RateRegion fd = c.fd_region();
        const RateRegion hd = c.hd_region();
        for (const auto& v : hd.vertices()) CHECK(fd.contains(v, 1e-9));
        const std::array<RatePair, 3> nc = {c.v[0], c.v[1], c.v[2]};
        const RateRegion base = RateRegion::from_points(nc);
        for (const auto& v : base.vertices()) {
            CHECK(fd.contains(v, 1e-9));
            CHECK(hd.contains(v, 1e-9));
        }
    }
}

TEST_CASE("finite-SNR trajectories approach the corner predictions") {
    const GdofExponents e{2.0, 0.5, 1.5, 0.0, 0.0};
    const std::array<double, 1> snr = {1e12};
    const auto fd = gdof_limit_oracle(e, DuplexMode::FD, snr);
    REQUIRE(fd.size() == 1);
    const GdofCornerSet corners = gdof_corners(e);
    const std::array<RatePair, 4> fd_targets = {corners.v[0], corners.v[1], corners.v[3],
                                                corners.v[5]};
    for (const auto& v : fd.front().outer_norm) {
        double best = 1e9;
        for (const auto& t : fd_targets) {
            best = std::min(best, std::max(std::abs(v.r1 - t.r1), std::abs(v.r2 - t.r2)));
        }
        CHECK(best <= 0.06);
    }

    const auto hd = gdof_limit_oracle(e, DuplexMode::HD, snr);
    bool near_v6 = false;
    for (const auto& v : hd.front().inner_norm) {
        if (std::abs(v.r1) <= 0.13 && std::abs(v.r2 - 1.1) <= 0.13) near_v6 = true;
    }
    CHECK(near_v6);
}
