#include <doctest.h>

#include <cmath>
#include <random>

#include "coop2mac/fd.hpp"

using namespace coop2mac;

namespace {

// Reference instance used throughout: strong direct gain 100, weak 4,
// cooperation link 25, reverse link 10, all phases zero.
ChannelGains ref() { return {100.0, 4.0, 25.0, 10.0}; }

}  // namespace

TEST_CASE("no-cooperation pentagon") {
    const RateRegion r = no_coop_region(ref());
    CHECK(r.max_r1() == doctest::Approx(std::log2(101.0)));
    CHECK(r.max_r2() == doctest::Approx(std::log2(5.0)));
    CHECK(2.0 * r.support(0.5).value == doctest::Approx(std::log2(105.0)));
}

TEST_CASE("no-cooperation degenerate channels") {
    const RateRegion zero = no_coop_region({0.0, 0.0, 0.0, 0.0});
    CHECK(zero.max_r1() == doctest::Approx(0.0));
    CHECK(zero.max_r2() == doctest::Approx(0.0));

    const RateRegion unit = no_coop_region({1.0, 1.0, 0.0, 0.0});
    CHECK(unit.max_r1() == doctest::Approx(1.0));
    CHECK(unit.max_r2() == doctest::Approx(1.0));
    CHECK(2.0 * unit.support(0.5).value == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("ideal-cooperation sum bound") {
    CHECK(2.0 * ideal_coop_region(ref()).support(0.5).value ==
          doctest::Approx(std::log2(145.0)));
    const ChannelGains weakless{9.0, 0.0, 4.0, 0.0};
    CHECK(ideal_coop_region(weakless).support(1.0).value == doctest::Approx(std::log2(10.0)));
}

TEST_CASE("cut-set bounds at fixed correlation") {
    const CutsetBounds b0 = fd_cutset_at_rho(ref(), 0.0);
    CHECK(b0.r1 == doctest::Approx(std::log2(111.0)));
    CHECK(b0.r2 == doctest::Approx(std::log2(30.0)));
    CHECK(b0.sum == doctest::Approx(std::log2(105.0)));

    const CutsetBounds b1 = fd_cutset_at_rho(ref(), 1.0);
    CHECK(b1.r1 == doctest::Approx(0.0));
    CHECK(b1.r2 == doctest::Approx(0.0));
    CHECK(b1.sum == doctest::Approx(std::log2(145.0)));
}

TEST_CASE("outer bound facets") {
    const RateRegion o = fd_outer(ref());
    CHECK(o.max_r2() == doctest::Approx(std::log2(30.0)));
    CHECK(2.0 * o.support(0.5).value == doctest::Approx(std::log2(145.0)));

    // Without a cooperation link the R2 face matches the no-cooperation one.
    const ChannelGains no_link{100.0, 4.0, 0.0, 0.0};
    CHECK(fd_outer(no_link).max_r2() == doctest::Approx(std::log2(5.0)));
}

TEST_CASE("regime classification with boundaries to the lower regime") {
    const FdRegime r = fd_regime(ref());
    CHECK(r.tag == FdRegimeTag::Regime3);
    CHECK(r.t_low == doctest::Approx(4.0));
    CHECK(r.t_high == doctest::Approx(140.0));

    CHECK(fd_regime({100.0, 4.0, 4.0, 0.0}).tag == FdRegimeTag::Regime1);
    CHECK(fd_regime({100.0, 4.0, 140.0, 0.0}).tag == FdRegimeTag::Regime3);
    CHECK(fd_regime({100.0, 4.0, 141.0, 0.0}).tag == FdRegimeTag::Regime2);
}

TEST_CASE("outer corner with both facets active") {
    const FdCorner c = fd_corner_v3(ref());
    CHECK(c.t2 == doctest::Approx(std::log2(30.0)));
    CHECK(c.point.r1 == doctest::Approx(std::log2(145.0 / 30.0)));
    CHECK(c.point.r2 == doctest::Approx(std::log2(30.0)));

    const ChannelGains lonely{9.0, 0.0, 0.0, 0.0};
    const FdCorner cl = fd_corner_v3(lonely);
    CHECK(cl.point.r1 == doctest::Approx(std::log2(10.0)));
    CHECK(cl.point.r2 == doctest::Approx(0.0));
}

TEST_CASE("superposition power splits and stream rates") {
    const Regime3Rates r = fd_regime3_rates(ref());
    CHECK(r.delta1 == doctest::Approx(0.178571).epsilon(1e-5));
    CHECK(r.delta2 == doctest::Approx(0.25));
    CHECK(r.r_a_dest == doctest::Approx(2.1997).epsilon(1e-4));
    CHECK(r.r_b2_dest == doctest::Approx(2.1927).epsilon(1e-4));
    CHECK(r.r_b1_dest == doctest::Approx(1.3219).epsilon(1e-4));
    CHECK(r.r_b1_user1 == doctest::Approx(1.8425).epsilon(1e-4));
    CHECK(r.r_b2_user1 == doctest::Approx(2.8580).epsilon(1e-4));
    CHECK(r.r1_prime == doctest::Approx(2.1997).epsilon(1e-4));
    CHECK(r.r2_prime == doctest::Approx(3.5146).epsilon(1e-4));
    // Closed-form route for the weak user's total rate.
    CHECK(r.r2_prime == doctest::Approx(std::log2(1.0 + 4.0 + 25.0 * 10.0 / 14.0) - 1.0));
}

TEST_CASE("superposition degenerates without a cooperation link") {
    const Regime3Rates r = fd_regime3_rates({100.0, 4.0, 0.0, 0.0});
    CHECK(r.delta1 == doctest::Approx(0.0));
    CHECK(r.r_b2 == doctest::Approx(0.0));
}

TEST_CASE("weak low-gain channels send no fresh below-floor stream") {
    const Regime3Rates r = fd_regime3_rates({100.0, 0.5, 25.0, 0.0});
    CHECK(r.delta2 == doctest::Approx(1.0));
    CHECK(r.r_b1 == doctest::Approx(0.0));
}

TEST_CASE("decode-forward relay rate for the weak user") {
    const double rate = fd_relay_inner_rate(ref());
    CHECK(rate >= std::min(std::log2(26.0), std::log2(105.0)) - 1e-9);
    CHECK(rate <= fd_outer(ref()).support(0.0).value + 1e-9);

    CHECK(fd_relay_inner_rate({100.0, 4.0, 0.0, 0.0}) == doctest::Approx(std::log2(5.0)));
}

TEST_CASE("inner region composition") {
    const RateRegion in = fd_inner(ref());
    CHECK(in.contains({2.1997, 3.5146}, 1e-4));
    const RateRegion nc = no_coop_region(ref());
    for (const auto& v : nc.vertices()) {
        CHECK(in.contains(v, 1e-9));
    }
    for (const auto& v : in.vertices()) {
        CHECK(fd_outer(ref()).contains(v, 1e-9));
    }

    const RateRegion no_link = fd_inner({100.0, 4.0, 0.0, 0.0});
    const RateRegion pentagon = no_coop_region({100.0, 4.0, 0.0, 0.0});
    for (int i = 0; i <= 10; ++i) {
        const double mu = i / 10.0;
        CHECK(no_link.support(mu).value == doctest::Approx(pentagon.support(mu).value));
    }
}

TEST_CASE("gap audit on the reference instance") {
    const GapReport rep = fd_gap_audit(ref());
    CHECK(rep.regime == "regime3");
    CHECK(rep.region_gap_bits <= 2.0 + 1e-9);
    bool saw_r1 = false, saw_r2 = false;
    for (const auto& c : rep.corners) {
        if (c.label == "V3_R1") {
            saw_r1 = true;
            CHECK(c.delta_bits == doctest::Approx(0.0734).epsilon(1e-3));
            CHECK(c.delta_bits <= c.bound_bits);
        }
        if (c.label == "V3_R2") {
            saw_r2 = true;
            CHECK(c.delta_bits == doctest::Approx(1.3923).epsilon(1e-3));
            CHECK(c.delta_bits <= c.bound_bits);
        }
    }
    CHECK(saw_r1);
    CHECK(saw_r2);
}

TEST_CASE("symmetric direct links without cooperation: sum faces within one bit") {
    for (double s : {0.1, 1.0, 10.0, 1e3, 1e6}) {
        const ChannelGains g{s, s, 0.0, 0.0};
        // MISO sum face vs multiple-access sum face: log2(1+4s) - log2(1+2s) < 1.
        const double outer_sum = 2.0 * fd_outer(g).support(0.5).value;
        const double inner_sum = 2.0 * no_coop_region(g).support(0.5).value;
        CHECK(outer_sum - inner_sum < 1.0);
        // The full region gap is still within the two-bit certificate; the
        // extra bit lives in the uncapped R1 direction of the outer bound.
        CHECK(fd_gap_audit(g).region_gap_bits <= 2.0 + 1e-9);
        CHECK(check_shift_gap_literal(no_coop_region(g), fd_outer(g), 1.0 + 1e-6));
    }
}

TEST_CASE("random channels stay within the two-bit certificate") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        double a = u(rng), b = u(rng);
        if (a < b) std::swap(a, b);
        const ChannelGains g{std::pow(10.0, a), std::pow(10.0, b), std::pow(10.0, u(rng)),
                             std::pow(10.0, u(rng))};
        const GapReport rep = fd_gap_audit(g);
        CHECK(rep.region_gap_bits <= 2.0 + 1e-9);
    }
}

TEST_CASE("scalar mutual-information oracle") {
    CHECK(gaussian_mi_scalar(3.0, 1.0) == doctest::Approx(2.0));
    // Destination's first decoding stage of the common stream.
    const Regime3Rates r = fd_regime3_rates(ref());
    const double mi = gaussian_mi_scalar((1.0 - r.delta1) * 100.0,
                                         1.0 + r.delta1 * 100.0 + 4.0);
    CHECK(mi == doctest::Approx(r.r_a_dest).epsilon(1e-9));
    // The strong user decoding the fresh stream with the below-floor one as noise.
    const double mi_u1 = gaussian_mi_scalar((1.0 - r.delta2) * 25.0, 1.0 + r.delta2 * 25.0);
    CHECK(mi_u1 == doctest::Approx(1.8425).epsilon(1e-4));
}

TEST_CASE("log-det oracle matches the scalar route and rejects non-PSD input") {
    Eigen::MatrixXd cy(1, 1), cn(1, 1);
    cy << 4.0;
    cn << 1.0;
    CHECK(gaussian_mi_oracle(cy, cn) == doctest::Approx(2.0));

    // Identity-plus-rank-one covariance: both receive antennas observe the
    // same scalar input, so the pair is worth one scalar at the summed gain.
    const double p = 3.7, a = 25.0, b = 4.0;
    Eigen::MatrixXd c2(2, 2);
    c2 << 1.0 + a * p, std::sqrt(a * b) * p, std::sqrt(a * b) * p, 1.0 + b * p;
    CHECK(gaussian_mi_oracle(c2, Eigen::MatrixXd::Identity(2, 2)) ==
          doctest::Approx(gaussian_mi_scalar((a + b) * p, 1.0)).epsilon(1e-9));

    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(gaussian_mi_oracle(bad, Eigen::MatrixXd::Identity(2, 2)),
                    std::invalid_argument);
}
