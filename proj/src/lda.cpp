#include "coop2mac/lda.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "coop2mac/fd.hpp"
#include "coop2mac/hd.hpp"

namespace coop2mac {

namespace {

BitVec slice(const BitVec& v, int from, int len) {
    return BitVec(v.begin() + from, v.begin() + from + len);
}

void place(BitVec& dst, int at, const BitVec& bits) {
    std::copy(bits.begin(), bits.end(), dst.begin() + at);
}

BitVec random_bits(std::mt19937_64& rng, int len) {
    BitVec v(len);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1u);
    return v;
}

}  // namespace

BitVec shift_down(const BitVec& x, int k) {
    const int n = static_cast<int>(x.size());
    BitVec y(n, 0);
    for (int i = k; i < n; ++i) y[i] = x[i - k];
    return y;
}

std::pair<BitVec, BitVec> lda_transmit(const LdaChannel& ch, const BitVec& x1, const BitVec& x2) {
    const int n = ch.n();
    if (static_cast<int>(x1.size()) != n || static_cast<int>(x2.size()) != n) {
        throw std::invalid_argument("lda_transmit: input vectors must have length n");
    }
    BitVec y1 = shift_down(x2, n - ch.beta_1);
    BitVec y3 = shift_down(x1, n - ch.beta_max);
    const BitVec x2_at_dest = shift_down(x2, n - ch.beta_min);
    for (int i = 0; i < n; ++i) y3[i] ^= x2_at_dest[i];
    return {std::move(y1), std::move(y3)};
}

LdaResult lda_scheme_run(const LdaChannel& ch, int num_slots, std::uint64_t seed) {
    if (!(0 <= ch.beta_min && ch.beta_min < ch.beta_1 && ch.beta_1 <= ch.beta_max)) {
        throw std::invalid_argument("lda_scheme_run: need 0 <= beta_min < beta_1 <= beta_max");
    }
    if (num_slots < 2) {
        throw std::invalid_argument("lda_scheme_run: need num_slots >= 2");
    }
    const int n = ch.n();  // = beta_max under the precondition above
    const int len_a = ch.beta_max - ch.beta_1;
    const int len_b1 = ch.beta_min;
    const int len_b2 = ch.beta_1 - ch.beta_min;

    std::mt19937_64 rng(seed);
    LdaResult res;
    res.log.slots.reserve(num_slots);

    BitVec relay(len_b2, 0);          // forwarded this slot, decoded last slot
    BitVec ahead_sent(len_b2, 0);     // payload sent one slot ahead by the weak user
    BitVec relay_next(len_b2, 0);     // what user 1 decoded for the next slot
    long long bits1 = 0, bits2 = 0;

    for (int t = 0; t < num_slots; ++t) {
        LdaSlotRecord rec;
        rec.slot = t;
        rec.a_sent = random_bits(rng, len_a);
        rec.b1_sent = random_bits(rng, len_b1);
        rec.b2_sent = random_bits(rng, len_b2);  // intended for slot t+1

        relay = relay_next;

        BitVec x1(n, 0), x2(n, 0);
        place(x1, 0, rec.a_sent);
        place(x1, len_a, relay);
        place(x2, 0, rec.b1_sent);
        place(x2, len_b1, rec.b2_sent);

        auto [y1, y3] = lda_transmit(ch, x1, x2);
        rec.y1 = y1;
        rec.y3 = y3;

        // User 1 observes the top beta_1 levels of X2, shifted down by n - beta_1.
        const BitVec b1_at_relay = slice(y1, n - ch.beta_1, len_b1);
        relay_next = slice(y1, n - ch.beta_1 + len_b1, len_b2);

        // Destination decodes top-down: a, forwarded b2, then b1.
        rec.a_decoded = slice(y3, 0, len_a);
        rec.b2_decoded = slice(y3, len_a, len_b2);
        rec.b1_decoded = slice(y3, len_a + len_b2, len_b1);

        rec.ok = rec.a_decoded == rec.a_sent && rec.b1_decoded == rec.b1_sent &&
                 b1_at_relay == rec.b1_sent && relay_next == rec.b2_sent &&
                 rec.b2_decoded == (t == 0 ? BitVec(len_b2, 0) : ahead_sent);
        if (!rec.ok) ++res.decode_errors;

        bits1 += len_a;
        bits2 += len_b1 + (t > 0 ? len_b2 : 0);
        ahead_sent = rec.b2_sent;
        res.log.slots.push_back(std::move(rec));
    }

    res.r1_steady = len_a;
    res.r2_steady = len_b1 + len_b2;  // = beta_1
    res.r1_total = static_cast<double>(bits1) / num_slots;
    res.r2_total = static_cast<double>(bits2) / num_slots;
    if (res.decode_errors != 0) {
        throw std::runtime_error("lda_scheme_run: decoded stream mismatch");
    }
    return res;
}

RateRegion GdofCornerSet::fd_region() const {
    const std::array<RatePair, 4> pts = {v[0], v[1], v[3], v[5]};
    return RateRegion::from_points(pts);
}

RateRegion GdofCornerSet::hd_region() const {
    const std::array<RatePair, 4> pts = {v[0], v[1], v[2], v[6]};
    return RateRegion::from_points(pts);
}

RateRegion GdofCornerSet::region(DuplexMode mode) const {
    return mode == DuplexMode::FD ? fd_region() : hd_region();
}

GdofCornerSet gdof_corners(const GdofExponents& e) {
    if (!(e.beta_max >= e.beta_min && e.beta_min >= 0.0 && e.beta_1 >= 0.0)) {
        throw std::invalid_argument("gdof_corners: need beta_max >= beta_min >= 0, beta_1 >= 0");
    }
    GdofCornerSet c;
    c.v[0] = {0.0, 0.0};
    c.v[1] = {e.beta_max, 0.0};
    c.v[2] = {e.beta_max - e.beta_min, e.beta_min};
    c.v[4] = {0.0, e.beta_max};
    c.v[7] = {0.0, e.beta_min};
    const double t = std::min(std::max(e.beta_1, e.beta_min), e.beta_max);
    c.v[3] = {e.beta_max - t, t};
    c.v[5] = {0.0, t};
    if (e.beta_1 > e.beta_min && e.beta_max > e.beta_min) {
        const double d_max = e.beta_max - e.beta_min;
        const double d_1 = e.beta_1 - e.beta_min;
        c.v[6] = {0.0, e.beta_min + d_max * d_1 / (d_max + d_1)};
    } else {
        c.v[6] = c.v[7];
    }
    return c;
}

std::vector<GdofTrajectoryPoint> gdof_limit_oracle(const GdofExponents& e, DuplexMode mode,
                                                   std::span<const double> snr_list) {
    std::vector<GdofTrajectoryPoint> out;
    out.reserve(snr_list.size());
    for (double snr : snr_list) {
        GdofExponents es = e;
        es.snr = snr;
        const ChannelGains g = gains_from_exponents(es);
        const RateRegion outer = mode == DuplexMode::FD ? fd_outer(g) : hd_outer(g);
        const RateRegion inner = mode == DuplexMode::FD ? fd_inner(g) : hd_inner(g);
        const double norm = std::log2(1.0 + snr);
        GdofTrajectoryPoint pt;
        pt.snr = snr;
        for (const auto& v : outer.vertices()) pt.outer_norm.push_back({v.r1 / norm, v.r2 / norm});
        for (const auto& v : inner.vertices()) pt.inner_norm.push_back({v.r1 / norm, v.r2 / norm});
        out.push_back(std::move(pt));
    }
    return out;
}

}  // namespace coop2mac
