#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "coop2mac/geometry.hpp"
#include "coop2mac/model.hpp"

namespace coop2mac {

// Binary column vector, index 0 = strongest (top) level.
using BitVec = std::vector<std::uint8_t>;

// Noise-free binary-vector channel: a down-shift by (n - beta) levels models
// a link of strength beta, additions are bitwise mod 2.
struct LdaChannel {
    int beta_max = 0;
    int beta_min = 0;
    int beta_1 = 0;

    int n() const { return std::max({beta_max, beta_min, beta_1, 1}); }
};

// y[i] = x[i - k], top k levels zero.
BitVec shift_down(const BitVec& x, int k);

// (y1, y3) = (shift(x2, n - beta_1), shift(x1, n - beta_max) ^ shift(x2, n - beta_min)).
std::pair<BitVec, BitVec> lda_transmit(const LdaChannel& ch, const BitVec& x1, const BitVec& x2);

struct LdaSlotRecord {
    int slot = 0;
    BitVec a_sent, b1_sent, b2_sent;       // payloads injected this slot
    BitVec y1, y3;                         // received vectors
    BitVec a_decoded, b1_decoded, b2_decoded;
    bool ok = true;
};

struct LdaBlockLog {
    std::vector<LdaSlotRecord> slots;
};

struct LdaResult {
    double r1_steady = 0.0;  // bits/slot ignoring the one-slot pipeline fill
    double r2_steady = 0.0;
    double r1_total = 0.0;   // total decoded / num_slots
    double r2_total = 0.0;
    int decode_errors = 0;
    LdaBlockLog log;
};

// Runs the block-Markov relaying pipeline for num_slots slots of uniformly
// random payload bits: the weak user sends beta_min fresh bits plus
// beta_1 - beta_min bits one slot ahead below the destination's noise floor;
// the strong user decodes and forwards them next slot alongside its own
// beta_max - beta_1 fresh bits; the destination decodes slot by slot with no
// lookahead. Requires beta_min < beta_1 <= beta_max and num_slots >= 2.
LdaResult lda_scheme_run(const LdaChannel& ch, int num_slots, std::uint64_t seed);

enum class DuplexMode { FD, HD };

// The eight labeled gDoF corner points V0..V7 plus the mode's region hull.
struct GdofCornerSet {
    std::array<RatePair, 8> v{};
    RateRegion fd_region() const;
    RateRegion hd_region() const;
    RateRegion region(DuplexMode mode) const;
};

GdofCornerSet gdof_corners(const GdofExponents& e);

struct GdofTrajectoryPoint {
    double snr = 0.0;
    std::vector<RatePair> outer_norm;  // finite-SNR outer vertices / log2(1+snr)
    std::vector<RatePair> inner_norm;
};

// Finite-SNR regions normalized by log2(1+SNR), for numeric verification of
// the high-SNR corner predictions.
std::vector<GdofTrajectoryPoint> gdof_limit_oracle(const GdofExponents& e, DuplexMode mode,
                                                   std::span<const double> snr_list);

}  // namespace coop2mac
