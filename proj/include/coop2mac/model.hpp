#pragma once

#include <array>
#include <stdexcept>
#include <utility>

namespace coop2mac {

// Link gains of the cooperative two-user MAC at unit transmit power and unit
// noise variance. Each gain is stored as (|h|^2, phase). After normalization
// user 1 is the strong user, i.e. h_max_sq >= h_min_sq.
struct ChannelGains {
    double h_max_sq = 0.0;  // strong user -> destination
    double h_min_sq = 0.0;  // weak user -> destination
    double h_1_sq = 0.0;    // weak user -> strong user (cooperation link)
    double h_2_sq = 0.0;    // strong user -> weak user
    double phase_max = 0.0;
    double phase_min = 0.0;
    double phase_1 = 0.0;
    double phase_2 = 0.0;
};

// SNR exponents: |h_i|^2 = snr^beta_i with snr > 1.
struct GdofExponents {
    double beta_max = 0.0;
    double beta_min = 0.0;
    double beta_1 = 0.0;
    double beta_2 = 0.0;
    double snr = 0.0;
};

// A rate pair in bits per channel use; also reused for dimensionless gDoF pairs.
struct RatePair {
    double r1 = 0.0;
    double r2 = 0.0;
};

// |h_i|^2 = snr^beta_i. Throws std::invalid_argument for snr <= 1 or negative beta.
ChannelGains gains_from_exponents(const GdofExponents& e,
                                  const std::array<double, 4>& phases = {0.0, 0.0, 0.0, 0.0});

// Inverse of gains_from_exponents: beta_i = log(|h_i|^2) / log(snr).
GdofExponents exponents_from(const ChannelGains& g, double snr);

// Relabels users so that the first direct gain is the strongest. Cross gains
// swap together with the direct gains. Ties keep the original labels.
std::pair<ChannelGains, bool> normalize_gains(const ChannelGains& raw);

// Validates finiteness / nonnegativity; throws std::invalid_argument.
void validate_gains(const ChannelGains& g);

}  // namespace coop2mac
