#include "coop2mac/model.hpp"

#include <cmath>

namespace coop2mac {

void validate_gains(const ChannelGains& g) {
    for (double v : {g.h_max_sq, g.h_min_sq, g.h_1_sq, g.h_2_sq}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("channel magnitude squared must be finite and >= 0");
        }
    }
}

ChannelGains gains_from_exponents(const GdofExponents& e, const std::array<double, 4>& phases) {
    if (!(e.snr > 1.0)) {
        throw std::invalid_argument("gains_from_exponents: snr must be > 1");
    }
    for (double b : {e.beta_max, e.beta_min, e.beta_1, e.beta_2}) {
        if (!(b >= 0.0) || !std::isfinite(b)) {
            throw std::invalid_argument("gains_from_exponents: beta must be finite and >= 0");
        }
    }
    if (e.beta_max < e.beta_min) {
        throw std::invalid_argument("gains_from_exponents: beta_max must be >= beta_min");
    }
    ChannelGains g;
    g.h_max_sq = std::pow(e.snr, e.beta_max);
    g.h_min_sq = std::pow(e.snr, e.beta_min);
    g.h_1_sq = std::pow(e.snr, e.beta_1);
    g.h_2_sq = std::pow(e.snr, e.beta_2);
    g.phase_max = phases[0];
    g.phase_min = phases[1];
    g.phase_1 = phases[2];
    g.phase_2 = phases[3];
    return g;
}

GdofExponents exponents_from(const ChannelGains& g, double snr) {
    if (!(snr > 1.0)) {
        throw std::invalid_argument("exponents_from: snr must be > 1");
    }
    const double ls = std::log(snr);
    auto inv = [ls](double mag_sq) { return mag_sq > 0.0 ? std::log(mag_sq) / ls : 0.0; };
    GdofExponents e;
    e.beta_max = inv(g.h_max_sq);
    e.beta_min = inv(g.h_min_sq);
    e.beta_1 = inv(g.h_1_sq);
    e.beta_2 = inv(g.h_2_sq);
    e.snr = snr;
    return e;
}

std::pair<ChannelGains, bool> normalize_gains(const ChannelGains& raw) {
    validate_gains(raw);
    if (raw.h_max_sq >= raw.h_min_sq) {
        return {raw, false};
    }
    ChannelGains g = raw;
    std::swap(g.h_max_sq, g.h_min_sq);
    std::swap(g.phase_max, g.phase_min);
    std::swap(g.h_1_sq, g.h_2_sq);
    std::swap(g.phase_1, g.phase_2);
    return {g, true};
}

}  // namespace coop2mac
